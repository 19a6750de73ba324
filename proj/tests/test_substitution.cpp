#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "ellis/complexity.hpp"
#include "ellis/substitution.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/random_substitution.hpp"

using ellis::parse_substitution;
using ellis::ParseError;
using ellis::Substitution;

namespace {
  Substitution thue_morse() {
    return parse_substitution("a -> abba\nb -> baab\n");
  }

  template <typename F>
  ParseError parse_error_of(F&& f) {
    try {
      f();
    } catch (ParseError const& e) {
      return e;
    }
    FAIL("no parse error");
    return ParseError("unreachable");
  }
}  // namespace

TEST_CASE("text grammar", "[parse]") {
  auto const s = parse_substitution(
      "# Thue-Morse\n\n  a -> a b b a   # spaces are ignored\nb->baab");
  CHECK(s.size() == 2);
  CHECK(s.length() == 4);
  CHECK(s.alphabet().symbols() == std::vector<std::string>{"a", "b"});
  CHECK(s.rule(1) == ellis::word_type{1, 0, 0, 1});
  CHECK(s == thue_morse());

  // unicode arrow and letters
  auto const u = parse_substitution("α → αβ\nβ → βα\n");
  CHECK(u.alphabet().symbol(0) == "α");
  CHECK(u.rule(0) == ellis::word_type{0, 1});
}

TEST_CASE("parse errors carry positions", "[parse]") {
  auto e = parse_error_of([] { parse_substitution("a -> ab\nb = ba\n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 3);

  e = parse_error_of([] { parse_substitution("a -> ab\nb -> bc\n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 7);

  e = parse_error_of([] { parse_substitution("a -> ab\na -> ba\n"); });
  CHECK(e.line() == 2);

  e = parse_error_of([] { parse_substitution("a -> a;b\nb -> ba\n"); });
  CHECK(e.column() == 7);

  CHECK_THROWS_AS(parse_substitution("# nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_substitution("a ->\nb -> ba"), ParseError);
  CHECK_THROWS_AS(parse_substitution("a -> aba\nb -> ba\n"),
                  ellis::ValidationError);
  CHECK_THROWS_AS(parse_substitution("a -> a\nb -> b\n"),
                  ellis::ValidationError);
}

TEST_CASE("text and JSON forms round-trip", "[parse][property]") {
  auto const file_text = testing_support::read_data_file("thue_morse.sub");
  auto const file_json = testing_support::read_data_file("thue_morse.json");
  CHECK(ellis::read_substitution(file_text)
        == ellis::read_substitution(file_json));

  for (auto const& [name, sub] : testing_support::corpus()) {
    INFO(name);
    CHECK(parse_substitution(ellis::to_text(sub)) == sub);
    CHECK(ellis::substitution_from_json(ellis::to_json(sub)) == sub);
    CHECK(ellis::read_substitution(ellis::to_json(sub).dump()) == sub);
  }
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto const sub = testing_support::random_bijective(rng, 2 + rng() % 3,
                                                       2 + rng() % 5);
    CHECK(parse_substitution(ellis::to_text(sub)) == sub);
    CHECK(ellis::read_substitution(ellis::to_json(sub).dump(2)) == sub);
  }
  CHECK_THROWS_AS(ellis::read_substitution("{\"alphabet\": [\"a\"]"),
                  ParseError);
  CHECK_THROWS_AS(
      ellis::read_substitution(R"({"alphabet":["a","b"],"rules":{"a":"ab"}})"),
      ellis::ValidationError);
}

TEST_CASE("bijectivity and primitivity", "[substitution]") {
  CHECK(ellis::is_bijective(thue_morse()));
  CHECK_FALSE(ellis::is_bijective(parse_substitution("a -> ab\nb -> ab")));
  CHECK(ellis::is_primitive(thue_morse()));
  CHECK_FALSE(ellis::is_primitive(parse_substitution("a -> aa\nb -> bb")));
  // b never produces a
  CHECK_FALSE(ellis::is_primitive(parse_substitution("a -> ab\nb -> bb")));

  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto const sub = testing_support::random_bijective(rng, 2 + rng() % 3,
                                                       2 + rng() % 4);
    CHECK(ellis::is_primitive(sub) == oracle::primitive(oracle::rules_of(sub)));
  }
}

TEST_CASE("powers agree with iterated expansion", "[substitution][property]") {
  std::mt19937 rng(19);
  for (int t = 0; t < 30; ++t) {
    auto const sub = testing_support::random_bijective(rng, 2 + rng() % 3,
                                                       2 + rng() % 4);
    auto const r   = oracle::rules_of(sub);
    auto const p3  = ellis::power(sub, 3);
    for (ellis::letter_type a = 0; a < sub.size(); ++a) {
      auto const want = oracle::iterate(r, static_cast<int>(a), 3);
      CHECK(oracle::Vec(p3.rule(a).begin(), p3.rule(a).end()) == want);
      CHECK(ellis::iterate(sub, a, 3) == p3.rule(a));
    }
    // columns of a composite: outer_j after inner_k at kl + j
    auto const c  = ellis::column_permutations(ellis::compose(sub, sub));
    auto const c1 = ellis::column_permutations(sub);
    for (std::size_t k = 0; k < sub.length(); ++k) {
      for (std::size_t j = 0; j < sub.length(); ++j) {
        CHECK(c[k * sub.length() + j] == c1[j] * c1[k]);
      }
    }
  }
  CHECK_THROWS_AS(ellis::power(thue_morse(), 40), ellis::ResourceError);
}

TEST_CASE("allowed two-letter words match a long word", "[substitution]") {
  auto const m = testing_support::load("martin");
  CHECK(ellis::allowed_two_words(m).size() == 7);
  for (auto const& [name, sub] : testing_support::corpus()) {
    INFO(name);
    auto const                    F = ellis::allowed_two_words(sub);
    std::set<std::pair<int, int>> got;
    for (auto [a, b] : F.words()) {
      got.emplace(a, b);
    }
    CHECK(got == oracle::two_words(oracle::rules_of(sub)));
  }
}

TEST_CASE("simplification", "[substitution]") {
  CHECK(ellis::is_simplified(thue_morse()));
  CHECK(ellis::simplify(thue_morse()).exponent == 1);
  auto const cyc = ellis::simplify(testing_support::load("cyclic_shift"));
  CHECK(cyc.exponent == 3);
  CHECK(ellis::is_simplified(cyc.substitution));
  CHECK(ellis::simplify(testing_support::load("martin")).exponent == 2);

  for (auto const& sub : testing_support::random_instances(10, 101)) {
    auto const s = ellis::simplify(sub);
    CHECK(ellis::is_simplified(s.substitution));
    CHECK(s.substitution == ellis::power(sub, s.exponent));
    // first and last columns are the identity and every letter occurs
    auto const r = oracle::rules_of(s.substitution);
    auto const n = r.size();
    CHECK(oracle::column(r, 0) == oracle::identity(n));
    CHECK(oracle::column(r, r[0].size() - 1) == oracle::identity(n));
    // no smaller power is simplified
    for (std::size_t k = 1; k < s.exponent; ++k) {
      CHECK_FALSE(ellis::is_simplified(ellis::power(sub, k)));
    }
    // fixed points: every allowed two-word a.b is fixed
    auto const F = ellis::fixed_points(s.substitution);
    for (auto const& w : F.words()) {
      CHECK(ellis::junction(s.substitution, w) == w);
    }
  }
}

TEST_CASE("word complexity against brute-force factor counts",
          "[complexity][property]") {
  auto const t = thue_morse();
  // Thue-Morse: 2, 4, 6, 10, 12, 16, 20, 22
  std::vector<std::size_t> const want{0, 2, 4, 6, 10, 12, 16, 20, 22};
  CHECK(ellis::complexity_profile(t, 8) == want);

  for (auto const& [name, sub] : testing_support::corpus()) {
    INFO(name);
    auto const p = ellis::complexity_profile(sub, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
      CHECK(p[n] == oracle::factor_count(oracle::rules_of(sub), n));
    }
  }
}

TEST_CASE("aperiodicity verdicts", "[complexity]") {
  auto const periodic = testing_support::load("periodic");
  auto const v        = ellis::is_aperiodic(periodic);
  CHECK(v.kind == ellis::AperiodicityVerdict::Kind::periodic);
  CHECK(v.to_string() == "Periodic(2)");
  CHECK(ellis::is_aperiodic(thue_morse()).kind
        == ellis::AperiodicityVerdict::Kind::aperiodic);
  CHECK(ellis::is_aperiodic(thue_morse(), 3).kind
        == ellis::AperiodicityVerdict::Kind::inconclusive);
  for (auto const& [name, sub] : testing_support::corpus()) {
    INFO(name);
    CHECK(ellis::is_aperiodic(sub).kind
          == ellis::AperiodicityVerdict::Kind::aperiodic);
  }
}
