#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "ellis/rees.hpp"
#include "ellis/rees_decomposition.hpp"
#include "ellis/structural.hpp"
#include "support/corpus.hpp"
#include "support/random_substitution.hpp"

using ellis::closure;
using ellis::Permutation;
using ellis::ReesElement;
using ellis::ReesMatrixSemigroup;

namespace {
  Permutation P(std::vector<ellis::letter_type> v) {
    return Permutation(std::move(v));
  }

  std::vector<std::string> const abc{"a", "b", "c", "d"};

  ReesMatrixSemigroup random_rees(std::mt19937& rng, ellis::PermGroup const& G,
                                  std::size_t ni, std::size_t nl) {
    ellis::SandwichMatrix A(nl);
    for (auto& row : A) {
      for (std::size_t i = 0; i < ni; ++i) {
        row.push_back(G.at(rng() % G.order()));
      }
    }
    return ReesMatrixSemigroup(G, std::vector<std::string>(ni, "i"),
                               std::vector<std::string>(nl, "l"), A);
  }
}  // namespace

TEST_CASE("Rees product laws", "[rees][property]") {
  std::mt19937 rng(31);
  auto const   S3 = closure({P({1, 0, 2}), P({1, 2, 0})}, 3);
  for (int t = 0; t < 10; ++t) {
    auto const M  = random_rees(rng, S3, 1 + rng() % 3, 1 + rng() % 3);
    auto const el = M.elements();
    CHECK(el.size() == M.i_size() * 6 * M.lambda_size());
    for (std::size_t k = 0; k < el.size(); ++k) {
      CHECK(M.index_of(el[k]) == k);
    }
    for (int s = 0; s < 300; ++s) {
      auto const& x = el[rng() % el.size()];
      auto const& y = el[rng() % el.size()];
      auto const& z = el[rng() % el.size()];
      CHECK(multiply(multiply(x, y, M), z, M) == multiply(x, multiply(y, z, M), M));
    }
    // idempotents are exactly (i, a(l,i)^-1, l)
    std::set<ReesElement> brute;
    for (auto const& x : el) {
      if (multiply(x, x, M) == x) {
        brute.insert(x);
      }
    }
    auto const id = ellis::idempotents_of(M);
    CHECK(brute == std::set<ReesElement>(id.begin(), id.end()));
    CHECK(brute.size() == M.i_size() * M.lambda_size());
    for (auto const& x : el) {
      auto const xi = ellis::normal_inverse(x, M);
      CHECK(multiply(multiply(x, xi, M), x, M) == x);
      CHECK(multiply(multiply(xi, x, M), xi, M) == xi);
    }
  }
}

TEST_CASE("gauge moves are isomorphisms", "[rees][property]") {
  std::mt19937 rng(37);
  auto const   D4 = closure({P({1, 2, 3, 0}), P({0, 3, 2, 1})}, 4);
  for (int t = 0; t < 8; ++t) {
    auto const               M = random_rees(rng, D4, 2, 2);
    std::vector<Permutation> u{D4.at(rng() % 8), D4.at(rng() % 8)};
    std::vector<Permutation> v{D4.at(rng() % 8), D4.at(rng() % 8)};
    auto const               g = ellis::gauge_renormalize(M, u, v);
    CHECK(ellis::verify_rees_isomorphism(M, g.semigroup, g));
    auto const iso = ellis::find_presentation_isomorphism(M, g.semigroup);
    REQUIRE(iso);
    CHECK(ellis::verify_rees_isomorphism(M, g.semigroup, *iso));
  }
}

TEST_CASE("presentation search rejects a different little group",
          "[rees]") {
  auto const            S3 = closure({P({1, 0, 2}), P({1, 2, 0})}, 3);
  auto const            e  = Permutation::identity(3);
  ellis::SandwichMatrix A{{e, e}, {e, P({1, 0, 2})}};
  ellis::SandwichMatrix B{{e, e}, {e, P({1, 2, 0})}};
  ReesMatrixSemigroup   M(S3, {"x", "y"}, {"+", "-"}, A);
  ReesMatrixSemigroup   N(S3, {"x", "y"}, {"+", "-"}, B);
  CHECK_FALSE(ellis::find_presentation_isomorphism(M, N));
  CHECK(ellis::little_structure_group(M).order() == 2);
  CHECK(ellis::little_structure_group(N).order() == 3);
  CHECK(ellis::idempotent_generated(M).size() == 2 * 2 * 2);
}

TEST_CASE("Thue-Morse sandwich", "[rees]") {
  auto const sub = testing_support::load("thue_morse");
  auto const I   = ellis::r_set(sub);
  REQUIRE(I.size() == 2);
  auto const S = ellis::substitution_sandwich(I, 0, abc);
  auto const& M = S.semigroup;
  CHECK(M.group().order() == 2);
  CHECK(M.size() == 8);
  CHECK(M.is_normalized(0, ellis::lambda_plus));
  CHECK(to_cycle_string(M.a(ellis::lambda_minus, 1), abc) == "(a b)");
  CHECK(M.a(ellis::lambda_minus, 0).is_identity());
  CHECK(M.a(ellis::lambda_plus, 1).is_identity());
}

TEST_CASE("Martin sandwich matches the published presentation",
          "[rees]") {
  auto const r  = ellis::analyze(testing_support::load("martin"));
  auto const& M = r.structural.sandwich.semigroup;
  auto const  e = Permutation::identity(3);
  // tau_1 = (b c), tau_2 = (a c)
  ellis::SandwichMatrix A{{e, e, e}, {e, P({0, 2, 1}), P({2, 1, 0})}};
  ReesMatrixSemigroup published(closure({P({1, 0, 2}), P({1, 2, 0})}, 3),
                            {"1", "2", "3"}, {"+", "-"}, A);
  auto const iso = ellis::find_presentation_isomorphism(published, M);
  REQUIRE(iso);
  CHECK(ellis::verify_rees_isomorphism(published, M, *iso));
}

TEST_CASE("fibre copy and decomposition round-trip", "[rees][property]") {
  auto instances = testing_support::random_instances(8, 4242);
  for (auto const& [name, sub] : testing_support::corpus()) {
    instances.push_back(sub);
  }
  for (auto const& sub : instances) {
    INFO(ellis::to_text(sub));
    auto const th = ellis::simplify(sub).substitution;
    auto const I  = ellis::r_set(th);
    for (std::size_t g0 = 0; g0 < std::min<std::size_t>(I.size(), 2); ++g0) {
      auto const S = ellis::substitution_sandwich(I, g0);
      auto const F = ellis::fixed_points(th);
      auto const R = ellis::as_transformation_semigroup(S, F);
      CHECK(ellis::verify_rees_isomorphism(R.semigroup, S.semigroup,
                                           R.elements, R.image));
      auto const gs = ellis::green_structure(R.semigroup);
      REQUIRE(ellis::is_completely_simple(R.semigroup, gs));
      auto const d = ellis::rees_decomposition(R.semigroup, gs,
                                               gs.idempotents.front());
      CHECK(ellis::verify_rees_isomorphism(R.semigroup, d));
      CHECK(d.semigroup.is_normalized(d.i0, d.lambda0));
      CHECK(d.semigroup.i_size() == I.size());
      CHECK(d.semigroup.lambda_size() == 2);
      if (S.semigroup.group().order() <= 24) {
        auto const iso = ellis::find_presentation_isomorphism(S.semigroup,
                                                              d.semigroup);
        REQUIRE(iso);
        CHECK(ellis::verify_rees_isomorphism(S.semigroup, d.semigroup, *iso));
      }
    }
  }
}

TEST_CASE("sandwich input errors", "[rees]") {
  auto const I = ellis::r_set(testing_support::load("thue_morse"));
  CHECK_THROWS_AS(ellis::substitution_sandwich(I, 5), ellis::ValidationError);
  CHECK_THROWS_AS(ellis::substitution_sandwich({}, 0), ellis::ValidationError);
  std::vector<Permutation> const J{P({1, 0, 2}), P({0, 2, 1})};
  CHECK_THROWS_AS(ellis::substitution_sandwich(J, P({2, 1, 0})),
                  ellis::ValidationError);
  CHECK(ellis::substitution_sandwich(J, P({0, 2, 1})).g0_index == 1);
}
