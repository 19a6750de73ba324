// One line per criterion; nonzero exit if any fails.
#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ellis/ellis.hpp"
#include "support/corpus.hpp"
#include "support/random_substitution.hpp"

using namespace ellis;

namespace {
  class Criterion {
   public:
    explicit Criterion(std::string name) : _name(std::move(name)) {}

    void expect(bool ok, std::string const& what) {
      if (!ok && _failures.size() < 5) {
        _failures.push_back(what);
      }
      _bad += ok ? 0 : 1;
      ++_checks;
    }

    template <typename T, typename U>
    void equal(T const& got, U const& want, std::string const& what) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      expect(got == want, os.str());
    }

    bool passed() const {
      return _bad == 0;
    }

    void print(int number) const {
      std::cout << (passed() ? "PASS" : "FAIL") << " criterion " << number
                << ": " << _name << " (" << _checks << " checks";
      if (_bad) {
        std::cout << ", " << _bad << " failed";
      }
      std::cout << ")\n";
      for (auto const& f : _failures) {
        std::cout << "    " << f << '\n';
      }
    }

   private:
    std::string              _name;
    std::size_t              _checks = 0;
    std::size_t              _bad    = 0;
    std::vector<std::string> _failures;
  };

  StructuralReport run(std::string const& name) {
    return analyze(testing_support::load(name));
  }

  std::vector<std::size_t> class_sizes(Partition const& p) {
    std::vector<std::size_t> out;
    for (auto const& c : p) {
      out.push_back(c.size());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string sizes(std::vector<std::size_t> const& v) {
    std::string out;
    for (auto x : v) {
      out += (out.empty() ? "" : ",") + std::to_string(x);
    }
    return "[" + out + "]";
  }

  Permutation P(std::vector<letter_type> v) {
    return Permutation(std::move(v));
  }

  std::string cycles(Permutation const& p) {
    return to_cycle_string(p, {"a", "b", "c", "d", "e", "f"});
  }

  Criterion thue_morse() {
    Criterion c("Thue-Morse");
    auto const r = run("thue_morse");
    c.equal(r.r_set.size(), 2u, "|I|");
    c.expect(closure(r.r_set, 2).order() == 2, "I generates S_2");
    c.equal(r.structure_group.order(), 2u, "|G|");
    auto const& M = r.structural.sandwich.semigroup;
    c.expect(M.a(lambda_plus, 0).is_identity() && M.a(lambda_plus, 1).is_identity()
                 && M.a(lambda_minus, 0).is_identity(),
             "sandwich has identity first row and column");
    c.equal(cycles(M.a(lambda_minus, 1)), "(a b)", "sandwich corner");
    c.equal(r.fiber.semigroup.size(), 8u, "semigroup size");
    c.equal(r.fiber.green.idempotents.size(), 4u, "idempotents");
    c.equal(r.heights.h, 1u, "h");
    c.equal(r.heights.h_cl, 1u, "h_cl");
    c.equal(r.automorphisms.aut_fib.order(), 2u, "|Aut|");
    c.equal(r.automorphisms.fingerprint.name, "S_2", "Aut");
    return c;
  }

  Criterion martin() {
    Criterion c("Martin example");
    auto const r = run("martin");
    c.equal(allowed_two_words(r.original).size(), 7u, "two-words");
    c.equal(r.structure_fingerprint.name, "S_3", "G");
    c.equal(r.structure_group.order(), 6u, "|G|");
    auto const& gs = r.fiber.green;
    c.equal(r.fiber.semigroup.size(), 36u, "semigroup size");
    c.equal(sizes(class_sizes(gs.l_classes)), "[18,18]", "minimal left ideals");
    c.equal(sizes(class_sizes(gs.r_classes)), "[12,12,12]", "minimal right ideals");
    c.equal(gs.idempotents.size(), 6u, "idempotents");
    c.equal(gs.kernel.size(), 36u, "kernel");
    // [[1,1,1],[1,t1,t2]] with t1 = (b c), t2 = (a c)
    auto const       e = Permutation::identity(3);
    SandwichMatrix   A{{e, e, e}, {e, P({0, 2, 1}), P({2, 1, 0})}};
    ReesMatrixSemigroup published(closure({P({1, 0, 2}), P({1, 2, 0})}, 3),
                                  {"1", "2", "3"}, {"+", "-"}, A);
    auto const iso = find_presentation_isomorphism(
        published, r.structural.sandwich.semigroup);
    c.expect(iso.has_value(), "published sandwich matrix up to gauge");
    if (iso) {
      c.expect(verify_rees_isomorphism(published,
                                       r.structural.sandwich.semigroup, *iso),
               "isomorphism verified on all products");
    }
    c.equal(r.automorphisms.aut_fib.order(), 1u, "|Aut|");
    return c;
  }

  Criterion s3_transposition() {
    Criterion c("S_3 with a non-normal little group");
    auto const r = run("s3_transposition");
    c.equal(r.r_set.size(), 2u, "|I|");
    c.equal(r.structure_fingerprint.name, "S_3", "G");
    c.equal(r.heights.little.order(), 2u, "|Gamma|");
    c.expect(!r.little_is_normal, "Gamma not normal");
    c.equal(r.normal_fingerprint.name, "S_3", "normal completion");
    c.equal(r.heights.h, 1u, "h");
    c.equal(r.automorphisms.aut_fib.order(), 1u, "|Aut|");
    return c;
  }

  Criterion s3_height_two() {
    Criterion c("S_3 of height two");
    auto const r = run("s3_height_two");
    c.equal(r.r_set.size(), 3u, "|I|");
    bool all_transpositions = true;
    for (auto const& g : r.r_set) {
      all_transpositions = all_transpositions && element_order(g) == 2;
    }
    c.expect(all_transpositions, "I consists of transpositions");
    c.equal(r.little_fingerprint.name, "A_3", "Gamma");
    c.equal(r.normal_fingerprint.name, "A_3", "normal completion");
    c.equal(r.heights.h, 2u, "h");
    c.equal(r.heights.h_cl, 1u, "h_cl");
    c.expect(r.unresolved_extension, "unresolved_extension");
    c.equal(r.degrees.modulus, 2u, "degree modulus");
    c.equal(sizes(r.degrees.counts), "[18,18]", "degree counts");
    return c;
  }

  Criterion cyclic_shift() {
    Criterion c("cyclic shift");
    auto const r = run("cyclic_shift");
    c.equal(r.exponent, 3u, "exponent");
    c.equal(r.structure_group.order(), 3u, "|G|");
    c.expect(r.structure_fingerprint.cyclic, "G cyclic");
    c.equal(r.heights.h, 1u, "h");
    c.equal(r.automorphisms.aut_fib.order(), 3u, "|Aut|");
    c.expect(r.automorphisms.fingerprint.cyclic, "Aut cyclic");
    return c;
  }

  Criterion dihedral() {
    Criterion c("dihedral square");
    auto const r = run("dihedral_square");
    c.equal(r.r_set.size(), 2u, "|I|");
    c.equal(r.structure_group.order(), 8u, "|G|");
    auto const& N = r.normal_fingerprint;
    c.equal(N.order, 4u, "|normal completion|");
    c.equal(N.exponent, 2u, "exponent");
    c.expect(N.abelian, "abelian");
    c.equal(r.heights.h, 2u, "h");
    c.equal(r.heights.h_cl, 2u, "h_cl");
    c.expect(r.order_h_witness.has_value(), "witness found");
    if (r.order_h_witness) {
      c.equal(element_order(*r.order_h_witness), 2u, "witness order");
    }
    c.expect(r.witness_in_r_set, "witness in I");
    c.equal(r.automorphisms.aut_fib.order(), 2u, "|Aut|");
    return c;
  }

  std::vector<std::pair<std::string, Substitution>> instances() {
    auto out = testing_support::corpus();
    auto rnd = testing_support::random_instances(20);
    for (std::size_t k = 0; k < rnd.size(); ++k) {
      out.emplace_back("random " + std::to_string(k), rnd[k]);
    }
    return out;
  }

  Criterion equivalence(std::vector<std::pair<std::string, Substitution>> const& in) {
    Criterion c("oracle equivalence on " + std::to_string(in.size())
                + " instances");
    for (auto const& [name, sub] : in) {
      auto const r = analyze(sub);
      auto const F = fixed_points(r.simplified);
      auto const model = fiber_model(r.structural.sandwich, F);
      auto const v     = oracle_equivalence(r.simplified, model);
      c.expect(v.equivalent,
               name + ": "
                   + (v.discrepancies.empty() ? std::string("not equivalent")
                                              : v.discrepancies.front()));
      c.equal(v.report.closure.size(), r.fiber.semigroup.size(),
              name + " map count");
      // the oracle's own product table against the pipeline's
      if (v.report.complete) {
        auto const T = semigroup_closure(v.report.closure);
        bool       same = T.size() == r.fiber.semigroup.size();
        for (std::size_t x = 0; same && x < T.size(); ++x) {
          for (std::size_t y = 0; same && y < T.size(); ++y) {
            auto const& f = T.at(T.product(x, y));
            auto const  i = r.fiber.semigroup.index_of(T.at(x));
            auto const  j = r.fiber.semigroup.index_of(T.at(y));
            same = i && j
                   && r.fiber.semigroup.at(r.fiber.semigroup.product(*i, *j)) == f;
          }
        }
        c.expect(same, name + " multiplication tables");
      }
    }
    return c;
  }

  Criterion round_trip(std::vector<std::pair<std::string, Substitution>> const& in) {
    Criterion c("Rees round trip");
    for (auto const& [name, sub] : in) {
      auto const  r  = analyze(sub);
      auto const& gs = r.fiber.green;
      auto const  d  = rees_decomposition(r.fiber.semigroup, gs,
                                          gs.idempotents.front());
      c.expect(verify_rees_isomorphism(r.fiber.semigroup, d),
               name + " decomposition");
      // sandwich -> fibre maps -> decomposition, composed here from scratch
      auto const& S = r.structural.sandwich;
      auto const  F = fixed_points(r.simplified);
      std::map<std::size_t, std::size_t> dec_pos;
      for (std::size_t k = 0; k < d.image.size(); ++k) {
        dec_pos[d.image[k]] = k;
      }
      bool mapped = true;
      auto const composite = [&](ReesElement const& x) {
        auto const f = fiber_action(to_signed_pair(S, x), F);
        auto const k = r.fiber.semigroup.index_of(f);
        if (!k || !dec_pos.count(*k)) {
          mapped = false;
          return d.elements.front();
        }
        return d.elements[dec_pos.at(*k)];
      };
      bool const iso = verify_rees_isomorphism(S.semigroup, d.semigroup,
                                               composite);
      c.expect(mapped && iso, name + " sandwich to decomposition");
      // an independent presentation search where it is affordable
      if (S.semigroup.group().order() <= 24 && S.semigroup.i_size() <= 4) {
        auto const found = find_presentation_isomorphism(S.semigroup,
                                                         d.semigroup);
        c.expect(found && verify_rees_isomorphism(S.semigroup, d.semigroup,
                                                  *found),
                 name + " presentation search");
      }
      c.expect(r.structural.round_trip_verified, name + " pipeline round trip");
    }
    return c;
  }

  Criterion identities(std::vector<std::pair<std::string, Substitution>> const& in) {
    Criterion c("structural identities");
    for (auto const& [name, sub] : in) {
      auto const  r  = analyze(sub);
      auto const  nI = r.r_set.size();
      auto const  nG = r.structure_group.order();
      auto const  l  = r.original.length();
      auto const& H  = r.heights;
      c.equal(r.fiber.semigroup.size(), 2 * nI * nG, name + " size");
      c.equal(r.fiber.green.idempotents.size(), 2 * nI, name + " idempotents");
      c.expect((l - 1) % H.h == 0, name + " h divides l - 1");
      c.expect((l - 1) % H.h_cl == 0, name + " h_cl divides l - 1");
      c.expect(H.h >= H.h_cl, name + " h >= h_cl");
      c.expect(H.quotient_cyclic, name + " cyclic quotient");
      c.expect(r.idempotent_generated.group() == H.little
                   && r.idempotent_generated.size()
                          == 2 * nI * H.little.order(),
               name + " idempotent-generated part");
      c.equal(H.h_cl, classical_height_bruteforce(r.simplified, 3),
              name + " h_cl by brute force");
      auto const& M = r.structural.sandwich.semigroup;
      auto const& D = r.degrees;
      std::map<ReesElement, std::size_t> deg;
      for (std::size_t k = 0; k < D.elements.size(); ++k) {
        deg[D.elements[k]] = D.degrees[k];
      }
      bool morphism = D.elements.size() == M.size();
      for (auto const& x : D.elements) {
        for (auto const& y : D.elements) {
          morphism = morphism
                     && deg.at(multiply(x, y, M)) == (deg.at(x) + deg.at(y)) % D.modulus;
        }
      }
      for (auto const& e : idempotents_of(M)) {
        morphism = morphism && deg.at(e) == 0;
      }
      c.expect(morphism, name + " degree morphism");
      auto const& C = r.automorphisms.aut_fib;
      bool free = C.order() <= r.simplified.size();
      for (auto const& g : C.elements()) {
        for (letter_type x = 0; !g.is_identity() && x < r.simplified.size(); ++x) {
          free = free && g(x) != x;
        }
      }
      c.expect(free, name + " centraliser semi-regular");
    }
    return c;
  }

  template <typename F>
  bool report(int number, F&& make) {
    auto const t0 = std::chrono::steady_clock::now();
    Criterion  c("");
    try {
      c = make();
    } catch (std::exception const& e) {
      c = Criterion("exception");
      c.expect(false, e.what());
    }
    auto const dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    c.print(number);
    if (dt > 10.0) {
      std::cout << "    took " << dt << " s\n";
      return false;
    }
    return c.passed();
  }
}  // namespace

int main() {
  auto const in = instances();
  bool       ok = true;
  ok &= report(1, thue_morse);
  ok &= report(2, martin);
  ok &= report(3, s3_transposition);
  ok &= report(4, s3_height_two);
  ok &= report(5, cyclic_shift);
  ok &= report(6, dihedral);
  ok &= report(7, [&] { return equivalence(in); });
  ok &= report(8, [&] { return round_trip(in); });
  ok &= report(9, [&] { return identities(in); });
  return ok ? 0 : 1;
}
