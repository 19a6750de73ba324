// The structural semigroup of a simplified bijective substitution and the
// data derived from it: R-set, structure groups, heights, the fibre
// semigroup, its Rees matrix form, the grading and automorphism data.
//
// Conventions. theta_j are the column permutations of the simplified
// substitution. A fibre element [L.R; +] sends a.b to L(b).R(b) and
// [L.R; -] sends a.b to L(a).R(a); it corresponds to the triple
// (R L^-1, R, +) resp. (R L^-1, R g0^-1, -) of M[G; I, {+,-}; A].

#ifndef ELLIS_STRUCTURAL_HPP_
#define ELLIS_STRUCTURAL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "complexity.hpp"
#include "error.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "rees.hpp"
#include "rees_decomposition.hpp"
#include "substitution.hpp"
#include "transformation.hpp"

namespace ellis {

  namespace detail {
    inline void require_simplified(Substitution const& sub) {
      if (!is_bijective(sub)) {
        throw ValidationError("substitution is not bijective");
      }
      if (!is_simplified(sub)) {
        throw ValidationError("substitution is not simplified");
      }
    }

    inline std::vector<std::size_t> divisors(std::size_t n) {
      std::vector<std::size_t> out;
      for (std::size_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
          out.push_back(d);
        }
      }
      return out;
    }
  }  // namespace detail

  // {theta_i theta_{i-1}^-1 : 1 <= i < l}, sorted and without repeats.
  inline std::vector<Permutation> r_set(Substitution const& sub) {
    detail::require_simplified(sub);
    auto const               cols = column_permutations(sub);
    std::set<Permutation>    I;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      I.insert(cols[i] * cols[i - 1].inverse());
    }
    return {I.begin(), I.end()};
  }

  inline PermGroup structure_group(Substitution const& sub) {
    auto G = closure(r_set(sub), sub.size());
    if (is_primitive(sub) && !is_transitive(G)) {
      throw InternalError("structure group of a primitive substitution is "
                          "not transitive");
    }
    return G;
  }

  ////////////////////////////////////////////////////////////////////////
  // Heights
  ////////////////////////////////////////////////////////////////////////

  // Largest n admitting c: letters -> Z/nZ with c(theta_j(a)) = c(a) + j and
  // c(letter 0) = 0. Such an n divides l - 1 because theta_{l-1} = id.
  inline std::size_t classical_height(Substitution const& sub) {
    detail::require_simplified(sub);
    auto const        cols = columns(sub);
    std::size_t const s    = sub.size();
    std::size_t       best = 1;
    for (auto n : detail::divisors(sub.length() - 1)) {
      std::vector<std::optional<std::size_t>> c(s);
      c[0] = 0;
      std::vector<letter_type> todo{0};
      bool                     ok = true;
      while (!todo.empty() && ok) {
        auto a = todo.back();
        todo.pop_back();
        for (std::size_t j = 0; j < cols.size() && ok; ++j) {
          auto const b    = cols[j][a];
          auto const want = (*c[a] + j) % n;
          if (!c[b]) {
            c[b] = want;
            todo.push_back(b);
          } else {
            ok = *c[b] == want;
          }
        }
      }
      if (ok) {
        best = std::max(best, n);
      }
    }
    return best;
  }

  // gcd of the positions k in (0, l^n) with u_k = u_0 in u = theta^n(letter
  // 0), with every prime factor shared with l removed.
  inline std::size_t classical_height_bruteforce(Substitution const& sub,
                                                 std::size_t prefix_level) {
    detail::require_simplified(sub);
    check_block_size(sub.length(), prefix_level);
    auto const  u = iterate(sub, 0, prefix_level);
    std::size_t g = 0;
    for (std::size_t k = 1; k < u.size(); ++k) {
      if (u[k] == u[0]) {
        g = std::gcd(g, k);
      }
    }
    if (g == 0) {
      throw ValidationError("first letter does not recur in the prefix");
    }
    for (std::size_t d; (d = std::gcd(g, sub.length())) > 1;) {
      g /= d;
    }
    return g;
  }

  struct HeightData {
    PermGroup   little;              // Gamma
    PermGroup   normal_completion;   // normal closure of Gamma in G
    std::size_t h;
    std::size_t h_cl;
    bool        quotient_cyclic;
    // Some element of I; its coset generates G / normal_completion.
    Permutation coset_generator;
  };

  inline HeightData heights(Substitution const& sub, PermGroup const& G,
                            std::vector<Permutation> const& I) {
    std::vector<Permutation> gens;
    for (auto const& g : I) {
      for (auto const& k : I) {
        gens.push_back(g * k.inverse());
      }
    }
    auto little = closure(gens, sub.size());
    auto normal = normal_closure(little.generators(), G);
    auto q      = quotient_data(G, normal);
    if (!q.is_cyclic) {
      throw InternalError("G / normal closure of Gamma is not cyclic");
    }
    std::size_t const h = q.order;
    if (coset_order(I.front(), normal) != h) {
      throw InternalError("R-set coset does not generate the height quotient");
    }
    return {std::move(little), std::move(normal), h, classical_height(sub),
            true, I.front()};
  }

  inline HeightData heights(Substitution const& sub) {
    auto const I = r_set(sub);
    return heights(sub, closure(I, sub.size()), I);
  }

  ////////////////////////////////////////////////////////////////////////
  // G^(2) and the fibre semigroup
  ////////////////////////////////////////////////////////////////////////

  struct GTwoPair {
    Permutation left;
    Permutation right;

    friend bool operator==(GTwoPair const&, GTwoPair const&) = default;
    friend auto operator<=>(GTwoPair const&, GTwoPair const&) = default;
  };

  namespace detail {
    // Consecutive column pairs of theta^k for k = 1..K, as indices into G,
    // where K is one more than the first level whose columns exhaust G, and
    // at least 3.
    inline std::set<std::pair<std::size_t, std::size_t>>
    consecutive_column_pairs(Substitution const& sub, PermGroup const& G) {
      auto const        cols = column_permutations(sub);
      std::size_t const l    = sub.length();
      std::vector<std::vector<std::uint32_t>> mult(l);  // theta_j * g
      for (std::size_t j = 0; j < l; ++j) {
        for (auto const& g : G.elements()) {
          auto k = G.index_of(cols[j] * g);
          if (!k) {
            throw InternalError("column map outside the structure group");
          }
          mult[j].push_back(static_cast<std::uint32_t>(*k));
        }
      }
      std::size_t const          n = G.order();
      std::vector<bool>          seen(n * n, false);
      std::vector<std::uint32_t> level{static_cast<std::uint32_t>(
          *G.index_of(Permutation::identity(sub.size())))};
      std::size_t stop = 3;
      for (std::size_t k = 1; k <= stop; ++k) {
        check_block_size(l, k);
        std::vector<std::uint32_t> next;
        next.reserve(level.size() * l);
        for (auto g : level) {
          for (std::size_t j = 0; j < l; ++j) {
            next.push_back(mult[j][g]);
          }
        }
        for (std::size_t v = 1; v < next.size(); ++v) {
          seen[next[v - 1] * n + next[v]] = true;
        }
        std::vector<bool> hit(G.order(), false);
        for (auto g : next) {
          hit[g] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
          stop = std::max(stop, k + 2);
        }
        level = std::move(next);
      }
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t x = 0; x < n * n; ++x) {
        if (seen[x]) {
          pairs.emplace(x / n, x % n);
        }
      }
      return pairs;
    }
  }  // namespace detail

  // {(theta_{i-1} g, theta_i g) : 1 <= i < l, g in G}, cross-checked against
  // the consecutive column pairs of the powers of theta.
  inline std::vector<GTwoPair> gtwo_pairs(Substitution const& sub,
                                          PermGroup const&    G) {
    detail::require_simplified(sub);
    auto const         cols = column_permutations(sub);
    std::set<GTwoPair> out;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      for (auto const& g : G.elements()) {
        out.insert({cols[i - 1] * g, cols[i] * g});
      }
    }
    std::set<GTwoPair> direct;
    for (auto [x, y] : detail::consecutive_column_pairs(sub, G)) {
      direct.insert({G.at(x), G.at(y)});
    }
    if (direct != out) {
      throw InternalError("G(2) by right translation has "
                          + std::to_string(out.size())
                          + " pairs, consecutive columns of powers give "
                          + std::to_string(direct.size()));
    }
    return {out.begin(), out.end()};
  }

  inline std::vector<GTwoPair> gtwo_pairs(Substitution const& sub) {
    return gtwo_pairs(sub, structure_group(sub));
  }

  inline constexpr std::size_t sign_plus  = lambda_plus;
  inline constexpr std::size_t sign_minus = lambda_minus;

  // The product rules of signed pairs, x * y acting as "y first".
  inline SignedPair signed_product(SignedPair const& x, SignedPair const& y) {
    if (x.sign == sign_plus) {
      return {x.left * y.right, x.right * y.right, y.sign};
    }
    return {x.left * y.left, x.right * y.left, y.sign};
  }

  struct FiberSemigroup {
    TwoWordFiber               fiber;
    std::vector<SignedPair>    signed_pairs;  // all of G(2) with both signs
    std::vector<std::size_t>   index;         // S index of each signed pair
    TransformationSemigroup    semigroup;
    GreenStructure             green;
  };

  inline FiberSemigroup fiber_semigroup(Substitution const&          sub,
                                        std::vector<GTwoPair> const& pairs) {
    detail::require_simplified(sub);
    FiberSemigroup out;
    out.fiber = fixed_points(sub);
    std::vector<FiberSelfMap> maps;
    for (std::size_t sign : {sign_plus, sign_minus}) {
      for (auto const& p : pairs) {
        out.signed_pairs.push_back({p.left, p.right, sign});
        maps.push_back(fiber_action(out.signed_pairs.back(), out.fiber));
      }
    }
    std::set<FiberSelfMap> distinct(maps.begin(), maps.end());
    if (distinct.size() != maps.size()) {
      throw InternalError("distinct signed pairs act identically on the "
                          "fibre");
    }
    try {
      out.semigroup = TransformationSemigroup(out.fiber.size(), maps, maps);
    } catch (ValidationError const& e) {
      throw InternalError(std::string("fibre semigroup: ") + e.what());
    }
    std::map<SignedPair, std::size_t> where;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      out.index.push_back(*out.semigroup.index_of(maps[k]));
      where.emplace(out.signed_pairs[k], out.index.back());
    }
    for (std::size_t x = 0; x < maps.size(); ++x) {
      for (std::size_t y = 0; y < maps.size(); ++y) {
        auto it = where.find(
            signed_product(out.signed_pairs[x], out.signed_pairs[y]));
        if (it == where.end()
            || it->second
                   != out.semigroup.product(out.index[x], out.index[y])) {
          throw InternalError("fibre maps violate the signed product rules");
        }
      }
    }
    out.green = green_structure(out.semigroup);
    if (!is_completely_simple(out.semigroup, out.green)) {
      throw InternalError("fibre semigroup is not completely simple");
    }
    return out;
  }

  inline FiberSemigroup fiber_semigroup(Substitution const& sub) {
    return fiber_semigroup(sub, gtwo_pairs(sub));
  }

  ////////////////////////////////////////////////////////////////////////
  // The structural semigroup
  ////////////////////////////////////////////////////////////////////////

  struct StructuralSemigroup {
    SubstitutionSandwich sandwich;
    FiberRealization     realization;
    ReesDecomposition    decomposition;
    // Exhaustive check that sandwich -> fibre -> decomposition is an
    // isomorphism of Rees matrix semigroups.
    bool                 round_trip_verified = false;
  };

  namespace detail {
    // Permutation x -> y read off the image {x.y} of a kernel element.
    inline Permutation image_relation(FiberSelfMap const& f,
                                      TwoWordFiber const& F, std::size_t s) {
      std::vector<std::optional<letter_type>> rel(s);
      for (auto p : f.image_set()) {
        auto [x, y] = F[p];
        if (rel[x] && *rel[x] != y) {
          throw InternalError("image of a kernel element is not a graph");
        }
        rel[x] = y;
      }
      std::vector<letter_type> im;
      for (auto const& y : rel) {
        if (!y) {
          throw InternalError("image of a kernel element misses a letter");
        }
        im.push_back(*y);
      }
      return Permutation(std::move(im));
    }

    // Whether f(a.b) depends on b only.
    inline bool factors_through_right(FiberSelfMap const& f,
                                      TwoWordFiber const& F) {
      for (std::size_t p = 0; p < F.size(); ++p) {
        for (std::size_t q = 0; q < F.size(); ++q) {
          if (F[p].second == F[q].second && f(p) != f(q)) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  inline StructuralSemigroup structural_semigroup(Substitution const&   sub,
                                                  FiberSemigroup const& fs,
                                                  std::vector<Permutation> const& I,
                                                  std::size_t g0_index) {
    auto const&          S = fs.semigroup;
    auto const&          F = fs.fiber;
    std::size_t const    s = sub.size();
    StructuralSemigroup  out{substitution_sandwich(I, g0_index,
                                                  sub.alphabet().symbols()),
                            {}, {}, false};
    auto const& M = out.sandwich.semigroup;
    out.realization = as_transformation_semigroup(out.sandwich, F);
    if (!(out.realization.semigroup == S)) {
      throw InternalError("sandwich and fibre semigroup have different "
                          "fibre maps");
    }
    auto const e = out.realization.image[M.index_of(
        {g0_index, Permutation::identity(s), lambda_plus})];
    out.decomposition = rees_decomposition(S, fs.green, e);
    auto const& D     = out.decomposition;
    if (!verify_rees_isomorphism(S, D)) {
      throw InternalError("Rees decomposition is not an isomorphism");
    }

    // relabel the decomposition: im(e) points by their right letter, rows by
    // the image relation, columns by the side they factor through
    std::vector<letter_type> letter_of;
    for (auto p : D.image_points) {
      letter_of.push_back(F[p].second);
    }
    auto to_letters = [&](Permutation const& g) {
      std::vector<letter_type> im(s);
      for (std::size_t k = 0; k < g.degree(); ++k) {
        im[letter_of[k]] = letter_of[g[k]];
      }
      return Permutation(std::move(im));
    };
    if (D.image_points.size() != s) {
      throw InternalError("idempotent of the kernel does not have rank s");
    }
    std::vector<std::size_t> row_to_i, col_to_lambda;
    for (auto r : D.r) {
      auto rel = detail::image_relation(S.at(r), F, s);
      auto it  = std::find(I.begin(), I.end(), rel);
      if (it == I.end()) {
        throw InternalError("R-class label is not in the R-set");
      }
      row_to_i.push_back(static_cast<std::size_t>(it - I.begin()));
    }
    for (auto q : D.q) {
      col_to_lambda.push_back(detail::factors_through_right(S.at(q), F)
                                  ? lambda_plus
                                  : lambda_minus);
    }
    std::set<Permutation> dec_group;
    for (auto const& g : D.semigroup.group().elements()) {
      dec_group.insert(to_letters(g));
    }
    bool same = dec_group
                    == std::set<Permutation>(M.group().elements().begin(),
                                             M.group().elements().end())
                && D.semigroup.i_size() == M.i_size()
                && D.semigroup.lambda_size() == M.lambda_size();
    for (std::size_t l = 0; same && l < D.q.size(); ++l) {
      for (std::size_t i = 0; same && i < D.r.size(); ++i) {
        same = to_letters(D.semigroup.a(l, i))
               == M.a(col_to_lambda[l], row_to_i[i]);
      }
    }
    if (!same) {
      throw InternalError("decomposed sandwich differs from the algebraic "
                          "sandwich after relabeling");
    }

    // sandwich -> fibre -> decomposition
    std::map<std::size_t, std::size_t> dec_pos;
    for (std::size_t k = 0; k < D.image.size(); ++k) {
      dec_pos[D.image[k]] = k;
    }
    auto const& alg = out.realization;
    std::map<ReesElement, std::size_t> alg_pos;
    for (std::size_t k = 0; k < alg.elements.size(); ++k) {
      alg_pos[alg.elements[k]] = k;
    }
    out.round_trip_verified = verify_rees_isomorphism(
        M, D.semigroup, [&](ReesElement const& x) {
          return D.elements[dec_pos.at(alg.image[alg_pos.at(x)])];
        });
    if (!out.round_trip_verified) {
      throw InternalError("sandwich and decomposition are not isomorphic");
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Grading
  ////////////////////////////////////////////////////////////////////////

  struct DegreeTable {
    std::size_t              modulus;  // h
    std::vector<ReesElement> elements;
    std::vector<std::size_t> degrees;
    std::vector<std::size_t> counts;   // elements of each degree
  };

  // Degree of g: the k with g in c^k N, c the common coset of the R-set.
  inline std::size_t coset_degree(Permutation const& g, HeightData const& H) {
    auto        x = g;
    auto const  ci = H.coset_generator.inverse();
    for (std::size_t k = 0; k < H.h; ++k) {
      if (H.normal_completion.contains(x)) {
        return k;
      }
      x = ci * x;
    }
    throw InternalError("element outside every coset of the normal "
                        "completion");
  }

  // eta(i, g, sign) = degree of g. Checked to be a morphism onto Z/hZ that
  // vanishes on idempotents.
  inline DegreeTable degree_map(SubstitutionSandwich const& S,
                                HeightData const&           H) {
    auto const& M = S.semigroup;
    DegreeTable t{H.h, M.elements(), {}, std::vector<std::size_t>(H.h, 0)};
    std::map<Permutation, std::size_t> deg;
    for (auto const& g : M.group().elements()) {
      deg[g] = coset_degree(g, H);
    }
    for (auto const& x : t.elements) {
      t.degrees.push_back(deg.at(x.g));
      t.counts[t.degrees.back()]++;
    }
    // generators: the idempotents and (i0, x, +) for x generating G
    auto gens = idempotents_of(M);
    for (auto const& x : detail::reduced_generators(M.group())) {
      gens.push_back({S.g0_index, x, lambda_plus});
    }
    for (auto const& y : idempotents_of(M)) {
      if (deg.at(y.g) != 0) {
        throw InternalError("idempotent of non-zero degree");
      }
    }
    for (std::size_t k = 0; k < t.elements.size(); ++k) {
      for (auto const& y : gens) {
        auto const xy = multiply(t.elements[k], y, M);
        if (deg.at(xy.g) != (t.degrees[k] + deg.at(y.g)) % H.h) {
          throw InternalError("degree map is not a morphism");
        }
      }
    }
    for (auto c : t.counts) {
      if (c == 0) {
        throw InternalError("degree map is not onto Z/hZ");
      }
    }
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Automorphisms
  ////////////////////////////////////////////////////////////////////////

  struct AutomorphismData {
    PermGroup        aut_fib;       // centraliser of G in Sym(alphabet)
    GroupFingerprint fingerprint;
    std::string      virtual_aut;
    bool             semi_regular;
  };

  inline std::string group_name(GroupFingerprint const& f) {
    return f.name.empty() ? "group of order " + std::to_string(f.order)
                          : f.name;
  }

  inline AutomorphismData automorphism_data(PermGroup const& G) {
    auto C  = centralizer_in_symmetric(G);
    auto fp = fingerprint(C);
    std::string v = C.order() == 1 ? "Z" : group_name(fp) + " x Z";
    // the virtual automorphisms are the same centraliser times the shift
    return {std::move(C), std::move(fp), std::move(v), true};
  }

  ////////////////////////////////////////////////////////////////////////
  // The whole analysis
  ////////////////////////////////////////////////////////////////////////

  struct AnalysisOptions {
    std::optional<std::size_t> g0_index;
    std::optional<std::size_t> aperiodicity_bound;
  };

  struct GlobalStrings {
    std::string                efib;
    std::string                kernel;
    std::string                ellis;
    std::optional<std::string> grading;
    std::optional<std::string> semidirect;
    std::optional<std::string> extension;
  };

  struct StructuralReport {
    Substitution             original;
    Substitution             simplified;
    std::size_t              exponent;
    AperiodicityVerdict      aperiodicity;
    std::vector<Permutation> r_set;
    PermGroup                structure_group;
    GroupFingerprint         structure_fingerprint;
    HeightData               heights;
    GroupFingerprint         little_fingerprint;
    GroupFingerprint         normal_fingerprint;
    bool                     little_is_normal = false;
    std::optional<Permutation> order_h_witness;
    bool                     witness_in_r_set = false;
    std::vector<GTwoPair>    pairs;
    FiberSemigroup           fiber;
    StructuralSemigroup      structural;
    ReesMatrixSemigroup      idempotent_generated;
    DegreeTable              degrees;
    AutomorphismData         automorphisms;
    GlobalStrings            strings;
    bool                     unresolved_extension = false;

    StructuralReport(Substitution orig, Substitution simp, std::size_t n,
                     AperiodicityVerdict v)
        : original(std::move(orig)),
          simplified(std::move(simp)),
          exponent(n),
          aperiodicity(std::move(v)) {}

    std::size_t rank() const {
      return simplified.size();
    }
  };

  namespace detail {
    inline GlobalStrings global_strings(StructuralReport const& r) {
      GlobalStrings     out;
      std::string const zl = "Z_" + std::to_string(r.original.length());
      std::string const A  = "; I, {+,-}; A]";
      auto wrap = [](std::string n) {
        return n.find(' ') == std::string::npos ? n : "(" + n + ")";
      };
      auto const        G  = wrap(group_name(r.structure_fingerprint));
      auto const        N  = wrap(group_name(r.normal_fingerprint));
      std::size_t const h  = r.heights.h;
      auto const        zh = "Z/" + std::to_string(h) + "Z";
      out.ellis = "E(X) = M(X) u Z";
      if (h == 1) {
        out.efib   = "E^fib(X) = (M^fib_0 u {Id}) x prod_{[z]!=[0]} " + G;
        out.kernel = "M(X) = M[" + G + "^(" + zl + "/Z) x| " + zl + A;
        return out;
      }
      out.efib    = "E^fib(X) = (M^fib_0 u {Id}) x prod_{[z]!=[0]} G^fib_[z]";
      out.grading = "G^fib_k = f^k Cov(" + N + "), k in " + zh;
      if (r.order_h_witness) {
        out.semidirect = "G^fib = Cov(" + N + ") x| " + zh;
      }
      if (r.heights.h == r.heights.h_cl) {
        out.kernel = r.order_h_witness
                         ? "M(X) = M[(" + N + "^(" + zl + "/Z) x| " + zh
                               + ") x| " + zl + A
                         : "M(X) = M[G^fib x| " + zl + A;
      } else {
        out.kernel    = "M(X) = M[ext(G^fib, " + zl + ")" + A;
        out.extension = "extension of " + zl + " by G^fib: splitting unknown "
                        "(h = " + std::to_string(h) + " > h_cl = "
                        + std::to_string(r.heights.h_cl) + ")";
      }
      return out;
    }
  }  // namespace detail

  inline StructuralReport analyze(Substitution const&    sub,
                                  AnalysisOptions const& opt = {}) {
    if (!is_bijective(sub)) {
      throw ValidationError("substitution is not bijective");
    }
    if (!is_primitive(sub)) {
      throw ValidationError("substitution is not primitive");
    }
    auto const bound = opt.aperiodicity_bound.value_or(
        default_aperiodicity_bound(sub));
    auto verdict = is_aperiodic(sub, bound);
    if (verdict.kind != AperiodicityVerdict::Kind::aperiodic) {
      throw ValidationError(
          verdict.kind == AperiodicityVerdict::Kind::periodic
              ? "substitution is periodic"
              : "aperiodicity not established up to n = "
                    + std::to_string(bound),
          {{"verdict", verdict.to_string()}, {"bound", verdict.bound}});
    }
    auto simp = simplify(sub);
    auto const& th = simp.substitution;

    StructuralReport r(sub, th, simp.exponent, verdict);
    r.r_set = ellis::r_set(th);
    if (r.r_set.size() < 2) {
      throw InternalError("aperiodic substitution with a one-element R-set");
    }
    r.structure_group = closure(r.r_set, th.size());
    if (!is_transitive(r.structure_group)) {
      throw InternalError("structure group is not transitive");
    }
    r.structure_fingerprint = fingerprint(r.structure_group);
    r.heights = heights(th, r.structure_group, r.r_set);
    r.little_fingerprint = fingerprint(r.heights.little);
    r.normal_fingerprint = fingerprint(r.heights.normal_completion);
    r.little_is_normal
        = is_normal_subgroup(r.heights.little, r.structure_group);
    auto const ell_minus_one = th.length() - 1;
    if (ell_minus_one % r.heights.h != 0 || ell_minus_one % r.heights.h_cl != 0
        || r.heights.h % r.heights.h_cl != 0) {
      throw InternalError("heights violate h_cl | h | l - 1");
    }
    // only meaningful for h > 1
    for (auto const& g : r.r_set) {
      if (r.heights.h == 1) {
        break;
      }
      if (element_order(g) == r.heights.h) {
        r.order_h_witness  = g;
        r.witness_in_r_set = true;
        break;
      }
    }
    if (!r.order_h_witness && r.heights.h > 1) {
      for (auto const& g : r.structure_group.elements()) {
        if (element_order(g) == r.heights.h) {
          r.order_h_witness = g;
          break;
        }
      }
    }

    r.pairs = gtwo_pairs(th, r.structure_group);
    detail::check_internal(
        r.pairs.size() == r.r_set.size() * r.structure_group.order(),
        "|G(2)| differs from |I| |G|");
    r.fiber = fiber_semigroup(th, r.pairs);
    detail::check_internal(r.fiber.fiber.size() > th.size(),
                           "aperiodic substitution with at most s two-words");
    detail::check_internal(r.fiber.green.idempotents.size()
                               == 2 * r.r_set.size(),
                           "fibre semigroup has the wrong idempotent count");

    std::size_t const g0 = opt.g0_index.value_or(0);
    if (g0 >= r.r_set.size()) {
      throw ValidationError("g0 index " + std::to_string(g0)
                            + " is out of range; the R-set has "
                            + std::to_string(r.r_set.size()) + " elements");
    }
    r.structural = structural_semigroup(th, r.fiber, r.r_set, g0);
    r.idempotent_generated
        = ellis::idempotent_generated(r.structural.sandwich.semigroup);
    detail::check_internal(r.idempotent_generated.group() == r.heights.little,
                           "little structure group differs from Gamma");
    r.degrees       = degree_map(r.structural.sandwich, r.heights);
    r.automorphisms = automorphism_data(r.structure_group);
    r.unresolved_extension = r.heights.h > r.heights.h_cl;
    r.strings              = detail::global_strings(r);
    return r;
  }

}  // namespace ellis

#endif  // ELLIS_STRUCTURAL_HPP_
