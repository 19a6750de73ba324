// Rees matrix semigroups M[G; I, Lambda; A] over permutation groups.
//
// Elements are triples (i, g, lambda) with product
//
//   (i, g, lambda)(j, h, mu) = (i, g * a(lambda, j) * h, mu).
//
// The sandwich matrix is stored row-major as A[lambda][i].

#ifndef ELLIS_REES_HPP_
#define ELLIS_REES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "json.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "substitution.hpp"
#include "transformation.hpp"

namespace ellis {

  struct ReesElement {
    std::size_t i;
    Permutation g;
    std::size_t lambda;

    friend bool operator==(ReesElement const&, ReesElement const&) = default;
    friend auto operator<=>(ReesElement const&, ReesElement const&) = default;
  };

  using SandwichMatrix = std::vector<std::vector<Permutation>>;

  class ReesMatrixSemigroup {
   public:
    ReesMatrixSemigroup() = default;

    ReesMatrixSemigroup(PermGroup                G,
                        std::vector<std::string> i_labels,
                        std::vector<std::string> lambda_labels,
                        SandwichMatrix           A)
        : _group(std::move(G)),
          _i_labels(std::move(i_labels)),
          _lambda_labels(std::move(lambda_labels)),
          _sandwich(std::move(A)) {
      if (_i_labels.empty() || _lambda_labels.empty()) {
        throw ValidationError("index sets of a Rees matrix semigroup must be "
                              "non-empty");
      }
      if (_sandwich.size() != _lambda_labels.size()) {
        throw ValidationError("sandwich matrix has the wrong number of rows");
      }
      for (auto const& row : _sandwich) {
        if (row.size() != _i_labels.size()) {
          throw ValidationError("sandwich matrix has the wrong number of "
                                "columns");
        }
        for (auto const& a : row) {
          if (!_group.contains(a)) {
            throw ValidationError("sandwich entry " + to_cycle_string(a)
                                  + " is not in the structure group");
          }
        }
      }
    }

    PermGroup const& group() const noexcept {
      return _group;
    }
    std::size_t i_size() const noexcept {
      return _i_labels.size();
    }
    std::size_t lambda_size() const noexcept {
      return _lambda_labels.size();
    }
    std::vector<std::string> const& i_labels() const noexcept {
      return _i_labels;
    }
    std::vector<std::string> const& lambda_labels() const noexcept {
      return _lambda_labels;
    }
    SandwichMatrix const& sandwich() const noexcept {
      return _sandwich;
    }
    Permutation const& a(std::size_t lambda, std::size_t i) const {
      return _sandwich.at(lambda).at(i);
    }

    std::size_t size() const noexcept {
      return i_size() * _group.order() * lambda_size();
    }

    bool contains(ReesElement const& x) const {
      return x.i < i_size() && x.lambda < lambda_size()
             && _group.contains(x.g);
    }

    // Elements ordered by (i, g, lambda) with g in group order.
    std::vector<ReesElement> elements() const {
      std::vector<ReesElement> out;
      out.reserve(size());
      for (std::size_t i = 0; i < i_size(); ++i) {
        for (auto const& g : _group.elements()) {
          for (std::size_t l = 0; l < lambda_size(); ++l) {
            out.push_back({i, g, l});
          }
        }
      }
      return out;
    }

    std::size_t index_of(ReesElement const& x) const {
      auto gi = _group.index_of(x.g);
      if (!gi || x.i >= i_size() || x.lambda >= lambda_size()) {
        throw ValidationError("triple is not an element of the semigroup");
      }
      return (x.i * _group.order() + *gi) * lambda_size() + x.lambda;
    }

    bool is_normalized(std::size_t i0, std::size_t lambda0) const {
      for (std::size_t l = 0; l < lambda_size(); ++l) {
        if (!a(l, i0).is_identity()) {
          return false;
        }
      }
      for (std::size_t i = 0; i < i_size(); ++i) {
        if (!a(lambda0, i).is_identity()) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(ReesMatrixSemigroup const& x,
                           ReesMatrixSemigroup const& y) {
      return x._group == y._group && x._sandwich == y._sandwich
             && x._i_labels.size() == y._i_labels.size()
             && x._lambda_labels.size() == y._lambda_labels.size();
    }

   private:
    PermGroup                _group;
    std::vector<std::string> _i_labels;
    std::vector<std::string> _lambda_labels;
    SandwichMatrix           _sandwich;
  };

  inline ReesElement multiply(ReesElement const&         x,
                              ReesElement const&         y,
                              ReesMatrixSemigroup const& M) {
    return {x.i, x.g * M.a(x.lambda, y.i) * y.g, y.lambda};
  }

  // (i, a(lambda, i)^-1, lambda) for every i and lambda.
  inline std::vector<ReesElement> idempotents_of(ReesMatrixSemigroup const& M) {
    std::vector<ReesElement> out;
    for (std::size_t i = 0; i < M.i_size(); ++i) {
      for (std::size_t l = 0; l < M.lambda_size(); ++l) {
        out.push_back({i, M.a(l, i).inverse(), l});
      }
    }
    return out;
  }

  // The inverse of x inside its H-class group.
  inline ReesElement normal_inverse(ReesElement const&         x,
                                    ReesMatrixSemigroup const& M) {
    auto const ai = M.a(x.lambda, x.i).inverse();
    return {x.i, ai * x.g.inverse() * ai, x.lambda};
  }

  // Closure of all sandwich entries.
  inline PermGroup little_structure_group(ReesMatrixSemigroup const& M) {
    std::vector<Permutation> gens;
    for (auto const& row : M.sandwich()) {
      gens.insert(gens.end(), row.begin(), row.end());
    }
    return closure(gens, M.group().degree());
  }

  inline std::set<ReesElement>
  rees_closure(std::vector<ReesElement> const& gens,
               ReesMatrixSemigroup const&      M) {
    std::set<ReesElement>    seen(gens.begin(), gens.end());
    std::vector<ReesElement> todo(seen.begin(), seen.end());
    for (std::size_t k = 0; k < todo.size(); ++k) {
      for (auto const& g : gens) {
        auto y = multiply(todo[k], g, M);
        if (seen.insert(y).second) {
          todo.push_back(std::move(y));
        }
      }
    }
    return seen;
  }

  // M[Gamma; I, Lambda; A] with Gamma the little structure group. The
  // subsemigroup generated by the idempotents is computed by closure as well
  // and must coincide with it.
  inline ReesMatrixSemigroup idempotent_generated(ReesMatrixSemigroup const& M) {
    auto const gamma = little_structure_group(M);
    ReesMatrixSemigroup sub(gamma, M.i_labels(), M.lambda_labels(),
                            M.sandwich());
    auto const closed = rees_closure(idempotents_of(M), M);
    auto const expect = sub.elements();
    if (closed != std::set<ReesElement>(expect.begin(), expect.end())) {
      throw InternalError("subsemigroup generated by the idempotents has "
                          + std::to_string(closed.size())
                          + " elements, expected "
                          + std::to_string(expect.size()));
    }
    return sub;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphisms and gauge moves
  ////////////////////////////////////////////////////////////////////////

  using ReesMorphism = std::function<ReesElement(ReesElement const&)>;

  // Exhaustive check that phi: M -> N is a bijective homomorphism.
  inline bool verify_rees_isomorphism(ReesMatrixSemigroup const& M,
                                      ReesMatrixSemigroup const& N,
                                      ReesMorphism const&        phi) {
    if (M.size() != N.size()) {
      return false;
    }
    auto const               el = M.elements();
    std::vector<ReesElement> image;
    image.reserve(el.size());
    std::set<ReesElement> seen;
    for (auto const& x : el) {
      auto y = phi(x);
      if (!N.contains(y) || !seen.insert(y).second) {
        return false;
      }
      image.push_back(std::move(y));
    }
    for (std::size_t p = 0; p < el.size(); ++p) {
      for (std::size_t q = 0; q < el.size(); ++q) {
        if (phi(multiply(el[p], el[q], M))
            != multiply(image[p], image[q], N)) {
          return false;
        }
      }
    }
    return true;
  }

  struct GaugeResult {
    ReesMatrixSemigroup semigroup;
    std::vector<Permutation> row_factors;  // u, indexed by lambda
    std::vector<Permutation> col_factors;  // v, indexed by i

    // (i, g, lambda) -> (i, v_i^-1 g u_lambda^-1, lambda)
    ReesElement operator()(ReesElement const& x) const {
      return {x.i, col_factors[x.i].inverse() * x.g
                       * row_factors[x.lambda].inverse(),
              x.lambda};
    }
  };

  // a(lambda, i) -> u_lambda a(lambda, i) v_i.
  inline GaugeResult gauge_renormalize(ReesMatrixSemigroup const&      M,
                                       std::vector<Permutation> const& u,
                                       std::vector<Permutation> const& v) {
    if (u.size() != M.lambda_size() || v.size() != M.i_size()) {
      throw ValidationError("gauge factors do not match the sandwich shape");
    }
    for (auto const& x : u) {
      if (!M.group().contains(x)) {
        throw ValidationError("gauge factor outside the structure group");
      }
    }
    for (auto const& x : v) {
      if (!M.group().contains(x)) {
        throw ValidationError("gauge factor outside the structure group");
      }
    }
    SandwichMatrix A = M.sandwich();
    for (std::size_t l = 0; l < M.lambda_size(); ++l) {
      for (std::size_t i = 0; i < M.i_size(); ++i) {
        A[l][i] = u[l] * A[l][i] * v[i];
      }
    }
    GaugeResult r{ReesMatrixSemigroup(M.group(), M.i_labels(),
                                      M.lambda_labels(), std::move(A)),
                  u, v};
    detail::check_internal(r.semigroup.size() == M.size()
                               && r.semigroup.i_size() == M.i_size()
                               && r.semigroup.lambda_size() == M.lambda_size(),
                           "gauge move changed the shape");
    return r;
  }

  namespace detail {
    // A small generating set: keep an element only if it enlarges the
    // subgroup generated so far.
    inline std::vector<Permutation> reduced_generators(PermGroup const& G) {
      std::vector<Permutation> gens;
      auto                     H = closure({}, G.degree());
      for (auto const& g : G.elements()) {
        if (!H.contains(g)) {
          gens.push_back(g);
          H = closure(gens, G.degree());
        }
        if (H.order() == G.order()) {
          break;
        }
      }
      return gens;
    }

    // Every isomorphism G -> H as a table indexed by G's element order.
    inline std::vector<std::vector<Permutation>>
    group_isomorphisms(PermGroup const& G, PermGroup const& H) {
      std::vector<std::vector<Permutation>> out;
      if (G.order() != H.order()) {
        return out;
      }
      auto const gens = reduced_generators(G);
      // words: every element of G as a product of generators, found by BFS
      std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(
          G.order());  // (index of x, generator k) with element = gen_k * x
      std::vector<std::size_t> order{0};
      std::vector<bool>        seen(G.order(), false);
      seen[0] = true;
      for (std::size_t k = 0; k < order.size(); ++k) {
        for (std::size_t t = 0; t < gens.size(); ++t) {
          auto y = *G.index_of(gens[t] * G.at(order[k]));
          if (!seen[y]) {
            seen[y]   = true;
            parent[y] = {order[k], t};
            order.push_back(y);
          }
        }
      }
      std::vector<std::size_t> choice(gens.size(), 0);
      auto const               n = H.order();
      while (true) {
        bool ok = true;
        for (std::size_t t = 0; t < gens.size() && ok; ++t) {
          ok = element_order(gens[t]) == element_order(H.at(choice[t]));
        }
        if (ok) {
          std::vector<Permutation> psi(G.order());
          psi[0] = H.at(0);
          for (std::size_t k = 1; k < order.size(); ++k) {
            auto [x, t]     = *parent[order[k]];
            psi[order[k]] = H.at(choice[t]) * psi[x];
          }
          std::set<Permutation> image(psi.begin(), psi.end());
          ok = image.size() == n;
          for (std::size_t x = 0; x < G.order() && ok; ++x) {
            for (std::size_t t = 0; t < gens.size() && ok; ++t) {
              auto y = *G.index_of(gens[t] * G.at(x));
              ok     = psi[y] == H.at(choice[t]) * psi[x];
            }
          }
          if (ok) {
            out.push_back(std::move(psi));
          }
        }
        std::size_t t = 0;
        while (t < choice.size() && ++choice[t] == n) {
          choice[t++] = 0;
        }
        if (t == choice.size()) {
          break;
        }
      }
      return out;
    }

    inline std::size_t checked_factorial(std::size_t n, std::size_t cap) {
      std::size_t r = 1;
      for (std::size_t k = 2; k <= n; ++k) {
        r *= k;
        if (r > cap) {
          throw ResourceError("presentation search over more than "
                              + std::to_string(cap) + " index relabelings");
        }
      }
      return r;
    }
  }  // namespace detail

  inline constexpr std::size_t presentation_search_group_cap = 120;

  // phi(i, g, lambda) = (alpha_i, v_i psi(g) u_lambda, beta_lambda).
  struct PresentationIsomorphism {
    std::vector<std::size_t> alpha;
    std::vector<std::size_t> beta;
    std::vector<Permutation> psi;  // indexed by the source group's elements
    std::vector<Permutation> u;
    std::vector<Permutation> v;
    PermGroup                source;

    ReesElement operator()(ReesElement const& x) const {
      auto const& g = psi[*source.index_of(x.g)];
      return {alpha[x.i], v[x.i] * g * u[x.lambda], beta[x.lambda]};
    }
  };

  // Searches for a gauge move, index relabeling and group isomorphism
  // carrying M onto N. The search is exhaustive; it is refused for groups of
  // order above 120.
  inline std::optional<PresentationIsomorphism>
  find_presentation_isomorphism(ReesMatrixSemigroup const& M,
                                ReesMatrixSemigroup const& N) {
    if (M.i_size() != N.i_size() || M.lambda_size() != N.lambda_size()
        || M.group().order() != N.group().order()) {
      return std::nullopt;
    }
    if (M.group().order() > presentation_search_group_cap) {
      throw ResourceError("presentation search needs a group of order at "
                          "most 120");
    }
    detail::checked_factorial(M.i_size(), 100'000);
    detail::checked_factorial(M.lambda_size(), 100'000);
    auto const  isos = detail::group_isomorphisms(M.group(), N.group());
    auto const& H    = N.group();
    std::size_t const nI = M.i_size(), nL = M.lambda_size();

    std::vector<std::size_t> alpha(nI), beta(nL);
    std::iota(alpha.begin(), alpha.end(), std::size_t(0));
    do {
      std::iota(beta.begin(), beta.end(), std::size_t(0));
      do {
        for (auto const& psi : isos) {
          auto P = [&](Permutation const& g) -> Permutation const& {
            return psi[*M.group().index_of(g)];
          };
          // need N.a(beta_l, alpha_j) = u_l^-1 psi(a(l, j)) v_j^-1
          for (auto const& v0 : H.elements()) {
            std::vector<Permutation> u(nL), v(nI);
            v[0] = v0;
            for (std::size_t l = 0; l < nL; ++l) {
              u[l] = P(M.a(l, 0)) * v0.inverse()
                     * N.a(beta[l], alpha[0]).inverse();
            }
            for (std::size_t j = 1; j < nI; ++j) {
              v[j] = (u[0] * N.a(beta[0], alpha[j])).inverse()
                     * P(M.a(0, j));
            }
            bool ok = true;
            for (std::size_t l = 0; l < nL && ok; ++l) {
              for (std::size_t j = 0; j < nI && ok; ++j) {
                ok = N.a(beta[l], alpha[j])
                     == u[l].inverse() * P(M.a(l, j)) * v[j].inverse();
              }
            }
            if (ok) {
              return PresentationIsomorphism{alpha, beta, psi, u, v,
                                             M.group()};
            }
          }
        }
      } while (std::next_permutation(beta.begin(), beta.end()));
    } while (std::next_permutation(alpha.begin(), alpha.end()));
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution sandwiches
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t lambda_plus  = 0;
  inline constexpr std::size_t lambda_minus = 1;

  struct SubstitutionSandwich {
    ReesMatrixSemigroup      semigroup;
    std::vector<Permutation> r_set;
    std::size_t              g0_index;

    Permutation const& g0() const {
      return r_set[g0_index];
    }
  };

  // M[G; I, {+,-}; A] with G = <I>, a(+, g) = 1 and a(-, g) = g0 g^-1.
  // Normalised with respect to e = (g0, 1, +).
  inline SubstitutionSandwich
  substitution_sandwich(std::vector<Permutation> const& r_set,
                        std::size_t                     g0_index,
                        std::vector<std::string> const& letter_labels = {}) {
    if (r_set.empty()) {
      throw ValidationError("empty R-set");
    }
    if (g0_index >= r_set.size()) {
      throw ValidationError("g0 index " + std::to_string(g0_index)
                            + " is not in the R-set of size "
                            + std::to_string(r_set.size()));
    }
    std::size_t const s  = r_set.front().degree();
    auto              G  = closure(r_set, s);
    auto const&       g0 = r_set[g0_index];
    SandwichMatrix    A(2);
    std::vector<std::string> labels;
    for (auto const& g : r_set) {
      A[lambda_plus].push_back(Permutation::identity(s));
      A[lambda_minus].push_back(g0 * g.inverse());
      labels.push_back(to_cycle_string(g, letter_labels));
    }
    return {ReesMatrixSemigroup(std::move(G), labels, {"+", "-"},
                                std::move(A)),
            r_set, g0_index};
  }

  inline SubstitutionSandwich
  substitution_sandwich(std::vector<Permutation> const& r_set,
                        Permutation const&              g0,
                        std::vector<std::string> const& letter_labels = {}) {
    auto it = std::find(r_set.begin(), r_set.end(), g0);
    if (it == r_set.end()) {
      throw ValidationError("g0 = " + to_cycle_string(g0)
                            + " is not in the R-set");
    }
    return substitution_sandwich(
        r_set, static_cast<std::size_t>(it - r_set.begin()), letter_labels);
  }

  // The pair (L, R) and sign of the fibre element [L.R; sign] that the
  // triple (i, g, lambda) stands for:
  //   (i, g, +) -> R = g,      L = i^-1 R
  //   (i, g, -) -> R = g g0,   L = i^-1 R
  struct SignedPair {
    Permutation left;
    Permutation right;
    std::size_t sign;  // lambda_plus or lambda_minus

    friend bool operator==(SignedPair const&, SignedPair const&) = default;
    friend auto operator<=>(SignedPair const&, SignedPair const&) = default;
  };

  inline SignedPair to_signed_pair(SubstitutionSandwich const& S,
                                   ReesElement const&          x) {
    auto const& i = S.r_set.at(x.i);
    auto        R = x.lambda == lambda_plus ? x.g : x.g * S.g0();
    auto        L = i.inverse() * R;
    return {std::move(L), std::move(R), x.lambda};
  }

  // [L.R; +](a.b) = L(b).R(b) and [L.R; -](a.b) = L(a).R(a).
  inline FiberSelfMap fiber_action(SignedPair const& p, TwoWordFiber const& F) {
    std::vector<FiberSelfMap::point_type> im(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) {
      auto const [a, b] = F[k];
      letter_type const x = p.sign == lambda_plus ? b : a;
      auto const j = F.index_of(TwoWord(p.left(x), p.right(x)));
      if (!j) {
        throw InternalError("fibre element leaves the set of allowed "
                            "two-words");
      }
      im[k] = static_cast<FiberSelfMap::point_type>(*j);
    }
    return FiberSelfMap(std::move(im));
  }

  struct FiberRealization {
    TransformationSemigroup  semigroup;
    std::vector<ReesElement> elements;  // M's elements in M.elements() order
    std::vector<std::size_t> image;     // index in semigroup of each element
  };

  // A faithful copy of the substitution sandwich acting on the fibre.
  inline FiberRealization as_transformation_semigroup(SubstitutionSandwich const& S,
                                                      TwoWordFiber const& F) {
    FiberRealization          out;
    out.elements = S.semigroup.elements();
    std::vector<FiberSelfMap> maps;
    for (auto const& x : out.elements) {
      maps.push_back(fiber_action(to_signed_pair(S, x), F));
    }
    // the constructor rejects a set that is not closed
    try {
      out.semigroup = TransformationSemigroup(F.size(), maps, maps);
    } catch (ValidationError const& e) {
      throw InternalError(std::string("fibre copy of the sandwich: ")
                          + e.what());
    }
    if (out.semigroup.size() != maps.size()) {
      throw InternalError("fibre copy of the sandwich is not injective");
    }
    for (auto const& f : maps) {
      out.image.push_back(*out.semigroup.index_of(f));
    }
    return out;
  }

  // Exhaustive check that x -> S.at(image[x]) is a bijective homomorphism
  // from M onto S. `elements` lists M's elements and `image` their images.
  inline bool verify_rees_isomorphism(TransformationSemigroup const&  S,
                                      ReesMatrixSemigroup const&      M,
                                      std::vector<ReesElement> const& elements,
                                      std::vector<std::size_t> const& image) {
    if (elements.size() != M.size() || image.size() != elements.size()
        || S.size() != M.size()) {
      return false;
    }
    std::vector<bool> hit(S.size(), false);
    for (auto k : image) {
      if (k >= S.size() || hit[k]) {
        return false;
      }
      hit[k] = true;
    }
    std::vector<std::size_t> pos(M.size());
    for (std::size_t p = 0; p < elements.size(); ++p) {
      if (!M.contains(elements[p])) {
        return false;
      }
      pos[M.index_of(elements[p])] = p;
    }
    for (std::size_t p = 0; p < elements.size(); ++p) {
      for (std::size_t q = 0; q < elements.size(); ++q) {
        auto const xy = multiply(elements[p], elements[q], M);
        if (image[pos[M.index_of(xy)]] != S.product(image[p], image[q])) {
          return false;
        }
      }
    }
    return true;
  }

  inline nlohmann::json to_json(ReesMatrixSemigroup const&      M,
                                std::vector<std::string> const& letter_labels) {
    nlohmann::json j;
    j["group"]["order"]      = M.group().order();
    j["group"]["generators"] = nlohmann::json::array();
    for (auto const& g : detail::reduced_generators(M.group())) {
      j["group"]["generators"].push_back(to_cycle_string(g, letter_labels));
    }
    j["I"]      = M.i_labels();
    j["Lambda"] = M.lambda_labels();
    j["A"]      = nlohmann::json::array();
    for (auto const& row : M.sandwich()) {
      auto r = nlohmann::json::array();
      for (auto const& a : row) {
        r.push_back({{"cycles", to_cycle_string(a, letter_labels)},
                     {"images", a.images()}});
      }
      j["A"].push_back(r);
    }
    return j;
  }

}  // namespace ellis

#endif  // ELLIS_REES_HPP_
