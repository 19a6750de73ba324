// Finite permutation groups by explicit element enumeration.
//
// Alphabets handled here are small (s <= 10), so groups are stored as the full
// sorted list of their elements. There is no stabiliser chain machinery; a
// configurable cap turns a runaway closure into a ResourceError.

#ifndef ELLIS_PERM_GROUP_HPP_
#define ELLIS_PERM_GROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace ellis {

  inline constexpr std::size_t default_group_cap = 1'000'000;

  class PermGroup {
   public:
    PermGroup() : PermGroup(0) {}

    // The trivial group of the given degree.
    explicit PermGroup(std::size_t degree)
        : _degree(degree), _elements{Permutation::identity(degree)} {
      reindex();
    }

    std::size_t degree() const noexcept {
      return _degree;
    }
    std::size_t order() const noexcept {
      return _elements.size();
    }
    std::vector<Permutation> const& generators() const noexcept {
      return _generators;
    }
    // Sorted lexicographically on image arrays; the identity is first.
    std::vector<Permutation> const& elements() const noexcept {
      return _elements;
    }
    Permutation const& at(std::size_t i) const {
      return _elements.at(i);
    }

    bool contains(Permutation const& p) const {
      return _index.count(p) != 0;
    }

    std::optional<std::size_t> index_of(Permutation const& p) const {
      auto it = _index.find(p);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool is_subgroup_of(PermGroup const& other) const {
      return std::all_of(_elements.begin(),
                         _elements.end(),
                         [&other](auto const& p) { return other.contains(p); });
    }

    friend bool operator==(PermGroup const& a, PermGroup const& b) {
      return a._degree == b._degree && a._elements == b._elements;
    }

    friend PermGroup closure(std::vector<Permutation> const&, std::size_t,
                             std::size_t);

   private:
    void reindex() {
      _index.clear();
      for (std::size_t i = 0; i < _elements.size(); ++i) {
        _index.emplace(_elements[i], i);
      }
    }

    std::size_t                                        _degree;
    std::vector<Permutation>                           _generators;
    std::vector<Permutation>                           _elements;
    std::unordered_map<Permutation, std::size_t>       _index;
  };

  // The smallest group containing gens. All generators must have the given
  // degree.
  inline PermGroup closure(std::vector<Permutation> const& gens,
                           std::size_t                     degree,
                           std::size_t cap = default_group_cap) {
    for (auto const& g : gens) {
      if (g.degree() != degree) {
        throw ValidationError("generator of degree "
                              + std::to_string(g.degree())
                              + " in a group of degree "
                              + std::to_string(degree));
      }
    }
    PermGroup G(degree);
    G._generators = gens;
    std::unordered_set<Permutation> seen{Permutation::identity(degree)};
    std::vector<Permutation>        frontier{Permutation::identity(degree)};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (auto const& x : frontier) {
        for (auto const& g : gens) {
          auto y = g * x;
          if (seen.insert(y).second) {
            if (seen.size() > cap) {
              throw ResourceError("group closure exceeded "
                                  + std::to_string(cap) + " elements");
            }
            next.push_back(std::move(y));
          }
        }
      }
      frontier = std::move(next);
    }
    G._elements.assign(seen.begin(), seen.end());
    std::sort(G._elements.begin(), G._elements.end());
    G.reindex();
    return G;
  }

  // Generators of `ambient` must be supplied; the result is the smallest
  // subgroup containing sub_gens that is normalised by every one of them.
  inline PermGroup normal_closure(std::vector<Permutation> const& sub_gens,
                                  PermGroup const&                ambient) {
    for (auto const& x : sub_gens) {
      if (!ambient.contains(x)) {
        throw ValidationError(
            "normal closure generator lies outside the ambient group");
      }
    }
    std::vector<Permutation> conj_by = ambient.generators();
    if (conj_by.empty()) {
      conj_by = ambient.elements();
    }
    std::vector<Permutation> gens = sub_gens;
    auto                     N    = closure(gens, ambient.degree());
    while (true) {
      bool grew = false;
      for (auto const& g : conj_by) {
        auto const gi = g.inverse();
        for (auto const& n : std::vector<Permutation>(gens)) {
          auto c = g * n * gi;
          if (!N.contains(c)) {
            gens.push_back(c);
            N    = closure(gens, ambient.degree());
            grew = true;
          }
        }
      }
      if (!grew) {
        return N;
      }
    }
  }

  inline bool is_normal_subgroup(PermGroup const& N, PermGroup const& G) {
    if (!N.is_subgroup_of(G)) {
      return false;
    }
    for (auto const& g : G.elements()) {
      auto const gi = g.inverse();
      for (auto const& n : N.elements()) {
        if (!N.contains(g * n * gi)) {
          return false;
        }
      }
    }
    return true;
  }

  inline std::vector<letter_type> orbit(PermGroup const& G, letter_type x) {
    std::vector<bool>        seen(G.degree(), false);
    std::vector<letter_type> out{x};
    seen[x] = true;
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (auto const& g : G.elements()) {
        auto y = g(out[k]);
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    }
    return out;
  }

  inline bool is_transitive(PermGroup const& G) {
    return G.degree() == 0 || orbit(G, 0).size() == G.degree();
  }

  inline bool commutes_with_all(Permutation const&              c,
                                std::vector<Permutation> const& gs) {
    return std::all_of(
        gs.begin(), gs.end(), [&c](auto const& g) { return c * g == g * c; });
  }

  // C_{S_s}(G). For transitive G a centralising permutation is fixed by the
  // image of letter 0, so at most s candidates are tried. Otherwise all s!
  // permutations are filtered, which is only allowed for s <= 8.
  inline PermGroup centralizer_in_symmetric(PermGroup const& G) {
    std::size_t const s    = G.degree();
    auto const&       gens = G.generators().empty() ? G.elements()
                                                    : G.generators();
    std::vector<Permutation> found;
    if (s > 0 && is_transitive(G)) {
      // transversal[x] maps 0 to x
      std::vector<std::optional<Permutation>> transversal(s);
      transversal[0] = Permutation::identity(s);
      for (auto const& g : G.elements()) {
        if (!transversal[g(0)]) {
          transversal[g(0)] = g;
        }
      }
      for (letter_type y = 0; y < s; ++y) {
        std::vector<letter_type> im(s);
        for (letter_type x = 0; x < s; ++x) {
          im[x] = (*transversal[x])(y);
        }
        std::vector<letter_type> sorted = im;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          continue;
        }
        Permutation c(im);
        if (commutes_with_all(c, gens)) {
          found.push_back(std::move(c));
        }
      }
    } else {
      if (s > 8) {
        throw ResourceError("centraliser of an intransitive group of degree "
                            + std::to_string(s) + " > 8");
      }
      std::vector<letter_type> im(s);
      std::iota(im.begin(), im.end(), letter_type(0));
      do {
        Permutation c(im);
        if (commutes_with_all(c, gens)) {
          found.push_back(std::move(c));
        }
      } while (std::next_permutation(im.begin(), im.end()));
    }
    return closure(found, s);
  }

  struct QuotientData {
    std::size_t order;
    bool        is_cyclic;
    // An element whose coset generates G/N when the quotient is cyclic.
    Permutation generator;
  };

  // Smallest k >= 1 with g^k in N.
  inline std::size_t coset_order(Permutation const& g, PermGroup const& N) {
    auto        x = g;
    std::size_t k = 1;
    while (!N.contains(x)) {
      x = g * x;
      ++k;
    }
    return k;
  }

  inline QuotientData quotient_data(PermGroup const& G, PermGroup const& N) {
    if (!N.is_subgroup_of(G)) {
      throw ValidationError("quotient by a set that is not a subgroup");
    }
    if (!is_normal_subgroup(N, G)) {
      throw ValidationError("quotient by a subgroup that is not normal");
    }
    QuotientData q{G.order() / N.order(), false,
                   Permutation::identity(G.degree())};
    for (auto const& g : G.elements()) {
      if (coset_order(g, N) == q.order) {
        q.is_cyclic = true;
        q.generator = g;
        break;
      }
    }
    return q;
  }

  struct GroupFingerprint {
    std::size_t                       order;
    bool                              abelian;
    bool                              cyclic;
    std::size_t                       exponent;
    std::map<std::size_t, std::size_t> element_orders;  // order -> count
    std::string                       name;  // empty when not recognised
  };

  namespace detail {
    inline std::string abstract_group_name(GroupFingerprint const& f) {
      auto count = [&f](std::size_t k) -> std::size_t {
        auto it = f.element_orders.find(k);
        return it == f.element_orders.end() ? 0 : it->second;
      };
      if (f.order == 1) {
        return "1";
      }
      if (f.cyclic) {
        return "Z/" + std::to_string(f.order) + "Z";
      }
      if (f.order > 12) {
        return "";
      }
      if (f.abelian) {
        switch (f.order) {
          case 4:
            return "Z/2Z x Z/2Z";
          case 8:
            return count(4) > 0 ? "Z/2Z x Z/4Z" : "Z/2Z x Z/2Z x Z/2Z";
          case 9:
            return "Z/3Z x Z/3Z";
          case 12:
            return "Z/2Z x Z/6Z";
          default:
            return "";
        }
      }
      switch (f.order) {
        case 6:
          return "S_3";
        case 8:
          return count(2) == 5 ? "D_4" : "Q_8";
        case 10:
          return "D_5";
        case 12:
          if (count(2) == 3) {
            return "A_4";
          }
          return count(2) == 7 ? "D_6" : "Dic_3";
        default:
          return "";
      }
    }

    inline std::size_t factorial(std::size_t n) {
      std::size_t r = 1;
      for (std::size_t k = 2; k <= n; ++k) {
        r *= k;
      }
      return r;
    }
  }  // namespace detail

  inline bool is_abelian(PermGroup const& G) {
    auto const& gens = G.generators().empty() ? G.elements() : G.generators();
    for (auto const& a : gens) {
      if (!commutes_with_all(a, gens)) {
        return false;
      }
    }
    return true;
  }

  // (order, abelian, exponent, multiset of element orders) and a name. The
  // full symmetric and alternating groups on the alphabet are named S_s and
  // A_s; other groups of order at most 12 get their abstract name.
  inline GroupFingerprint fingerprint(PermGroup const& G) {
    GroupFingerprint f{G.order(), is_abelian(G), false, 1, {}, ""};
    for (auto const& g : G.elements()) {
      auto k = element_order(g);
      f.element_orders[k]++;
      f.exponent = std::lcm(f.exponent, k);
    }
    f.cyclic = f.element_orders.count(f.order) != 0;
    std::size_t const s = G.degree();
    bool const all_even = std::all_of(G.elements().begin(),
                                      G.elements().end(),
                                      [](auto const& g) { return is_even(g); });
    if (s >= 2 && f.order == detail::factorial(s)) {
      f.name = "S_" + std::to_string(s);
    } else if (s >= 3 && all_even && f.order == detail::factorial(s) / 2) {
      f.name = "A_" + std::to_string(s);
    } else {
      f.name = detail::abstract_group_name(f);
    }
    return f;
  }

}  // namespace ellis

#endif  // ELLIS_PERM_GROUP_HPP_
