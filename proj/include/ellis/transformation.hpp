// Finite transformation semigroups acting on the points of a fibre, with
// Green's relations, kernel and the completely simple test.

#ifndef ELLIS_TRANSFORMATION_HPP_
#define ELLIS_TRANSFORMATION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "json.hpp"

namespace ellis {

  inline constexpr std::size_t default_semigroup_cap = 100'000;
  inline constexpr std::size_t memo_table_limit      = 4096;

  // A self-map of {0, ..., n-1}. Products compose like functions:
  // (f * g)(x) == f(g(x)).
  class FiberSelfMap {
   public:
    using point_type = std::uint32_t;

    FiberSelfMap() = default;
    explicit FiberSelfMap(std::vector<point_type> images)
        : _images(std::move(images)) {
      for (auto x : _images) {
        if (x >= _images.size()) {
          throw ValidationError("fibre map image out of range");
        }
      }
    }

    static FiberSelfMap identity(std::size_t n) {
      std::vector<point_type> im(n);
      std::iota(im.begin(), im.end(), point_type(0));
      return FiberSelfMap(std::move(im));
    }

    std::size_t degree() const noexcept {
      return _images.size();
    }
    point_type operator()(point_type x) const {
      return _images[x];
    }
    std::vector<point_type> const& images() const noexcept {
      return _images;
    }

    std::size_t rank() const {
      std::vector<bool> hit(_images.size(), false);
      for (auto x : _images) {
        hit[x] = true;
      }
      return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
    }

    std::vector<point_type> image_set() const {
      std::vector<point_type> im = _images;
      std::sort(im.begin(), im.end());
      im.erase(std::unique(im.begin(), im.end()), im.end());
      return im;
    }

    friend FiberSelfMap operator*(FiberSelfMap const& f, FiberSelfMap const& g) {
      if (f.degree() != g.degree()) {
        throw ValidationError("fibre maps act on different fibres");
      }
      FiberSelfMap r;
      r._images.resize(g._images.size());
      for (std::size_t i = 0; i < g._images.size(); ++i) {
        r._images[i] = f._images[g._images[i]];
      }
      return r;
    }

    friend bool operator==(FiberSelfMap const&, FiberSelfMap const&) = default;
    friend auto operator<=>(FiberSelfMap const&, FiberSelfMap const&) = default;

    std::size_t hash() const noexcept {
      std::size_t h = _images.size();
      for (auto x : _images) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }

   private:
    std::vector<point_type> _images;
  };

}  // namespace ellis

template <>
struct std::hash<ellis::FiberSelfMap> {
  std::size_t operator()(ellis::FiberSelfMap const& f) const noexcept {
    return f.hash();
  }
};

namespace ellis {

  class TransformationSemigroup {
   public:
    TransformationSemigroup() = default;

    // Takes an already closed set of maps; use semigroup_closure to build one
    // from generators.
    TransformationSemigroup(std::size_t               degree,
                            std::vector<FiberSelfMap> elements,
                            std::vector<FiberSelfMap> const& generators)
        : _degree(degree), _elements(std::move(elements)) {
      std::sort(_elements.begin(), _elements.end());
      _elements.erase(std::unique(_elements.begin(), _elements.end()),
                      _elements.end());
      for (std::size_t i = 0; i < _elements.size(); ++i) {
        if (_elements[i].degree() != degree) {
          throw ValidationError("fibre maps act on different fibres");
        }
        _index.emplace(_elements[i], i);
      }
      for (auto const& g : generators) {
        auto i = index_of(g);
        if (!i) {
          throw ValidationError("generator is not an element");
        }
        _generators.push_back(*i);
      }
      std::sort(_generators.begin(), _generators.end());
      _generators.erase(std::unique(_generators.begin(), _generators.end()),
                        _generators.end());
      _contains_identity = index_of(FiberSelfMap::identity(degree)).has_value();
      if (_elements.size() <= memo_table_limit) {
        std::size_t const n = _elements.size();
        _table.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            auto k = index_of(_elements[i] * _elements[j]);
            if (!k) {
              throw ValidationError("set of fibre maps is not closed under "
                                    "composition");
            }
            _table[i * n + j] = static_cast<std::uint16_t>(*k);
          }
        }
      } else {
        for (auto const& x : _elements) {
          for (auto g : _generators) {
            if (!index_of(x * _elements[g])) {
              throw ValidationError("set of fibre maps is not closed under "
                                    "composition");
            }
          }
        }
      }
    }

    std::size_t degree() const noexcept {
      return _degree;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    std::vector<FiberSelfMap> const& elements() const noexcept {
      return _elements;
    }
    FiberSelfMap const& at(std::size_t i) const {
      return _elements.at(i);
    }
    std::vector<std::size_t> const& generators() const noexcept {
      return _generators;
    }
    bool contains_identity() const noexcept {
      return _contains_identity;
    }

    std::optional<std::size_t> index_of(FiberSelfMap const& f) const {
      auto it = _index.find(f);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool contains(FiberSelfMap const& f) const {
      return _index.count(f) != 0;
    }

    // Index of at(i) * at(j).
    std::size_t product(std::size_t i, std::size_t j) const {
      if (!_table.empty()) {
        return _table[i * _elements.size() + j];
      }
      return *index_of(_elements[i] * _elements[j]);
    }

    friend bool operator==(TransformationSemigroup const& a,
                           TransformationSemigroup const& b) {
      return a._degree == b._degree && a._elements == b._elements;
    }

   private:
    std::size_t                                       _degree = 0;
    std::vector<FiberSelfMap>                         _elements;
    std::vector<std::size_t>                          _generators;
    std::unordered_map<FiberSelfMap, std::size_t>     _index;
    std::vector<std::uint16_t>                        _table;
    bool                                              _contains_identity = false;
  };

  inline TransformationSemigroup
  semigroup_closure(std::vector<FiberSelfMap> const& gens,
                    std::size_t                      cap = default_semigroup_cap) {
    if (gens.empty()) {
      throw ValidationError("a semigroup needs at least one generator");
    }
    std::size_t const degree = gens.front().degree();
    for (auto const& g : gens) {
      if (g.degree() != degree) {
        throw ValidationError("fibre maps act on different fibres");
      }
    }
    std::unordered_set<FiberSelfMap> seen(gens.begin(), gens.end());
    std::vector<FiberSelfMap>        all(seen.begin(), seen.end());
    for (std::size_t k = 0; k < all.size(); ++k) {
      for (auto const& g : gens) {
        auto y = all[k] * g;
        if (seen.insert(y).second) {
          if (seen.size() > cap) {
            throw ResourceError("semigroup closure exceeded "
                                + std::to_string(cap) + " elements");
          }
          all.push_back(std::move(y));
        }
      }
    }
    return TransformationSemigroup(degree, std::move(all), gens);
  }

  ////////////////////////////////////////////////////////////////////////
  // Green's relations
  ////////////////////////////////////////////////////////////////////////

  using Partition = std::vector<std::vector<std::size_t>>;

  struct GreenStructure {
    Partition                l_classes;
    Partition                r_classes;
    Partition                h_classes;
    Partition                d_classes;
    std::vector<std::size_t> l_class_of;
    std::vector<std::size_t> r_class_of;
    std::vector<std::size_t> h_class_of;
    std::vector<std::size_t> d_class_of;
    std::vector<std::size_t> idempotents;
    std::vector<std::size_t> kernel;
  };

  namespace detail {
    using bitset_type = std::vector<std::uint64_t>;

    inline bitset_type make_bitset(std::size_t n) {
      return bitset_type((n + 63) / 64, 0);
    }
    inline bool test_bit(bitset_type const& b, std::size_t i) {
      return (b[i / 64] >> (i % 64)) & 1U;
    }
    inline void set_bit(bitset_type& b, std::size_t i) {
      b[i / 64] |= std::uint64_t(1) << (i % 64);
    }

    enum class Side { left, right, both };

    // S^1 x, x S^1 or S^1 x S^1, multiplying by every element of S.
    inline bitset_type principal_ideal(TransformationSemigroup const& S,
                                       std::size_t x, Side side) {
      auto b = make_bitset(S.size());
      set_bit(b, x);
      if (side != Side::both) {
        for (std::size_t y = 0; y < S.size(); ++y) {
          set_bit(b, side == Side::left ? S.product(y, x) : S.product(x, y));
        }
        return b;
      }
      std::vector<std::size_t> todo{x};
      while (!todo.empty()) {
        auto y = todo.back();
        todo.pop_back();
        for (std::size_t z = 0; z < S.size(); ++z) {
          for (auto w : {S.product(z, y), S.product(y, z)}) {
            if (!test_bit(b, w)) {
              set_bit(b, w);
              todo.push_back(w);
            }
          }
        }
      }
      return b;
    }

    inline std::size_t popcount(bitset_type const& b) {
      std::size_t n = 0;
      for (auto w : b) {
        n += static_cast<std::size_t>(__builtin_popcountll(w));
      }
      return n;
    }

    // Partition element indices by equal keys, numbering classes in order of
    // their smallest element.
    template <typename Key>
    Partition classes_by_key(std::vector<Key> const&   keys,
                             std::vector<std::size_t>& class_of) {
      std::map<Key, std::size_t> id;
      Partition                  out;
      class_of.assign(keys.size(), 0);
      for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, fresh] = id.emplace(keys[i], out.size());
        if (fresh) {
          out.emplace_back();
        }
        out[it->second].push_back(i);
        class_of[i] = it->second;
      }
      return out;
    }
  }  // namespace detail

  inline GreenStructure green_structure(TransformationSemigroup const& S) {
    using detail::Side;
    std::size_t const n = S.size();
    GreenStructure    gs;

    std::vector<detail::bitset_type> left(n), right(n);
    for (std::size_t x = 0; x < n; ++x) {
      left[x]  = detail::principal_ideal(S, x, Side::left);
      right[x] = detail::principal_ideal(S, x, Side::right);
    }
    gs.l_classes = detail::classes_by_key(left, gs.l_class_of);
    gs.r_classes = detail::classes_by_key(right, gs.r_class_of);

    std::vector<std::pair<std::size_t, std::size_t>> lr(n);
    for (std::size_t x = 0; x < n; ++x) {
      lr[x] = {gs.l_class_of[x], gs.r_class_of[x]};
    }
    gs.h_classes = detail::classes_by_key(lr, gs.h_class_of);

    // D is the join of L and R: union-find over L- and R-classes
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&parent](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    for (auto const& part : {gs.l_classes, gs.r_classes}) {
      for (auto const& cls : part) {
        for (auto y : cls) {
          parent[find(y)] = find(cls.front());
        }
      }
    }
    std::vector<std::size_t> root(n);
    for (std::size_t x = 0; x < n; ++x) {
      root[x] = find(x);
    }
    gs.d_classes = detail::classes_by_key(root, gs.d_class_of);

    for (std::size_t x = 0; x < n; ++x) {
      if (S.product(x, x) == x) {
        gs.idempotents.push_back(x);
      }
    }

    // the kernel is the smallest principal two-sided ideal, and must lie in
    // every other one
    std::vector<detail::bitset_type> ideals;
    for (auto const& cls : gs.d_classes) {
      ideals.push_back(detail::principal_ideal(S, cls.front(), Side::both));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < ideals.size(); ++k) {
      if (detail::popcount(ideals[k]) < detail::popcount(ideals[best])) {
        best = k;
      }
    }
    for (auto const& J : ideals) {
      for (std::size_t w = 0; w < J.size(); ++w) {
        if ((ideals[best][w] & ~J[w]) != 0) {
          throw InternalError("semigroup has no minimal two-sided ideal");
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (detail::test_bit(ideals[best], x)) {
        gs.kernel.push_back(x);
      }
    }
    return gs;
  }

  // Finite case: simple (the kernel is everything) and has an idempotent.
  inline bool is_completely_simple(TransformationSemigroup const& S,
                                   GreenStructure const&          gs) {
    return gs.kernel.size() == S.size() && !gs.idempotents.empty();
  }

  inline bool is_completely_simple(TransformationSemigroup const& S) {
    return is_completely_simple(S, green_structure(S));
  }

  // The elements of `indices` as a transformation semigroup in their own
  // right, e.g. the kernel.
  inline TransformationSemigroup subsemigroup(TransformationSemigroup const& S,
                                              std::vector<std::size_t> const& indices) {
    std::vector<FiberSelfMap> el;
    for (auto i : indices) {
      el.push_back(S.at(i));
    }
    return TransformationSemigroup(S.degree(), el, el);
  }

  inline nlohmann::json partition_summary(Partition const& p) {
    std::vector<std::size_t> sizes;
    for (auto const& c : p) {
      sizes.push_back(c.size());
    }
    return {{"count", p.size()}, {"sizes", sizes}};
  }

  inline nlohmann::json to_json(TransformationSemigroup const&  S,
                                std::vector<std::string> const& point_labels) {
    auto           gs = green_structure(S);
    nlohmann::json j;
    j["points"] = point_labels;
    j["elements"] = nlohmann::json::array();
    for (auto const& f : S.elements()) {
      j["elements"].push_back(f.images());
    }
    j["generators"] = S.generators();
    j["green"]      = {{"l_classes", partition_summary(gs.l_classes)},
                       {"r_classes", partition_summary(gs.r_classes)},
                       {"h_classes", partition_summary(gs.h_classes)},
                       {"d_classes", partition_summary(gs.d_classes)},
                       {"idempotents", gs.idempotents.size()},
                       {"kernel_size", gs.kernel.size()}};
    return j;
  }

}  // namespace ellis

#endif  // ELLIS_TRANSFORMATION_HPP_
