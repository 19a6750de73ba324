// Permutations of a finite alphabet {0, ..., s-1}.
//
// Products follow function composition: (p * q)(x) == p(q(x)), so the right
// hand factor acts first. This is the convention under which the k*l + j-th
// column of a composed substitution is the product theta_j * theta'_k.

#ifndef ELLIS_PERMUTATION_HPP_
#define ELLIS_PERMUTATION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace ellis {

  using letter_type = std::uint32_t;

  class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<letter_type> images)
        : _images(std::move(images)) {
      std::vector<bool> seen(_images.size(), false);
      for (auto x : _images) {
        if (x >= _images.size() || seen[x]) {
          throw ValidationError("image array is not a bijection");
        }
        seen[x] = true;
      }
    }

    static Permutation identity(std::size_t degree) {
      std::vector<letter_type> im(degree);
      std::iota(im.begin(), im.end(), letter_type(0));
      Permutation p;
      p._images = std::move(im);
      return p;
    }

    std::size_t degree() const noexcept {
      return _images.size();
    }

    letter_type operator()(letter_type x) const {
      return _images[x];
    }

    letter_type operator[](std::size_t x) const {
      return _images[x];
    }

    std::vector<letter_type> const& images() const noexcept {
      return _images;
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < _images.size(); ++i) {
        if (_images[i] != i) {
          return false;
        }
      }
      return true;
    }

    Permutation inverse() const {
      Permutation p;
      p._images.resize(_images.size());
      for (std::size_t i = 0; i < _images.size(); ++i) {
        p._images[_images[i]] = static_cast<letter_type>(i);
      }
      return p;
    }

    friend Permutation operator*(Permutation const& p, Permutation const& q) {
      if (p.degree() != q.degree()) {
        throw ValidationError("cannot multiply permutations of degree "
                              + std::to_string(p.degree()) + " and "
                              + std::to_string(q.degree()));
      }
      Permutation r;
      r._images.resize(q._images.size());
      for (std::size_t i = 0; i < q._images.size(); ++i) {
        r._images[i] = p._images[q._images[i]];
      }
      return r;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;
    friend auto operator<=>(Permutation const&, Permutation const&) = default;

    std::size_t hash() const noexcept {
      std::size_t h = _images.size();
      for (auto x : _images) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }

   private:
    std::vector<letter_type> _images;
  };

  struct PermutationHash {
    std::size_t operator()(Permutation const& p) const noexcept {
      return p.hash();
    }
  };

  // Least n >= 1 with p^n == id.
  inline std::size_t element_order(Permutation const& p) {
    std::vector<bool>  seen(p.degree(), false);
    std::size_t        order = 1;
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (seen[i]) {
        continue;
      }
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        ++len;
      }
      order = std::lcm(order, len);
    }
    return order;
  }

  inline Permutation pow(Permutation const& p, std::size_t n) {
    auto r = Permutation::identity(p.degree());
    for (std::size_t i = 0; i < n; ++i) {
      r = p * r;
    }
    return r;
  }

  inline bool is_even(Permutation const& p) {
    std::vector<bool> seen(p.degree(), false);
    std::size_t       transpositions = 0;
    for (std::size_t i = 0; i < p.degree(); ++i) {
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        ++len;
      }
      if (len > 0) {
        transpositions += len - 1;
      }
    }
    return transpositions % 2 == 0;
  }

  // Cycle notation using the given letter labels, e.g. "(a b)(c d)". The
  // identity is written "()".
  inline std::string to_cycle_string(Permutation const&              p,
                                     std::vector<std::string> const& labels) {
    std::string       out;
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (seen[i] || p[i] == i) {
        seen[i] = true;
        continue;
      }
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        if (!first) {
          out += ' ';
        }
        out += j < labels.size() ? labels[j] : std::to_string(j);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  inline std::string to_cycle_string(Permutation const& p) {
    return to_cycle_string(p, {});
  }

}  // namespace ellis

template <>
struct std::hash<ellis::Permutation> {
  std::size_t operator()(ellis::Permutation const& p) const noexcept {
    return p.hash();
  }
};

#endif  // ELLIS_PERMUTATION_HPP_
