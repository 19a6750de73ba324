// Factor complexity p(n) of a primitive substitution subshift and the
// Morse-Hedlund periodicity scan built on it.
//
// Every factor of length n <= l^k of a sequence in the subshift lies inside
// theta^k(a) theta^k(b) for an allowed two-word ab, and each such factor is
// allowed. Distinct factors of every length up to a bound are counted at once
// with a suffix array and its LCP array over these words, separated by unique
// sentinels.

#ifndef ELLIS_COMPLEXITY_HPP_
#define ELLIS_COMPLEXITY_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "substitution.hpp"

namespace ellis {

  namespace detail {
    // Prefix doubling, O(N log^2 N).
    inline std::vector<std::size_t>
    suffix_array(std::vector<std::uint64_t> const& text) {
      std::size_t const        n = text.size();
      std::vector<std::size_t> sa(n), rank(n), tmp(n);
      std::iota(sa.begin(), sa.end(), std::size_t(0));
      for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::size_t>(text[i]);
      }
      for (std::size_t k = 1;; k <<= 1) {
        auto key = [&](std::size_t i) {
          return std::pair<std::size_t, std::size_t>(
              rank[i], i + k < n ? rank[i + k] + 1 : 0);
        };
        std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) {
          return key(a) < key(b);
        });
        tmp[sa[0]] = 0;
        for (std::size_t i = 1; i < n; ++i) {
          tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
        }
        rank.swap(tmp);
        if (rank[sa[n - 1]] == n - 1) {
          break;
        }
      }
      return sa;
    }

    // Kasai et al.; lcp[i] is the LCP of suffixes sa[i-1] and sa[i].
    inline std::vector<std::size_t>
    lcp_array(std::vector<std::uint64_t> const& text,
              std::vector<std::size_t> const&   sa) {
      std::size_t const        n = text.size();
      std::vector<std::size_t> rank(n), lcp(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        rank[sa[i]] = i;
      }
      std::size_t h = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] > 0) {
          std::size_t j = sa[rank[i] - 1];
          while (i + h < n && j + h < n && text[i + h] == text[j + h]) {
            ++h;
          }
          lcp[rank[i]] = h;
          if (h > 0) {
            --h;
          }
        } else {
          h = 0;
        }
      }
      return lcp;
    }
  }  // namespace detail

  // p(1), ..., p(max_n) as a vector indexed from 1 (entry 0 is unused).
  inline std::vector<std::size_t> complexity_profile(Substitution const& sub,
                                                     std::size_t max_n) {
    if (max_n == 0) {
      throw ValidationError("complexity length must be at least 1");
    }
    auto const  fiber = allowed_two_words(sub);
    std::size_t level = 0;
    for (std::size_t span = 1; span < max_n; span *= sub.length()) {
      ++level;
    }
    check_block_size(sub.length(), level);
    std::size_t const block = [&] {
      std::size_t b = 1;
      for (std::size_t k = 0; k < level; ++k) {
        b *= sub.length();
      }
      return b;
    }();
    if (fiber.size() * (2 * block + 1) > 4 * max_block_letters) {
      throw ResourceError("complexity scan up to n = " + std::to_string(max_n)
                          + " needs too many letters");
    }
    std::vector<word_type> blocks(sub.size());
    for (letter_type a = 0; a < sub.size(); ++a) {
      blocks[a] = iterate(sub, a, level);
    }
    // letters keep their index; sentinels are s, s+1, ... and all distinct
    std::vector<std::uint64_t> text;
    std::vector<std::size_t>   avail;  // distance to the next sentinel
    std::uint64_t              sentinel = sub.size();
    for (auto const& [a, b] : fiber.words()) {
      std::size_t const start = text.size();
      text.insert(text.end(), blocks[a].begin(), blocks[a].end());
      text.insert(text.end(), blocks[b].begin(), blocks[b].end());
      std::size_t const stop = text.size();
      for (std::size_t i = start; i < stop; ++i) {
        avail.push_back(stop - i);
      }
      text.push_back(sentinel++);
      avail.push_back(0);
    }
    auto const sa  = detail::suffix_array(text);
    auto const lcp = detail::lcp_array(text, sa);
    // suffix sa[i] introduces a new factor of each length in (lcp[i], avail]
    std::vector<std::ptrdiff_t> diff(max_n + 2, 0);
    for (std::size_t i = 0; i < sa.size(); ++i) {
      std::size_t const lo = (i == 0 ? 0 : lcp[i]) + 1;
      std::size_t const hi = std::min(avail[sa[i]], max_n);
      if (lo <= hi) {
        diff[lo] += 1;
        diff[hi + 1] -= 1;
      }
    }
    std::vector<std::size_t> p(max_n + 1, 0);
    std::ptrdiff_t           run = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
      run += diff[n];
      p[n] = static_cast<std::size_t>(run);
    }
    return p;
  }

  // Number of allowed factors of length n.
  inline std::size_t word_complexity(Substitution const& sub, std::size_t n) {
    if (!is_primitive(sub)) {
      throw ValidationError("word complexity needs a primitive substitution");
    }
    return complexity_profile(sub, n)[n];
  }

  struct AperiodicityVerdict {
    enum class Kind { aperiodic, periodic, inconclusive };
    Kind        kind;
    std::size_t bound;          // largest n scanned
    std::size_t witness = 0;    // first n with p(n) <= n when periodic

    std::string to_string() const {
      switch (kind) {
        case Kind::aperiodic:
          return "Aperiodic";
        case Kind::periodic:
          return "Periodic(" + std::to_string(witness) + ")";
        default:
          return "Inconclusive";
      }
    }
  };

  inline std::size_t default_aperiodicity_bound(Substitution const& sub) {
    return sub.size() * sub.size() * sub.length() * sub.length();
  }

  // Periodic(n) is sound: p(n) <= n forces an eventually periodic subshift.
  // Aperiodic means p(n) > n for every n up to a bound of at least
  // s^2 * l^2; with a smaller bound the answer is Inconclusive.
  inline AperiodicityVerdict is_aperiodic(Substitution const& sub,
                                          std::size_t         bound) {
    if (!is_primitive(sub)) {
      throw ValidationError("aperiodicity scan needs a primitive substitution");
    }
    if (bound == 0) {
      throw ValidationError("aperiodicity bound must be positive");
    }
    auto const p = complexity_profile(sub, bound);
    for (std::size_t n = 1; n <= bound; ++n) {
      if (p[n] <= n) {
        return {AperiodicityVerdict::Kind::periodic, bound, n};
      }
    }
    if (bound >= default_aperiodicity_bound(sub)) {
      return {AperiodicityVerdict::Kind::aperiodic, bound};
    }
    return {AperiodicityVerdict::Kind::inconclusive, bound};
  }

  inline AperiodicityVerdict is_aperiodic(Substitution const& sub) {
    return is_aperiodic(sub, default_aperiodicity_bound(sub));
  }

}  // namespace ellis

#endif  // ELLIS_COMPLEXITY_HPP_
