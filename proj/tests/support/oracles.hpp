// Brute-force reference computations used by the tests. Nothing here calls
// into the library except for the plain data types.

#ifndef ELLIS_TESTS_ORACLES_HPP_
#define ELLIS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ellis/substitution.hpp"

namespace oracle {

  using Vec   = std::vector<int>;
  using Rules = std::vector<Vec>;

  inline Rules rules_of(ellis::Substitution const& sub) {
    Rules out;
    for (auto const& r : sub.rules()) {
      out.emplace_back(r.begin(), r.end());
    }
    return out;
  }

  // f after g
  inline Vec compose(Vec const& f, Vec const& g) {
    Vec r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      r[i] = f[g[i]];
    }
    return r;
  }

  inline Vec inverse(Vec const& p) {
    Vec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      r[p[i]] = static_cast<int>(i);
    }
    return r;
  }

  inline Vec identity(std::size_t n) {
    Vec r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
  }

  inline Vec images(ellis::Permutation const& p) {
    return Vec(p.images().begin(), p.images().end());
  }

  // Column j as a map letter -> letter.
  inline Vec column(Rules const& r, std::size_t j) {
    Vec c;
    for (auto const& w : r) {
      c.push_back(w[j]);
    }
    return c;
  }

  inline Vec expand(Rules const& r, Vec const& w) {
    Vec out;
    for (int x : w) {
      out.insert(out.end(), r[x].begin(), r[x].end());
    }
    return out;
  }

  inline Vec iterate(Rules const& r, int a, std::size_t k) {
    Vec w{a};
    for (std::size_t t = 0; t < k; ++t) {
      w = expand(r, w);
    }
    return w;
  }

  // A word of at least n letters from the language: a long iterate of 0.
  inline Vec long_word(Rules const& r, std::size_t n) {
    Vec w{0};
    while (w.size() < n) {
      w = expand(r, w);
    }
    return w;
  }

  // Number of distinct factors of length n of a long legal word. For a
  // primitive substitution every factor of length n occurs in a block of
  // bounded length, so a long enough word sees them all.
  inline std::size_t factor_count(Rules const& r, std::size_t n) {
    std::size_t const len = std::max<std::size_t>(20000, 200 * n * r.size());
    auto const        w   = long_word(r, len);
    std::string       text(w.begin(), w.end());
    std::unordered_set<std::string_view> seen;
    std::string_view const               all(text);
    for (std::size_t i = 0; i + n <= all.size(); ++i) {
      seen.insert(all.substr(i, n));
    }
    return seen.size();
  }

  inline std::set<std::pair<int, int>> two_words(Rules const& r) {
    std::set<std::pair<int, int>> out;
    auto const w = long_word(r, 20000);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      out.emplace(w[i], w[i + 1]);
    }
    return out;
  }

  inline bool primitive(Rules const& r) {
    std::size_t const s = r.size();
    for (std::size_t k = 1; k <= s * s; ++k) {
      bool all = true;
      for (std::size_t a = 0; a < s && all; ++a) {
        auto const        w = iterate(r, static_cast<int>(a), k);
        std::set<int> const hit(w.begin(), w.end());
        all = hit.size() == s;
      }
      if (all) {
        return true;
      }
      if (std::pow(static_cast<double>(r[0].size()), static_cast<double>(k + 1))
          > 1e6) {
        break;
      }
    }
    return false;
  }

  // Aperiodic iff the factor count exceeds n for some n (Morse-Hedlund).
  inline bool aperiodic(Rules const& r, std::size_t up_to) {
    for (std::size_t n = 1; n <= up_to; ++n) {
      if (factor_count(r, n) <= n) {
        return false;
      }
    }
    return true;
  }

  // Group closure by breadth-first multiplication.
  inline std::set<Vec> group(std::vector<Vec> const& gens, std::size_t n) {
    std::set<Vec>    seen{identity(n)};
    std::vector<Vec> todo{identity(n)};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto const& g : gens) {
        auto y = compose(g, x);
        if (seen.insert(y).second) {
          todo.push_back(y);
        }
      }
    }
    return seen;
  }

  inline std::set<Vec> normal_closure(std::set<Vec> const& H,
                                      std::set<Vec> const& G, std::size_t n) {
    std::vector<Vec> gens;
    for (auto const& g : G) {
      for (auto const& h : H) {
        gens.push_back(compose(compose(g, h), inverse(g)));
      }
    }
    return group(gens, n);
  }

  // theta_j theta_{j-1}^{-1} for j = 1..l-1, deduplicated.
  inline std::set<Vec> r_set(Rules const& r) {
    std::set<Vec> out;
    for (std::size_t j = 1; j < r[0].size(); ++j) {
      out.insert(compose(column(r, j), inverse(column(r, j - 1))));
    }
    return out;
  }

  inline std::size_t order(Vec const& p) {
    auto        x = p;
    std::size_t k = 1;
    while (x != identity(p.size())) {
      x = compose(p, x);
      ++k;
    }
    return k;
  }

  inline std::set<Vec> centralizer(std::set<Vec> const& G, std::size_t n) {
    std::set<Vec> out;
    Vec           c = identity(n);
    do {
      bool ok = true;
      for (auto const& g : G) {
        if (compose(c, g) != compose(g, c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        out.insert(c);
      }
    } while (std::next_permutation(c.begin(), c.end()));
    return out;
  }

  // Largest n coprime to l dividing every return time of letter 0 in a long
  // prefix of the one-sided fixed point starting with 0.
  inline std::size_t classical_height(Rules const& r) {
    std::size_t const l = r[0].size();
    auto const        w = long_word(r, 50000);
    std::size_t       g = 0;
    std::size_t       last = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == w[0]) {
        g    = std::gcd(g, i - last);
        last = i;
      }
    }
    while (std::gcd(g, l) != 1) {
      g /= std::gcd(g, l);
    }
    return g;
  }

  // Semigroup generated by maps, closure under composition on both sides.
  inline std::set<Vec> semigroup(std::vector<Vec> const& gens) {
    std::set<Vec>    seen(gens.begin(), gens.end());
    std::vector<Vec> todo(gens.begin(), gens.end());
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto const& g : gens) {
        for (auto y : {compose(x, g), compose(g, x)}) {
          if (seen.insert(y).second) {
            todo.push_back(y);
          }
        }
      }
    }
    return seen;
  }

  // S^1 x and x S^1 as sets; L and R classes by equality of these.
  inline std::map<Vec, std::set<Vec>> left_ideals(std::set<Vec> const& S) {
    std::map<Vec, std::set<Vec>> out;
    for (auto const& x : S) {
      auto& I = out[x];
      I.insert(x);
      for (auto const& y : S) {
        I.insert(compose(y, x));
      }
    }
    return out;
  }

  inline std::map<Vec, std::set<Vec>> right_ideals(std::set<Vec> const& S) {
    std::map<Vec, std::set<Vec>> out;
    for (auto const& x : S) {
      auto& I = out[x];
      I.insert(x);
      for (auto const& y : S) {
        I.insert(compose(x, y));
      }
    }
    return out;
  }

  // Sizes of the classes of "same ideal", sorted.
  inline std::vector<std::size_t>
  class_sizes(std::map<Vec, std::set<Vec>> const& ideals) {
    std::map<std::set<Vec>, std::size_t> count;
    for (auto const& [x, I] : ideals) {
      ++count[I];
    }
    std::vector<std::size_t> out;
    for (auto const& [I, n] : count) {
      out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline std::size_t idempotent_count(std::set<Vec> const& S) {
    return static_cast<std::size_t>(std::count_if(
        S.begin(), S.end(), [](auto const& x) { return compose(x, x) == x; }));
  }

  // Bi-infinite fixed point a.b read on [-l^k, l^k) as an explicit word:
  // position p sits at index p + l^k.
  inline Vec window(Rules const& r, int a, int b, std::size_t k) {
    auto left  = iterate(r, a, k);
    auto right = iterate(r, b, k);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }

  // The maps on the fibre induced by the shifts by nu l^k, 0 < |nu| < l,
  // read off at level k + 1 windows. Points are indices into the sorted list
  // of two-words; -1 marks a pair that is not in the list.
  inline std::map<long, Vec> shift_maps(Rules const&                            r,
                                        std::vector<std::pair<int, int>> const& words,
                                        std::size_t k) {
    long const l     = static_cast<long>(r[0].size());
    long       scale = 1;
    for (std::size_t t = 0; t < k; ++t) {
      scale *= l;
    }
    std::map<long, Vec> out;
    for (auto [a, b] : words) {
      auto const w    = window(r, a, b, k + 1);
      long const half = static_cast<long>(w.size() / 2);
      for (long nu = -(l - 1); nu < l; ++nu) {
        if (nu == 0) {
          continue;
        }
        long const                shift = nu * scale;
        std::pair<int, int> const p{w[static_cast<std::size_t>(half + shift - 1)],
                                    w[static_cast<std::size_t>(half + shift)]};
        auto it = std::find(words.begin(), words.end(), p);
        out[nu].push_back(it == words.end()
                              ? -1
                              : static_cast<int>(it - words.begin()));
      }
    }
    return out;
  }

}  // namespace oracle

#endif  // ELLIS_TESTS_ORACLES_HPP_
