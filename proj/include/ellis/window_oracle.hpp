// Brute-force dynamics on finite windows of the fixed points a.b of a
// simplified substitution.
//
// The map induced on the fibre by the shift power sigma^(nu l^k) is read off
// the two letters at positions nu l^k - 1 and nu l^k of each fixed point. No
// column permutation or other algebraic data enters the construction; the
// pipeline's semigroup is only consulted afterwards for comparison.

#ifndef ELLIS_WINDOW_ORACLE_HPP_
#define ELLIS_WINDOW_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "json.hpp"
#include "rees.hpp"
#include "structural.hpp"
#include "substitution.hpp"
#include "transformation.hpp"

namespace ellis {

  inline constexpr std::size_t default_oracle_level = 4;
  inline constexpr std::size_t max_oracle_level     = 6;

  // theta^level(a) theta^level(b) occupying positions [-l^level, l^level).
  // Letters are computed on demand by descending through the rule words.
  class FixedPointWindow {
   public:
    FixedPointWindow(Substitution const& sub, TwoWord pair, std::size_t level)
        : _sub(&sub), _pair(pair), _level(level), _half(1) {
      for (std::size_t k = 0; k < level; ++k) {
        if (_half > (std::int64_t(1) << 52) / std::int64_t(sub.length())) {
          throw ResourceError("window level " + std::to_string(level)
                              + " is too deep");
        }
        _half *= static_cast<std::int64_t>(sub.length());
      }
    }

    std::int64_t half_width() const noexcept {
      return _half;
    }
    std::size_t level() const noexcept {
      return _level;
    }
    TwoWord const& pair() const noexcept {
      return _pair;
    }

    letter_type at(std::int64_t pos) const {
      if (pos < -_half || pos >= _half) {
        throw ValidationError("position " + std::to_string(pos)
                              + " is outside the window");
      }
      letter_type  x = pos >= 0 ? _pair.second : _pair.first;
      std::int64_t q = pos >= 0 ? pos : _half + pos;
      std::int64_t const l = static_cast<std::int64_t>(_sub->length());
      std::vector<std::size_t> digits(_level);
      for (std::size_t k = 0; k < _level; ++k) {
        digits[_level - 1 - k] = static_cast<std::size_t>(q % l);
        q /= l;
      }
      for (auto d : digits) {
        x = _sub->rule(x)[d];
      }
      return x;
    }

    // The whole window; subject to the block size guard.
    word_type letters() const {
      check_block_size(_sub->length(), _level);
      word_type out;
      for (std::int64_t p = -_half; p < _half; ++p) {
        out.push_back(at(p));
      }
      return out;
    }

   private:
    Substitution const* _sub;
    TwoWord             _pair;
    std::size_t         _level;
    std::int64_t        _half;
  };

  // The letters at positions nu - 1 and nu of the fixed point pair.
  inline TwoWord shift_two_word(Substitution const& sub, TwoWord const& pair,
                                std::int64_t nu, std::size_t level) {
    if (!is_simplified(sub)) {
      throw ValidationError("window reads need a simplified substitution");
    }
    FixedPointWindow w(sub, pair, level);
    if (nu == 0 || nu >= w.half_width() || -nu >= w.half_width()) {
      throw ValidationError("shift " + std::to_string(nu)
                            + " is outside the window of level "
                            + std::to_string(level));
    }
    return {w.at(nu - 1), w.at(nu)};
  }

  struct OracleEntry {
    std::int64_t               nu;
    std::optional<std::size_t> stabilized_at;
    FiberSelfMap               map;  // at stabilization, else at the last level
  };

  struct OracleReport {
    TwoWordFiber             fiber;
    std::size_t              levels_used = 0;
    bool                     complete    = false;
    std::vector<OracleEntry> entries;
    std::vector<FiberSelfMap> closure;  // sorted; empty when incomplete
  };

  namespace detail {
    inline FiberSelfMap induced_map(Substitution const& sub,
                                    TwoWordFiber const& F, std::int64_t nu,
                                    std::size_t k) {
      std::int64_t shift = nu;
      for (std::size_t t = 0; t < k; ++t) {
        shift *= static_cast<std::int64_t>(sub.length());
      }
      std::vector<FiberSelfMap::point_type> im;
      for (auto const& w : F.words()) {
        auto const p = F.index_of(shift_two_word(sub, w, shift, k + 1));
        if (!p) {
          throw InternalError("shifted window shows a two-word that is not "
                              "allowed");
        }
        im.push_back(static_cast<FiberSelfMap::point_type>(*p));
      }
      return FiberSelfMap(std::move(im));
    }

    inline std::vector<OracleEntry> track(Substitution const& sub,
                                          TwoWordFiber const& F,
                                          std::size_t         levels) {
      std::int64_t const       l = static_cast<std::int64_t>(sub.length());
      std::vector<OracleEntry> out;
      for (std::int64_t nu = -(l - 1); nu < l; ++nu) {
        if (nu == 0) {
          continue;
        }
        std::vector<FiberSelfMap> seq;
        for (std::size_t k = 1; k <= levels; ++k) {
          seq.push_back(induced_map(sub, F, nu, k));
        }
        OracleEntry e{nu, std::nullopt, seq.back()};
        // equal at k and k + 1, and still equal one level later
        for (std::size_t k = 0; k + 2 < seq.size(); ++k) {
          if (seq[k] == seq[k + 1] && seq[k + 1] == seq[k + 2]) {
            e.stabilized_at = k + 1;
            e.map           = seq[k];
            break;
          }
        }
        out.push_back(std::move(e));
      }
      return out;
    }
  }  // namespace detail

  // Maps induced by sigma^(nu l^k) for 0 < |nu| < l, k = 1..max_level, and
  // the semigroup they generate. Without stabilization by max_level (and by
  // level 6 when max_level >= 3) the report is marked incomplete.
  inline OracleReport limit_maps(Substitution const& sub,
                                 std::size_t max_level = default_oracle_level) {
    if (!is_simplified(sub)) {
      throw ValidationError("the window oracle needs a simplified "
                            "substitution");
    }
    OracleReport r;
    r.fiber       = fixed_points(sub);
    r.levels_used = max_level;
    r.entries     = detail::track(sub, r.fiber, max_level);
    auto stable   = [&r] {
      return std::all_of(r.entries.begin(), r.entries.end(),
                         [](auto const& e) { return e.stabilized_at.has_value(); });
    };
    if (!stable() && max_level >= 3 && max_level < max_oracle_level) {
      r.levels_used = max_oracle_level;
      r.entries     = detail::track(sub, r.fiber, max_oracle_level);
    }
    r.complete = stable();
    if (r.complete) {
      std::vector<FiberSelfMap> gens;
      for (auto const& e : r.entries) {
        gens.push_back(e.map);
      }
      r.closure = semigroup_closure(gens).elements();
    }
    return r;
  }

  // The pipeline's side of the comparison: fibre maps together with the
  // multiplication table predicted by the Rees product.
  struct FiberModel {
    std::vector<FiberSelfMap>              maps;
    std::vector<std::vector<std::size_t>>  table;
    std::vector<std::string>               labels;
  };

  inline FiberModel fiber_model(SubstitutionSandwich const&     S,
                                TwoWordFiber const&             F,
                                std::vector<std::string> const& letters = {}) {
    FiberModel  m;
    auto const& M  = S.semigroup;
    auto const  el = M.elements();
    for (auto const& x : el) {
      m.maps.push_back(fiber_action(to_signed_pair(S, x), F));
      m.labels.push_back("(" + M.i_labels()[x.i] + ", "
                         + to_cycle_string(x.g, letters) + ", "
                         + M.lambda_labels()[x.lambda] + ")");
    }
    for (auto const& x : el) {
      std::vector<std::size_t> row;
      for (auto const& y : el) {
        row.push_back(M.index_of(multiply(x, y, M)));
      }
      m.table.push_back(std::move(row));
    }
    return m;
  }

  // The model built from the pipeline's R-set with g0 the first element.
  inline FiberModel pipeline_model(Substitution const& sub) {
    return fiber_model(substitution_sandwich(r_set(sub), 0,
                                             sub.alphabet().symbols()),
                       fixed_points(sub), sub.alphabet().symbols());
  }

  struct OracleVerdict {
    bool                     equivalent = false;
    std::vector<std::string> discrepancies;
    OracleReport             report;
  };

  namespace detail {
    inline std::string map_string(FiberSelfMap const& f, TwoWordFiber const& F,
                                  Alphabet const& al) {
      std::string out;
      for (std::size_t p = 0; p < f.degree(); ++p) {
        out += (p ? " " : "") + F.label(p, al) + "->" + F.label(f(p), al);
      }
      return out;
    }
  }  // namespace detail

  inline constexpr std::size_t max_listed_discrepancies = 20;

  inline OracleVerdict oracle_equivalence(Substitution const& sub,
                                          FiberModel const&   model,
                                          std::size_t max_level
                                          = default_oracle_level) {
    OracleVerdict v;
    v.report        = limit_maps(sub, max_level);
    auto const& F   = v.report.fiber;
    auto const& al  = sub.alphabet();
    std::size_t n_bad = 0;
    auto note = [&](std::string s) {
      if (n_bad++ < max_listed_discrepancies) {
        v.discrepancies.push_back(std::move(s));
      }
    };
    if (!v.report.complete) {
      for (auto const& e : v.report.entries) {
        if (!e.stabilized_at) {
          note("no stabilization for nu = " + std::to_string(e.nu)
               + " up to level " + std::to_string(v.report.levels_used));
        }
      }
      return v;
    }
    std::set<FiberSelfMap> const dyn(v.report.closure.begin(),
                                     v.report.closure.end());
    std::set<FiberSelfMap> const alg(model.maps.begin(), model.maps.end());
    if (alg.size() != model.maps.size()) {
      note("model has repeated maps");
    }
    for (std::size_t k = 0; k < model.maps.size(); ++k) {
      if (!dyn.count(model.maps[k])) {
        note("model element " + model.labels[k]
             + " is not a limit map: "
             + detail::map_string(model.maps[k], F, al));
      }
    }
    for (auto const& f : dyn) {
      if (!alg.count(f)) {
        note("limit map missing from the model: "
             + detail::map_string(f, F, al));
      }
    }
    for (std::size_t x = 0; x < model.maps.size(); ++x) {
      for (std::size_t y = 0; y < model.maps.size(); ++y) {
        auto const& predicted = model.maps[model.table[x][y]];
        auto const  actual    = model.maps[x] * model.maps[y];
        if (predicted != actual) {
          note("product " + model.labels[x] + " * " + model.labels[y]
               + ": table gives " + model.labels[model.table[x][y]]
               + ", composition gives "
               + detail::map_string(actual, F, al));
        }
      }
    }
    if (n_bad > max_listed_discrepancies) {
      v.discrepancies.push_back(
          std::to_string(n_bad - max_listed_discrepancies)
          + " further discrepancies not listed");
    }
    v.equivalent = n_bad == 0;
    return v;
  }

  inline OracleVerdict oracle_equivalence(Substitution const& sub,
                                          std::size_t max_level
                                          = default_oracle_level) {
    return oracle_equivalence(sub, pipeline_model(sub), max_level);
  }

  struct ProximalityClasses {
    Partition forward;   // same right letter
    Partition backward;  // same left letter
  };

  // Checks that the points merged by limit maps factoring through the right
  // (left) letter are exactly the pairs in a common forward (backward) class.
  inline ProximalityClasses proximality_classes(Substitution const& sub,
                                                OracleReport const& r) {
    if (!r.complete) {
      throw ValidationError("proximality needs a complete oracle report");
    }
    auto const&        F = r.fiber;
    ProximalityClasses out;
    std::vector<std::size_t> class_of;
    std::vector<letter_type> right, left;
    for (auto const& [a, b] : F.words()) {
      left.push_back(a);
      right.push_back(b);
    }
    out.forward  = detail::classes_by_key(right, class_of);
    out.backward = detail::classes_by_key(left, class_of);

    std::size_t const n = F.size();
    std::vector<bool> merged_fwd(n * n, false), merged_bwd(n * n, false);
    for (auto const& f : r.closure) {
      bool const through_right = detail::factors_through_right(f, F);
      bool through_left        = true;
      for (std::size_t p = 0; p < n && through_left; ++p) {
        for (std::size_t q = 0; q < n && through_left; ++q) {
          through_left = left[p] != left[q] || f(p) == f(q);
        }
      }
      if (through_right == through_left) {
        throw InternalError("limit map factors through neither or both "
                            "letters");
      }
      auto& merged = through_right ? merged_fwd : merged_bwd;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          if (f(p) == f(q)) {
            merged[p * n + q] = true;
          }
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (merged_fwd[p * n + q] != (right[p] == right[q])
            || merged_bwd[p * n + q] != (left[p] == left[q])) {
          throw InternalError("limit maps do not merge exactly the "
                              "asymptotic pairs");
        }
      }
    }
    auto nontrivial = [](Partition const& P) {
      return std::any_of(P.begin(), P.end(),
                         [](auto const& c) { return c.size() > 1; });
    };
    if (!nontrivial(out.forward) || !nontrivial(out.backward)) {
      throw InternalError("trivial proximality on the fibre");
    }
    (void) sub;
    return out;
  }

  inline nlohmann::json to_json(OracleVerdict const& v, Alphabet const& al) {
    auto const&    F = v.report.fiber;
    nlohmann::json j;
    j["levels_used"] = v.report.levels_used;
    j["complete"]    = v.report.complete;
    j["entries"]     = nlohmann::json::array();
    for (auto const& e : v.report.entries) {
      nlohmann::json m;
      for (std::size_t p = 0; p < F.size(); ++p) {
        m[F.label(p, al)] = F.label(e.map(p), al);
      }
      j["entries"].push_back(
          {{"nu", e.nu},
           {"stabilized_at", e.stabilized_at ? nlohmann::json(*e.stabilized_at)
                                             : nlohmann::json(nullptr)},
           {"map", m}});
    }
    j["closure_size"]  = v.report.closure.size();
    j["equivalent"]    = v.equivalent;
    j["discrepancies"] = v.discrepancies;
    return j;
  }

}  // namespace ellis

#endif  // ELLIS_WINDOW_ORACLE_HPP_
