// Golden comparison of analysis results against a JSON expectations file.
//
// Expectations format:
//
//   {"cases": [{"name": "...", "anchor": "...", "rules": "a -> ...",
//               "expect": {"height": 1, ...}}, ...]}
//
// Every key under "expect" must appear among golden_facts() of the analysis
// with an equal value.

#ifndef ELLIS_GOLDEN_HPP_
#define ELLIS_GOLDEN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "report.hpp"
#include "structural.hpp"
#include "window_oracle.hpp"

namespace ellis {

  namespace detail {
    inline std::vector<std::size_t> class_sizes(Partition const& p) {
      std::vector<std::size_t> out;
      for (auto const& c : p) {
        out.push_back(c.size());
      }
      std::sort(out.begin(), out.end());
      return out;
    }
  }  // namespace detail

  // The comparable facts of an analysis, flat and keyed by name.
  inline nlohmann::json golden_facts(StructuralReport const&             r,
                                     std::optional<OracleVerdict> const& oracle
                                     = std::nullopt) {
    auto const&    gs      = r.fiber.green;
    auto const&    letters = r.original.alphabet().symbols();
    nlohmann::json f;
    f["s"]                         = r.original.size();
    f["length"]                    = r.original.length();
    f["simplification_exponent"]   = r.exponent;
    f["fiber_size"]                = r.fiber.fiber.size();
    f["r_set_size"]                = r.r_set.size();
    f["structure_group_order"]     = r.structure_group.order();
    f["structure_group_name"]      = r.structure_fingerprint.name;
    f["structure_group_cyclic"]    = r.structure_fingerprint.cyclic;
    f["little_group_order"]        = r.heights.little.order();
    f["little_group_normal"]       = r.little_is_normal;
    f["normal_completion_order"]   = r.heights.normal_completion.order();
    f["normal_completion_abelian"] = r.normal_fingerprint.abelian;
    f["normal_completion_exponent"] = r.normal_fingerprint.exponent;
    f["normal_completion_name"]    = r.normal_fingerprint.name;
    f["height"]                    = r.heights.h;
    f["classical_height"]          = r.heights.h_cl;
    f["order_h_witness_in_r_set"]  = r.witness_in_r_set;
    f["semigroup_size"]            = r.fiber.semigroup.size();
    f["idempotents"]               = gs.idempotents.size();
    f["l_class_sizes"]             = detail::class_sizes(gs.l_classes);
    f["r_class_sizes"]             = detail::class_sizes(gs.r_classes);
    f["h_class_sizes"]             = detail::class_sizes(gs.h_classes);
    f["degree_counts"]             = r.degrees.counts;
    f["aut_fib_order"]             = r.automorphisms.aut_fib.order();
    f["aut_fib_cyclic"]            = r.automorphisms.fingerprint.cyclic;
    f["unresolved_extension"]      = r.unresolved_extension;
    f["rees_round_trip"]           = r.structural.round_trip_verified;
    auto const& M = r.structural.sandwich.semigroup;
    f["sandwich"] = nlohmann::json::array();
    for (std::size_t l = 0; l < M.lambda_size(); ++l) {
      auto row = nlohmann::json::array();
      for (std::size_t i = 0; i < M.i_size(); ++i) {
        row.push_back(to_cycle_string(M.a(l, i), letters));
      }
      f["sandwich"].push_back(row);
    }
    f["kernel_string"] = r.strings.kernel;
    if (oracle) {
      f["oracle_equivalent"] = oracle->equivalent;
      f["oracle_maps"]       = oracle->report.closure.size();
    }
    return f;
  }

  struct GoldenCase {
    std::string              name;
    std::string              anchor;
    bool                     passed = false;
    std::vector<std::string> diffs;
  };

  struct GoldenResult {
    std::vector<GoldenCase> cases;

    std::size_t passed() const {
      std::size_t n = 0;
      for (auto const& c : cases) {
        n += c.passed ? 1 : 0;
      }
      return n;
    }
    bool all_passed() const {
      return passed() == cases.size();
    }
  };

  inline GoldenResult run_golden(nlohmann::json const& expectations) {
    if (!expectations.contains("cases") || !expectations["cases"].is_array()) {
      throw ParseError("golden expectations need a \"cases\" array");
    }
    GoldenResult out;
    for (auto const& c : expectations["cases"]) {
      GoldenCase g;
      g.name   = c.value("name", "unnamed");
      g.anchor = c.value("anchor", "");
      try {
        auto const sub = parse_substitution(c.at("rules").get<std::string>());
        auto const r   = analyze(sub);
        auto const v   = oracle_equivalence(r.simplified);
        auto const f   = golden_facts(r, v);
        for (auto const& [key, want] : c.at("expect").items()) {
          if (!f.contains(key)) {
            g.diffs.push_back(key + ": no such fact");
          } else if (f[key] != want) {
            g.diffs.push_back(key + ": expected " + want.dump() + ", got "
                              + f[key].dump());
          }
        }
      } catch (std::exception const& e) {
        g.diffs.push_back(std::string("analysis failed: ") + e.what());
      }
      g.passed = g.diffs.empty();
      out.cases.push_back(std::move(g));
    }
    return out;
  }

  inline std::string to_text(GoldenResult const& r) {
    std::string out;
    for (auto const& c : r.cases) {
      out += (c.passed ? "PASS " : "FAIL ") + c.name;
      if (!c.anchor.empty()) {
        out += " [" + c.anchor + "]";
      }
      out += "\n";
      for (auto const& d : c.diffs) {
        out += "    " + d + "\n";
      }
    }
    out += std::to_string(r.passed()) + "/" + std::to_string(r.cases.size())
           + " passed\n";
    return out;
  }

}  // namespace ellis

#endif  // ELLIS_GOLDEN_HPP_
