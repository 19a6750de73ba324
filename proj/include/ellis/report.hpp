// JSON ("ellis-report/1") and plain text renderings of a StructuralReport.

#ifndef ELLIS_REPORT_HPP_
#define ELLIS_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "structural.hpp"
#include "window_oracle.hpp"

namespace ellis {

  inline constexpr char const* report_schema = "ellis-report/1";

  namespace detail {
    inline nlohmann::json perm_json(Permutation const&              p,
                                    std::vector<std::string> const& letters) {
      return {{"cycles", to_cycle_string(p, letters)}, {"images", p.images()}};
    }

    inline nlohmann::json fingerprint_json(GroupFingerprint const& f) {
      nlohmann::json orders = nlohmann::json::object();
      for (auto [k, n] : f.element_orders) {
        orders[std::to_string(k)] = n;
      }
      return {{"order", f.order},
              {"abelian", f.abelian},
              {"cyclic", f.cyclic},
              {"exponent", f.exponent},
              {"element_orders", orders},
              {"name", f.name}};
    }

    inline nlohmann::json group_json(PermGroup const&                G,
                                     GroupFingerprint const&         f,
                                     std::vector<std::string> const& letters) {
      nlohmann::json gens = nlohmann::json::array();
      for (auto const& g : reduced_generators(G)) {
        gens.push_back(to_cycle_string(g, letters));
      }
      return {{"order", G.order()},
              {"generators", gens},
              {"fingerprint", fingerprint_json(f)}};
    }
  }  // namespace detail

  inline nlohmann::json
  to_json(StructuralReport const&             r,
          std::optional<OracleVerdict> const& oracle = std::nullopt) {
    auto const&    letters = r.original.alphabet().symbols();
    auto const&    F       = r.fiber.fiber;
    auto const&    M       = r.structural.sandwich.semigroup;
    nlohmann::json j;
    j["schema"] = report_schema;

    j["substitution"] = {
        {"input", to_json(r.original)},
        {"s", r.original.size()},
        {"length", r.original.length()},
        {"simplification_exponent", r.exponent},
        {"analyzed_length", r.simplified.length()},
        {"aperiodicity",
         {{"verdict", r.aperiodicity.to_string()},
          {"bound", r.aperiodicity.bound}}}};

    nlohmann::json words = nlohmann::json::array();
    for (std::size_t p = 0; p < F.size(); ++p) {
      words.push_back(F.label(p, r.original.alphabet()));
    }
    j["fiber"] = {{"size", F.size()}, {"two_words", words},
                  {"minimal_rank", r.rank()}};

    j["r_set"] = nlohmann::json::array();
    for (auto const& g : r.r_set) {
      j["r_set"].push_back(detail::perm_json(g, letters));
    }
    auto const& sw = r.structural.sandwich;
    j["g0"]        = {{"index", sw.g0_index},
                      {"element", detail::perm_json(sw.g0(), letters)}};

    j["structure_group"] = detail::group_json(
        r.structure_group, r.structure_fingerprint, letters);
    j["structure_group"]["transitive"] = is_transitive(r.structure_group);
    j["little_group"] = detail::group_json(r.heights.little,
                                           r.little_fingerprint, letters);
    j["little_group"]["normal"] = r.little_is_normal;
    j["normal_completion"]      = detail::group_json(
        r.heights.normal_completion, r.normal_fingerprint, letters);
    j["height"]           = r.heights.h;
    j["classical_height"] = r.heights.h_cl;
    j["order_h_witness"]
        = r.order_h_witness
              ? nlohmann::json{{"element",
                                detail::perm_json(*r.order_h_witness, letters)},
                               {"in_r_set", r.witness_in_r_set}}
              : nlohmann::json(nullptr);

    j["sandwich_matrix"] = to_json(M, letters);
    j["sandwich_matrix"]["normalized_at"]
        = {{"i", sw.g0_index}, {"lambda", "+"}};

    auto const& gs = r.fiber.green;
    j["green"]     = {
        {"size", r.fiber.semigroup.size()},
        {"idempotents", gs.idempotents.size()},
        {"kernel_size", gs.kernel.size()},
        {"completely_simple", is_completely_simple(r.fiber.semigroup, gs)},
        {"l_classes", partition_summary(gs.l_classes)},
        {"r_classes", partition_summary(gs.r_classes)},
        {"h_classes", partition_summary(gs.h_classes)},
        {"d_classes", partition_summary(gs.d_classes)},
        {"rees_round_trip", r.structural.round_trip_verified},
        {"idempotent_generated_size", r.idempotent_generated.size()}};

    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t k = 0; k < r.degrees.elements.size(); ++k) {
      auto const& x = r.degrees.elements[k];
      entries.push_back({{"i", M.i_labels()[x.i]},
                         {"g", to_cycle_string(x.g, letters)},
                         {"sign", M.lambda_labels()[x.lambda]},
                         {"degree", r.degrees.degrees[k]}});
    }
    j["degree_table"] = {{"modulus", r.degrees.modulus},
                         {"counts", r.degrees.counts},
                         {"entries", entries}};

    nlohmann::json aut = nlohmann::json::array();
    for (auto const& c : r.automorphisms.aut_fib.elements()) {
      aut.push_back(to_cycle_string(c, letters));
    }
    j["aut_fib"] = {{"order", r.automorphisms.aut_fib.order()},
                    {"elements", aut},
                    {"fingerprint",
                     detail::fingerprint_json(r.automorphisms.fingerprint)}};
    j["virtual_aut"]  = r.automorphisms.virtual_aut;
    j["semi_regular"] = r.automorphisms.semi_regular;

    auto const& st = r.strings;
    j["global_strings"] = {{"efib", st.efib},
                           {"kernel", st.kernel},
                           {"ellis", st.ellis}};
    if (st.grading) {
      j["global_strings"]["grading"] = *st.grading;
    }
    if (st.semidirect) {
      j["global_strings"]["semidirect"] = *st.semidirect;
    }
    if (st.extension) {
      j["global_strings"]["extension"] = *st.extension;
    }
    j["unresolved_extension"] = r.unresolved_extension;
    if (oracle) {
      j["oracle"] = to_json(*oracle, r.simplified.alphabet());
    }
    return j;
  }

  inline std::string to_text(StructuralReport const&             r,
                             std::optional<OracleVerdict> const& oracle
                             = std::nullopt) {
    auto const&        letters = r.original.alphabet().symbols();
    auto const&        M       = r.structural.sandwich.semigroup;
    auto const&        gs      = r.fiber.green;
    std::ostringstream out;
    auto               sizes = [](Partition const& p) {
      std::string s;
      for (std::size_t k = 0; k < p.size(); ++k) {
        s += (k ? "," : "") + std::to_string(p[k].size());
      }
      return s;
    };
    auto group_line = [&](PermGroup const& G, GroupFingerprint const& f) {
      return "order " + std::to_string(G.order())
             + (f.name.empty() ? "" : " (" + f.name + ")");
    };

    out << "substitution (s = " << r.original.size()
        << ", length = " << r.original.length() << ")\n";
    out << to_text(r.original);
    out << "analyzed power: " << r.exponent << " (length "
        << r.simplified.length() << ")\n";
    out << "aperiodicity: " << r.aperiodicity.to_string() << " (bound "
        << r.aperiodicity.bound << ")\n";
    out << "fiber size: " << r.fiber.fiber.size() << "\n";
    out << "minimal rank: " << r.rank() << "\n";
    out << "r_set:";
    for (auto const& g : r.r_set) {
      out << " " << to_cycle_string(g, letters);
    }
    out << "\n";
    out << "g0: " << to_cycle_string(r.structural.sandwich.g0(), letters)
        << "\n";
    out << "structure_group: "
        << group_line(r.structure_group, r.structure_fingerprint) << "\n";
    out << "little_group: "
        << group_line(r.heights.little, r.little_fingerprint)
        << (r.little_is_normal ? ", normal" : ", not normal") << "\n";
    out << "normal_completion: "
        << group_line(r.heights.normal_completion, r.normal_fingerprint)
        << "\n";
    out << "height: " << r.heights.h << "\n";
    out << "classical_height: " << r.heights.h_cl << "\n";
    if (r.order_h_witness) {
      out << "order_h_witness: "
          << to_cycle_string(*r.order_h_witness, letters)
          << (r.witness_in_r_set ? " (in r_set)" : "") << "\n";
    }
    out << "sandwich_matrix:\n";
    for (std::size_t l = 0; l < M.lambda_size(); ++l) {
      out << "  " << M.lambda_labels()[l] << ":";
      for (std::size_t i = 0; i < M.i_size(); ++i) {
        out << " " << to_cycle_string(M.a(l, i), letters);
      }
      out << "\n";
    }
    out << "green: size " << r.fiber.semigroup.size() << ", idempotents "
        << gs.idempotents.size() << ", kernel " << gs.kernel.size()
        << ", L-classes " << gs.l_classes.size() << " [" << sizes(gs.l_classes)
        << "], R-classes " << gs.r_classes.size() << " ["
        << sizes(gs.r_classes) << "], H-classes " << gs.h_classes.size()
        << "\n";
    out << "rees round trip: "
        << (r.structural.round_trip_verified ? "verified" : "failed") << "\n";
    out << "idempotent generated: " << r.idempotent_generated.size()
        << " elements\n";
    out << "degree_table: mod " << r.degrees.modulus << ", counts";
    for (auto c : r.degrees.counts) {
      out << " " << c;
    }
    out << "\n";
    out << "aut_fib: order " << r.automorphisms.aut_fib.order();
    for (auto const& c : r.automorphisms.aut_fib.elements()) {
      out << " " << to_cycle_string(c, letters);
    }
    out << "\n";
    out << "virtual_aut: " << r.automorphisms.virtual_aut << "\n";
    out << "semi_regular: " << (r.automorphisms.semi_regular ? "yes" : "no")
        << "\n";
    out << "global_strings:\n";
    out << "  " << r.strings.efib << "\n";
    out << "  " << r.strings.kernel << "\n";
    out << "  " << r.strings.ellis << "\n";
    for (auto const& s :
         {r.strings.grading, r.strings.semidirect, r.strings.extension}) {
      if (s) {
        out << "  " << *s << "\n";
      }
    }
    out << "unresolved_extension: " << (r.unresolved_extension ? "yes" : "no")
        << "\n";
    if (oracle) {
      out << "oracle: " << (oracle->equivalent ? "equivalent" : "NOT equivalent")
          << " (levels " << oracle->report.levels_used << ", "
          << oracle->report.closure.size() << " maps)\n";
      for (auto const& d : oracle->discrepancies) {
        out << "  " << d << "\n";
      }
    }
    return out.str();
  }

}  // namespace ellis

#endif  // ELLIS_REPORT_HPP_
