// ellis: structural semigroups of bijective constant-length substitutions.
//
//   ellis analyze <file|-> [--verify] [--format text|json] [--g0 <index>]
//                          [--aperiodicity-bound N] [--oracle-level K]
//   ellis golden [--expectations <file>] [--format text|json]
//   ellis --version
//
// Exit codes: 0 success, 1 rejected input, 2 internal assertion failure,
// 3 resource guard. Every failure writes {"error": {...}} to stderr.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ellis/ellis.hpp"
#include "ellis/golden_data.hpp"
#include "json.hpp"

namespace {

  enum ExitCode : int { ok = 0, rejected = 1, internal = 2, resource = 3 };

  int report_error(std::string const& kind, std::string const& message,
                   nlohmann::json details = nullptr,
                   std::optional<std::pair<std::size_t, std::size_t>> where
                   = std::nullopt) {
    nlohmann::json e = {{"kind", kind}, {"message", message}};
    if (!details.is_null()) {
      e["details"] = std::move(details);
    }
    if (where) {
      e["line"]   = where->first;
      e["column"] = where->second;
    }
    std::cerr << nlohmann::json{{"error", e}}.dump() << "\n";
    if (kind == "internal" || kind == "oracle" || kind == "golden") {
      return internal;
    }
    if (kind == "resource" || kind == "stabilization") {
      return resource;
    }
    return rejected;
  }

  std::string slurp(std::string const& path) {
    if (path == "-") {
      return {std::istreambuf_iterator<char>(std::cin), {}};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::ios_base::failure("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  struct AnalyzeArgs {
    std::string                file;
    bool                       verify = false;
    std::string                format = "text";
    std::optional<std::size_t> g0;
    std::optional<std::size_t> bound;
    std::size_t                oracle_level = ellis::default_oracle_level;
  };

  int run_analyze(AnalyzeArgs const& a) {
    auto const sub = ellis::read_substitution(slurp(a.file));
    ellis::AnalysisOptions opt;
    opt.g0_index           = a.g0;
    opt.aperiodicity_bound = a.bound;
    auto const r           = ellis::analyze(sub, opt);

    std::optional<ellis::OracleVerdict> verdict;
    if (a.verify) {
      auto const model = ellis::fiber_model(r.structural.sandwich,
                                            ellis::fixed_points(r.simplified),
                                            r.simplified.alphabet().symbols());
      verdict = ellis::oracle_equivalence(r.simplified, model, a.oracle_level);
    }
    if (a.format == "json") {
      std::cout << ellis::to_json(r, verdict).dump(2) << "\n";
    } else {
      std::cout << ellis::to_text(r, verdict);
    }
    if (verdict && !verdict->report.complete) {
      return report_error("stabilization",
                          "limit maps did not stabilize by level "
                              + std::to_string(verdict->report.levels_used),
                          {{"discrepancies", verdict->discrepancies}});
    }
    if (verdict && !verdict->equivalent) {
      return report_error("oracle",
                          "window oracle disagrees with the fibre semigroup",
                          {{"discrepancies", verdict->discrepancies}});
    }
    return ok;
  }

  int run_golden(std::optional<std::string> const& path,
                 std::string const&                format) {
    auto const text = path ? slurp(*path)
                           : std::string(ellis::bundled_golden_expectations);
    nlohmann::json expectations;
    try {
      expectations = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ellis::ParseError(std::string("golden expectations: ") + e.what());
    }
    auto const result = ellis::run_golden(expectations);
    nlohmann::json failed = nlohmann::json::array();
    for (auto const& c : result.cases) {
      if (!c.passed) {
        failed.push_back(
            {{"name", c.name}, {"anchor", c.anchor}, {"diffs", c.diffs}});
      }
    }
    if (format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (auto const& c : result.cases) {
        j.push_back({{"name", c.name},
                     {"anchor", c.anchor},
                     {"passed", c.passed},
                     {"diffs", c.diffs}});
      }
      std::cout << nlohmann::json{{"cases", j},
                                  {"passed", result.passed()},
                                  {"total", result.cases.size()}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << ellis::to_text(result);
    }
    if (!result.all_passed()) {
      return report_error("golden",
                          std::to_string(result.passed()) + "/"
                              + std::to_string(result.cases.size())
                              + " golden cases passed",
                          {{"failed", failed}});
    }
    return ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural semigroups of bijective substitutions", "ellis"};
  app.set_version_flag("--version", std::string("ellis ") + ELLIS_VERSION);
  app.require_subcommand(1);

  AnalyzeArgs a;
  auto*       analyze = app.add_subcommand("analyze", "Analyze one substitution");
  analyze->add_option("file", a.file, "Substitution file, text or JSON; - for stdin")
      ->required();
  analyze->add_flag("--verify", a.verify, "Cross-check with the window oracle");
  analyze->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--g0", a.g0, "Index of the R-set element used to normalize");
  analyze->add_option("--aperiodicity-bound", a.bound,
                      "Largest word length in the complexity test")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--oracle-level", a.oracle_level,
                      "Highest window level k for the oracle")
      ->check(CLI::Range(std::size_t{1}, ellis::max_oracle_level));

  std::optional<std::string> golden_file;
  std::string                golden_format = "text";
  auto* golden = app.add_subcommand("golden", "Run the bundled example suite");
  golden->add_option("--expectations", golden_file,
                     "Expectations file replacing the bundled one");
  golden->add_option("--format", golden_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    return report_error("usage", e.what());
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(a);
    }
    return run_golden(golden_file, golden_format);
  } catch (ellis::ParseError const& e) {
    std::optional<std::pair<std::size_t, std::size_t>> where;
    if (e.line() > 0) {
      where = std::make_pair(e.line(), e.column());
    }
    return report_error(e.kind(), e.what(), e.details(), where);
  } catch (ellis::Error const& e) {
    return report_error(e.kind(), e.what(), e.details());
  } catch (std::ios_base::failure const& e) {
    return report_error("io", e.what());
  } catch (std::bad_alloc const&) {
    return report_error("resource", "out of memory");
  } catch (std::exception const& e) {
    return report_error("internal", e.what());
  }
}
