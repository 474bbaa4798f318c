#ifndef CHARPOLY_REPORT_HPP
#define CHARPOLY_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "charpoly/polyhedron.hpp"
#include "charpoly/prep.hpp"
#include "charpoly/problem.hpp"

namespace charpoly {

struct RunFlags {
  bool plain = false;      // prepare/measure without generalized dissolution
  bool raw_forms = false;  // directrix/ridge/check-condition on the generators themselves, not in_0
  std::map<std::string, long> budget_overrides;  // highest precedence
  std::map<std::string, long> budget_defaults;   // lowest precedence (environment)
};

enum class ExitCode : int { Ok = 0, InvalidInput = 1, Budget = 2 };

struct RunReport {
  nlohmann::ordered_json json;
  ExitCode exit = ExitCode::Ok;
  /// Polyhedron to plot, when the command produced one.
  std::optional<FSubset> plot;
};

const std::vector<std::string>& commands();

/// 64-bit FNV-1a of the text, as "fnv1a64:<16 hex digits>".
std::string input_digest(std::string_view text);

/// Parses "k=v,k=v". Throws InvalidInput on malformed entries or unknown keys.
std::map<std::string, long> parse_budget_list(std::string_view list);

/// defaults < file < overrides. Throws InvalidInput on unknown keys or nonpositive values.
Budget resolve_budget(const ProblemFile& p, const RunFlags& flags);

/// Runs one command on problem text. Never throws on user errors: those
/// become status "error" with exit code 1.
RunReport run(const std::string& command, std::string_view text, const RunFlags& flags = {});

/// Human-readable rendering of a report.
std::string render_text(const nlohmann::ordered_json& report);

/// SVG 1.1 plot of a 2-dimensional F-subset. Throws InvalidInput unless e = 2.
std::string render_svg(const FSubset& delta, const std::string& title = "");

}  // namespace charpoly

#endif
