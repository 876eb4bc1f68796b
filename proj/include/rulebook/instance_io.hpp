#ifndef RULEBOOK_INSTANCE_IO_HPP
#define RULEBOOK_INSTANCE_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rulebook/riskaware.hpp"

namespace rulebook {

// Instance document (JSON, UTF-8):
//
//   {
//     "description": "...",                          optional
//     "scenarios": [{"id": "w1", "prob": 0.98}, ...],
//     "system_trajectories": ["t1", ...],
//     "environment_trajectories": ["x1", ...],
//     "interaction": {"t1": {"w1": "x1", ...}, ...},
//     "rules": [{"id": "r1",
//                "violations": {"t1": {"x1": 0, "x2": 225}, ...},
//                "risk": {"measure": "var", "alpha": 0.9, "threshold": 0}}, ...],
//     "priority": [["r1", "r2"], ...]                 (higher, lower)
//   }
//
// measure is one of expected, worst_case, var, cvar; alpha is required for
// var and cvar and rejected otherwise.

/// Throws Error{ParseError} for malformed JSON or a document of the wrong
/// shape (the message carries the line or the JSON field path), and
/// Error{ValidationError} for a well-formed document describing an invalid
/// instance.
Instance parse_instance(std::string_view text);

/// Reads and parses a file. An unreadable file is reported as ParseError.
Instance load_instance(const std::filesystem::path& path);

/// Canonical document for an instance; parse_instance inverts it exactly.
/// Throws Error{PreconditionViolated} for custom measures, which the format
/// cannot express.
std::string serialize_instance(const Instance& instance);

/// Measure from its instance-format keyword. Throws Error{ValidationError}
/// on an unknown keyword, a missing or superfluous alpha, or an alpha
/// outside [0, 1].
RiskMeasure measure_from_keyword(std::string_view keyword, std::optional<double> alpha);

/// Command-line replacement of risk settings. An unset rule applies the
/// override to every rule.
struct RiskOverride {
  std::optional<std::string> rule;
  std::optional<std::string> measure;
  std::optional<double> alpha;
  std::optional<double> threshold;

  bool empty() const { return !measure && !alpha && !threshold; }
};

/// Throws Error{UnknownRule} for an unknown scoped rule and
/// Error{ValidationError} for an inconsistent measure/alpha combination.
Instance apply_override(const Instance& instance, const RiskOverride& override);

}  // namespace rulebook

#endif  // RULEBOOK_INSTANCE_IO_HPP
