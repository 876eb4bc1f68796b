#ifndef RULEBOOK_ERROR_HPP
#define RULEBOOK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rulebook {

enum class ErrorKind {
  UnknownElement,
  DuplicateElement,
  DomainMismatch,
  InvalidAlpha,
  EmptySupport,
  UnknownRule,
  UnknownRealization,
  UnknownScenario,
  UnknownTrajectory,
  NoWitness,
  PreconditionViolated,
  AssumptionUnmet,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rulebook

#endif  // RULEBOOK_ERROR_HPP
