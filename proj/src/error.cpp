#include "rulebook/error.hpp"

namespace rulebook {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::UnknownRule: return "UnknownRule";
    case ErrorKind::UnknownRealization: return "UnknownRealization";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::UnknownTrajectory: return "UnknownTrajectory";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::AssumptionUnmet: return "AssumptionUnmet";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace rulebook
