#include "rulebook/risk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rulebook/error.hpp"
#include "rulebook/tolerance.hpp"

namespace rulebook {

namespace {

double checked_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in [0, 1], got " << alpha;
    throw Error(ErrorKind::InvalidAlpha, os.str());
  }
  return alpha;
}

void require_support(std::span<const Atom> dist) {
  if (dist.empty()) {
    throw Error(ErrorKind::EmptySupport, "distribution has no atom of positive probability");
  }
}

}  // namespace

RiskMeasure RiskMeasure::expected() { return RiskMeasure{}; }

RiskMeasure RiskMeasure::worst_case() {
  RiskMeasure m;
  m.kind_ = MeasureKind::WorstCase;
  return m;
}

RiskMeasure RiskMeasure::value_at_risk(double alpha) {
  RiskMeasure m;
  m.kind_ = MeasureKind::ValueAtRisk;
  m.alpha_ = checked_alpha(alpha);
  return m;
}

RiskMeasure RiskMeasure::conditional_value_at_risk(double alpha) {
  RiskMeasure m;
  m.kind_ = MeasureKind::ConditionalValueAtRisk;
  m.alpha_ = checked_alpha(alpha);
  return m;
}

RiskMeasure RiskMeasure::custom(std::string name, CustomRiskFn fn) {
  RiskMeasure m;
  m.kind_ = MeasureKind::Custom;
  m.name_ = std::move(name);
  m.custom_ = std::make_shared<const CustomRiskFn>(std::move(fn));
  return m;
}

std::string RiskMeasure::keyword() const {
  switch (kind_) {
    case MeasureKind::Expected: return "expected";
    case MeasureKind::WorstCase: return "worst_case";
    case MeasureKind::ValueAtRisk: return "var";
    case MeasureKind::ConditionalValueAtRisk: return "cvar";
    case MeasureKind::Custom: return name_;
  }
  return "?";
}

std::string RiskMeasure::describe() const {
  if (!alpha_) return keyword();
  std::ostringstream os;
  os << keyword() << "(alpha=" << *alpha_ << ")";
  return os.str();
}

bool operator==(const RiskMeasure& a, const RiskMeasure& b) {
  return a.kind_ == b.kind_ && a.alpha_ == b.alpha_ && a.name_ == b.name_ &&
         a.custom_ == b.custom_;
}

double worst_case_of(std::span<const Atom> dist) {
  require_support(dist);
  double m = dist.front().value;
  for (const Atom& a : dist) m = std::max(m, a.value);
  return m;
}

double value_at_risk_of(double alpha, std::span<const Atom> dist) {
  require_support(dist);
  checked_alpha(alpha);
  if (alpha == 1.0) return worst_case_of(dist);
  double cumulative = 0.0;
  for (const Atom& a : dist) {
    cumulative += a.prob;
    if (cumulative >= alpha - kTolerance) return a.value;
  }
  return dist.back().value;
}

double cvar_objective(double beta, double alpha, std::span<const Atom> dist) {
  double tail = 0.0;
  for (const Atom& a : dist) tail += a.prob * std::max(a.value - beta, 0.0);
  return beta + tail / (1.0 - alpha);
}

double conditional_value_at_risk_of(double alpha, std::span<const Atom> dist) {
  require_support(dist);
  checked_alpha(alpha);
  if (alpha == 1.0) return worst_case_of(dist);
  double best = cvar_objective(dist.front().value, alpha, dist);
  for (const Atom& a : dist.subspan(1)) best = std::min(best, cvar_objective(a.value, alpha, dist));
  return best;
}

double assess(const RiskMeasure& measure, std::span<const Atom> dist) {
  require_support(dist);
  switch (measure.kind()) {
    case MeasureKind::Expected: {
      double sum = 0.0;
      for (const Atom& a : dist) sum += a.prob * a.value;
      return sum;
    }
    case MeasureKind::WorstCase: return worst_case_of(dist);
    case MeasureKind::ValueAtRisk: return value_at_risk_of(*measure.alpha(), dist);
    case MeasureKind::ConditionalValueAtRisk:
      return conditional_value_at_risk_of(*measure.alpha(), dist);
    case MeasureKind::Custom: break;
  }
  throw Error(ErrorKind::PreconditionViolated,
              "custom measure '" + measure.name() + "' cannot be evaluated on a bare distribution");
}

double assess(const RiskMeasure& measure, const FiniteProbSpace& space, const RandomCost& f) {
  f.require_on(space);
  if (measure.kind() == MeasureKind::Expected) {
    // Summed in scenario order so the value matches expectation() bit for bit.
    const auto dist = distribution(space, f);
    require_support(dist);
    return expectation(space, f);
  }
  if (measure.kind() == MeasureKind::Custom) return measure.custom_fn()(space, f);
  const auto dist = distribution(space, f);
  return assess(measure, dist);
}

bool is_strictly_monotone_class(const RiskMeasure& measure) {
  return measure.kind() == MeasureKind::Expected;
}

}  // namespace rulebook
