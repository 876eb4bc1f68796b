#ifndef RULEBOOK_RISK_HPP
#define RULEBOOK_RISK_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "rulebook/probspace.hpp"

namespace rulebook {

enum class MeasureKind { Expected, WorstCase, ValueAtRisk, ConditionalValueAtRisk, Custom };

/// User-supplied risk measure. It is expected to be monotone under
/// pointwise dominance; the library can only spot-check that.
using CustomRiskFn = std::function<double(const FiniteProbSpace&, const RandomCost&)>;

/// A risk measure maps a random cost to a real assessment.
///
/// Value-at-risk is the alpha-quantile, min{d : Pr(f <= d) >= alpha}, so
/// large alpha looks further into the tail. Conditional value-at-risk is
/// inf_b { b + E[(f - b)^+] / (1 - alpha) }. At alpha = 1 both collapse to
/// the worst case. Only scenarios of positive probability contribute.
class RiskMeasure {
 public:
  static RiskMeasure expected();
  static RiskMeasure worst_case();
  /// Throws Error{InvalidAlpha} unless alpha is in [0, 1].
  static RiskMeasure value_at_risk(double alpha);
  /// Throws Error{InvalidAlpha} unless alpha is in [0, 1].
  static RiskMeasure conditional_value_at_risk(double alpha);
  static RiskMeasure custom(std::string name, CustomRiskFn fn);

  MeasureKind kind() const { return kind_; }
  std::optional<double> alpha() const { return alpha_; }
  const std::string& name() const { return name_; }
  const CustomRiskFn& custom_fn() const { return *custom_; }

  /// Keyword used by the instance format: expected, worst_case, var, cvar,
  /// or the custom measure's name.
  std::string keyword() const;
  /// Keyword plus alpha, e.g. "var(alpha=0.9)".
  std::string describe() const;

  friend bool operator==(const RiskMeasure& a, const RiskMeasure& b);

 private:
  MeasureKind kind_ = MeasureKind::Expected;
  std::optional<double> alpha_;
  std::string name_;
  std::shared_ptr<const CustomRiskFn> custom_;
};

/// Throws Error{DomainMismatch} if f is not defined on `space`, and
/// Error{EmptySupport} if no scenario has positive probability.
double assess(const RiskMeasure& measure, const FiniteProbSpace& space, const RandomCost& f);

/// Built-in measures evaluated directly on a distribution. Custom measures
/// need the underlying space and are rejected here with
/// Error{PreconditionViolated}.
double assess(const RiskMeasure& measure, std::span<const Atom> dist);

double worst_case_of(std::span<const Atom> dist);
double value_at_risk_of(double alpha, std::span<const Atom> dist);
double conditional_value_at_risk_of(double alpha, std::span<const Atom> dist);

/// beta + E[(f - beta)^+] / (1 - alpha), the objective minimized by CVaR.
/// The objective is convex and piecewise linear with kinks at the atoms,
/// so its infimum is attained at one of them. Requires alpha < 1.
double cvar_objective(double beta, double alpha, std::span<const Atom> dist);

/// Whether the measure belongs to a class that is strictly monotone: if
/// f <= f' almost surely and Pr(f < f') > 0 then rho(f) < rho(f'). Only
/// the expectation qualifies among the built-ins.
bool is_strictly_monotone_class(const RiskMeasure& measure);

}  // namespace rulebook

#endif  // RULEBOOK_RISK_HPP
