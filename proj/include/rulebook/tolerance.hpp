#ifndef RULEBOOK_TOLERANCE_HPP
#define RULEBOOK_TOLERANCE_HPP

#include <cmath>

namespace rulebook {

// Absolute tolerance shared by every value comparison in the library:
// probability sums, merged distribution atoms, risk and violation orderings.
inline constexpr double kTolerance = 1e-9;

inline bool definitely_greater(double a, double b) { return a - b > kTolerance; }
inline bool definitely_less(double a, double b) { return b - a > kTolerance; }
inline bool approx_equal(double a, double b) { return std::abs(a - b) <= kTolerance; }

}  // namespace rulebook

#endif  // RULEBOOK_TOLERANCE_HPP
