#pragma once

#include <vector>

namespace pointkg {

/// All distinct real roots s >= 0 of the polynomial with the given
/// coefficients (lowest order first), ascending. Roots are bracketed with a
/// Sturm sequence and refined by bisection; roots within `zero_tol` of 0 are
/// reported as exactly 0.
[[nodiscard]] std::vector<double> nonnegative_real_roots(const std::vector<double>& coeffs,
                                                         double zero_tol = 1e-14);

/// Number of distinct real roots in (a, b] by Sturm's theorem.
[[nodiscard]] int sturm_count(const std::vector<double>& coeffs, double a, double b);

}  // namespace pointkg
