#pragma once

#include <span>
#include <vector>

namespace pointkg {

/// Weights for integrating f over [0, R] from samples at r = 0 and at the
/// grid points r[0] < r[1] < ... . Entry 0 belongs to the origin, entry i+1
/// to r[i]. Pairs of cells use piecewise-quadratic (Simpson-type) rules that
/// allow uneven spacing; a leftover cell uses the quadratic through its three
/// last nodes; a partial cell up to R is linearly interpolated.
/// Throws InputError if R exceeds the last grid point.
[[nodiscard]] std::vector<double> radial_weights(std::span<const double> r, double R);

}  // namespace pointkg
