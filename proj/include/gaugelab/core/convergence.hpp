#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace gaugelab {

/// Least-squares slope of log(err) against log(h): the observed order of a
/// method whose error behaves like C h^p. Needs at least two levels with
/// positive errors.
inline double observed_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("observed_order needs >= 2 matched levels");
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(err[i] > 0.0)) return std::nan("");
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Constant in the C h^2 bounds used by the verification suite. The
/// discretization errors of the catalog problems sit one to two orders of
/// magnitude below C h^2 at the catalog grid spacings.
inline constexpr double kErrorConstant = 10.0;

inline double c_h2(double h) { return kErrorConstant * h * h; }

}  // namespace gaugelab
