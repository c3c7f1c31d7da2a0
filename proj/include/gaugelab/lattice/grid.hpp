#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gaugelab/core/vec3.hpp"
#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::lattice {

using cplx = std::complex<double>;

/// One grid axis: `points` interior nodes x_j = lo + (j + 1) h with
/// h = (hi - lo) / (points + 1). The walls at lo and hi carry psi = 0.
struct AxisSpec {
  double lo = -1.0;
  double hi = 1.0;
  int points = 16;

  double spacing() const { return (hi - lo) / (points + 1); }
  double coord(int j) const { return lo + (j + 1) * spacing(); }
  bool operator==(const AxisSpec&) const = default;
};

/// Uniform 1D or 2D grid. Points are stored x-fastest. A 1D grid lives on
/// the x axis (y = z = 0); a 2D grid in the z = 0 plane.
class GridSpec {
 public:
  static constexpr int kMinPoints = 16;

  GridSpec() = default;
  explicit GridSpec(AxisSpec x);
  GridSpec(AxisSpec x, AxisSpec y);

  static GridSpec line(double lo, double hi, int n) { return GridSpec(AxisSpec{lo, hi, n}); }
  static GridSpec square(double lo, double hi, int n) { return GridSpec(AxisSpec{lo, hi, n}, AxisSpec{lo, hi, n}); }

  int dim() const { return dim_; }
  const AxisSpec& axis(int k) const { return k == 0 ? x_ : y_; }
  std::size_t nx() const { return static_cast<std::size_t>(x_.points); }
  std::size_t ny() const { return dim_ == 2 ? static_cast<std::size_t>(y_.points) : 1; }
  std::size_t size() const { return nx() * ny(); }
  double spacing(int k = 0) const { return axis(k).spacing(); }
  /// h^dim, the Riemann-sum weight.
  double cell_volume() const;
  /// Largest spacing across axes, the h in C h^2 error bounds.
  double max_spacing() const;

  Vec3 position(std::size_t index) const;
  /// Box spanned by the walls (degenerate in the unused directions).
  emfields::Box box() const;
  /// Number of grid layers from the wall: 0 for points next to a wall.
  int wall_distance(std::size_t index) const;

  bool operator==(const GridSpec& o) const { return dim_ == o.dim_ && x_ == o.x_ && (dim_ == 1 || y_ == o.y_); }

 private:
  int dim_ = 1;
  AxisSpec x_;
  AxisSpec y_;
};

/// Complex samples of a wavefunction on a grid at one time instant.
struct Wavefunction {
  GridSpec grid;
  std::vector<cplx> values;
  double time = 0.0;

  Wavefunction() = default;
  Wavefunction(GridSpec g, double t);
  Wavefunction(GridSpec g, std::vector<cplx> v, double t);

  double norm() const;
  /// Scales to unit norm; throws InvalidInput on a zero or non-finite state.
  Wavefunction& normalize();
  bool all_finite() const;
};

}  // namespace gaugelab::lattice
