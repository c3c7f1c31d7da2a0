#include "gaugelab/lattice/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/simd/kernels.hpp"

namespace gaugelab::lattice {

namespace {

void check_axis(const AxisSpec& a, const char* name) {
  if (a.points < GridSpec::kMinPoints)
    throw InvalidInput(std::string("grid axis ") + name + " needs at least 16 points, got " + std::to_string(a.points));
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.hi > a.lo))
    throw InvalidInput(std::string("grid axis ") + name + " needs finite lo < hi");
}

}  // namespace

GridSpec::GridSpec(AxisSpec x) : dim_(1), x_(x), y_(x) { check_axis(x_, "x"); }

GridSpec::GridSpec(AxisSpec x, AxisSpec y) : dim_(2), x_(x), y_(y) {
  check_axis(x_, "x");
  check_axis(y_, "y");
}

double GridSpec::cell_volume() const { return dim_ == 1 ? x_.spacing() : x_.spacing() * y_.spacing(); }

double GridSpec::max_spacing() const { return dim_ == 1 ? x_.spacing() : std::max(x_.spacing(), y_.spacing()); }

Vec3 GridSpec::position(std::size_t index) const {
  const std::size_t i = index % nx();
  const std::size_t j = index / nx();
  return {x_.coord(static_cast<int>(i)), dim_ == 2 ? y_.coord(static_cast<int>(j)) : 0.0, 0.0};
}

emfields::Box GridSpec::box() const {
  if (dim_ == 1) return {{x_.lo, 0.0, 0.0}, {x_.hi, 0.0, 0.0}};
  return {{x_.lo, y_.lo, 0.0}, {x_.hi, y_.hi, 0.0}};
}

int GridSpec::wall_distance(std::size_t index) const {
  const int i = static_cast<int>(index % nx());
  int d = std::min(i, x_.points - 1 - i);
  if (dim_ == 2) {
    const int j = static_cast<int>(index / nx());
    d = std::min(d, std::min(j, y_.points - 1 - j));
  }
  return d;
}

Wavefunction::Wavefunction(GridSpec g, double t) : grid(std::move(g)), values(grid.size()), time(t) {}

Wavefunction::Wavefunction(GridSpec g, std::vector<cplx> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
  if (values.size() != grid.size()) throw InvalidInput("wavefunction size does not match its grid");
}

double Wavefunction::norm() const { return std::sqrt(simd::norm_squared(values) * grid.cell_volume()); }

Wavefunction& Wavefunction::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero or non-finite wavefunction");
  const double s = 1.0 / n;
  for (auto& v : values) v *= s;
  return *this;
}

bool Wavefunction::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

}  // namespace gaugelab::lattice
