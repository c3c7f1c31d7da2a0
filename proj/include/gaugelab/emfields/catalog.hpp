#pragma once

#include <cstdint>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::emfields::catalog {

// ---- potentials and fields

/// phi = -E0 . r, A = -r x B0 / 2.
PotentialSet uniform_potentials(const Box& box, const Vec3& E0, const Vec3& B0);
FieldSet uniform_fields(const Box& box, const Vec3& E0, const Vec3& B0);

/// phi = 0.5 exp(-r^2/4) + 0.1 x y, A = (0.2 sin z, x - 0.1 cos x, -0.3 cos y).
/// Static; B = (0.3 sin y, 0.2 cos z, 1 + 0.1 sin x).
PotentialSet smooth_nonuniform_potentials(const Box& box);
FieldSet smooth_nonuniform_fields(const Box& box);

/// B = beta t z-hat from A = (beta t / 2)(-y, x, 0), phi = 0, so that
/// E = (beta / 2)(y, -x, 0).
PotentialSet ramping_b_potentials(const Box& box, double beta);
FieldSet ramping_b_fields(const Box& box, double beta);

/// Point charge q at the origin; the box must exclude the origin.
FieldSet coulomb_fields(const Box& box, double q, const PhysicalConstants& c = {});

/// phi = -k / sqrt(r^2 + a^2), A = 0.
PotentialSet soft_coulomb_potentials(const Box& box, double k, double a);

/// phi = m omega^2 x^2 / (2 e), so that e phi = m omega^2 x^2 / 2.
PotentialSet oscillator_potentials(const Box& box, double omega, const PhysicalConstants& c = {});

/// Uniform field E0 sin(wd t) along x. "length": phi = -E0 sin(wd t) x,
/// A = 0. "velocity": phi = 0, A = (E0 / wd) cos(wd t) x-hat.
enum class DipoleCoupling { length, velocity };
PotentialSet dipole_drive_potentials(const Box& box, double E0, double omega_d, DipoleCoupling coupling);

/// Radial soft wall e phi = V0 max(0, rho - R_w)^2 with rho the in-plane radius.
PotentialSet soft_wall_potentials(const Box& box, double V0, double wall_radius, const PhysicalConstants& c = {});

// ---- gauge functions

GaugeFunction zero_gauge(const Box& box);
/// chi = c x
GaugeFunction linear_x(const Box& box, double c = 0.5);
/// chi = amp exp(-r^2 / (2 w^2))
GaugeFunction gaussian_bump(const Box& box, double amp = 0.3, double width = 1.0);
/// chi = g t
GaugeFunction g_times_t(const Box& box, double g = 0.2);
/// gaussian_bump + g_times_t
GaugeFunction separable_fg(const Box& box, double amp = 0.3, double width = 1.0, double g = 0.2);
/// chi = sum of all monomials x^i y^j z^k with i + j + k <= 3, coefficients
/// drawn uniformly from [-scale, scale] with the given seed.
GaugeFunction random_polynomial(const Box& box, std::uint64_t seed, double scale = 0.1);
/// chi = amp sin(omega t) x^2, a time-dependent gauge outside the separable class.
GaugeFunction oscillating_quadratic(const Box& box, double amp = 0.1, double omega = 1.0);

}  // namespace gaugelab::emfields::catalog
