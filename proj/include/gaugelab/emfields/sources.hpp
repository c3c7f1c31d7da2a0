#pragma once

#include <string>
#include <vector>

#include "gaugelab/core/constants.hpp"
#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::emfields {

/// One quadrature cell of a source: integrated charge rho dV and integrated
/// current J dV placed at the cell's node.
struct SourceElement {
  Vec3 position;
  double charge = 0.0;
  Vec3 current;
};

/// A source density reduced to point elements. `cell_size` is the source
/// grid spacing that sets the kernel regularization and guard radius.
struct DiscreteSource {
  std::string name;
  std::vector<SourceElement> elements;
  double cell_size = 0.0;

  double guard_radius() const { return 2.0 * cell_size; }
  double total_charge() const;
};

/// How a ChargeCurrentDensity is turned into elements.
///  - cartesian: midpoint rule on an n^3 grid over the support cube.
///  - toroidal: ring of radius `major` around the z axis through `center`,
///    n azimuthal stations times n_cross x n_cross tube points (radius `minor`).
///  - spherical_shell: shell of radius `major` and half-thickness `minor`,
///    n_cross radial x n polar x 2n azimuthal points.
struct SourceQuadrature {
  enum class Kind { cartesian, toroidal, spherical_shell };
  Kind kind = Kind::cartesian;
  int n = 48;
  int n_cross = 6;
  double major = 1.0;
  double minor = 0.1;
};

DiscreteSource discretize(const ChargeCurrentDensity& src, const SourceQuadrature& q);

/// Electro- and magnetostatic potentials of the elements:
///   phi(r) = k_C sum q_i / d_i,   A(r) = k_B sum I_i / d_i,
/// with d_i = max(|r - r_i|, cell_size / 2). Gradient and Jacobian are
/// analytic; both potentials are time independent.
PotentialSet static_potentials(const DiscreteSource& src, const Box& domain, const PhysicalConstants& c = {});
PotentialSet static_potentials(const ChargeCurrentDensity& src, const SourceQuadrature& q, const Box& domain,
                               const PhysicalConstants& c = {});

// Catalog densities. The loop and shell use the compact polynomial bump
// (1 - s^2/a^2)^3 across their cross-section.

/// Gaussian blob of total charge q and standard width w, truncated at 8w
/// where it is below 1e-13 of its peak.
ChargeCurrentDensity charge_blob(double q, double width, const Vec3& center = {});
/// Circular current loop in the z = center.z plane: ring radius R, total
/// current I circulating counter-clockwise about +z, tube radius a.
ChargeCurrentDensity current_loop(double radius, double current, double tube_radius, const Vec3& center = {});
/// Spherical shell of total charge q, radius R and half-thickness w.
ChargeCurrentDensity charge_shell(double q, double radius, double half_thickness, const Vec3& center = {});

/// Suggested quadrature for each catalog density.
SourceQuadrature loop_quadrature(double radius, double tube_radius, int azimuthal = 256, int cross = 6);
SourceQuadrature shell_quadrature(double radius, double half_thickness, int polar = 48, int radial = 5);

}  // namespace gaugelab::emfields
