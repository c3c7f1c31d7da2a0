#pragma once

namespace gaugelab {

/// Physical constants. Defaults are natural units (hbar = e = m = 1) with
/// unit Coulomb and Biot-Savart prefactors.
struct PhysicalConstants {
  double hbar = 1.0;
  double e_charge = 1.0;
  double mass = 1.0;
  double coulomb_k = 1.0;  ///< 1 / (4 pi eps0)
  double biot_k = 1.0;     ///< mu0 / (4 pi)

  /// Throws InvalidInput unless every constant is strictly positive (the
  /// charge only has to be nonzero).
  void validate() const;
};

}  // namespace gaugelab
