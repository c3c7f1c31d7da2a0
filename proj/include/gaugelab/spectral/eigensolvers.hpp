#pragma once

#include <cstdint>
#include <vector>

#include "gaugelab/lattice/hamiltonian.hpp"

namespace gaugelab::spectral {

struct EigenOptions {
  enum class Method { automatic, tridiagonal, lanczos, subspace };
  Method method = Method::automatic;
  /// Residual target ||H v - E v|| <= tolerance * max(1, |E_N|).
  double tolerance = 1e-9;
  int guard_vectors = 0;  ///< 0 picks max(8, N / 2)
  int filter_degree = 24;
  int max_iterations = 400;
  int max_lanczos_steps = 600;
  std::uint64_t seed = 0x5eed;
};

/// Lowest eigenpairs of a grid operator. Vectors are unit in the plain
/// l2 sense (no h^dim weight).
struct EigenPairs {
  std::vector<double> values;
  std::vector<std::vector<lattice::cplx>> vectors;
  int iterations = 0;
  const char* method = "";
};

/// Dispatches to the tridiagonal solver for 1D operators and to shift-invert
/// Lanczos for 2D ones (or as forced by `opt.method`). Throws ConvergenceError if the residual target is missed.
EigenPairs lowest_eigenpairs(const lattice::StencilOperator& H, int count, const EigenOptions& opt = {});

/// Hermitian tridiagonal (1D) solve: a diagonal phase transformation makes
/// the matrix real symmetric with nonnegative off-diagonals, then LAPACK's
/// MRRR driver returns the requested lowest eigenpairs.
EigenPairs tridiagonal_eigenpairs(const lattice::StencilOperator& H, int count);

/// Lanczos with full reorthogonalization on (H - sigma)^-1, sigma below the
/// spectrum (sparse LDL^H factorization), followed by a Rayleigh-Ritz
/// extraction in H itself. Pairs still above the residual target are polished
/// with Chebyshev-filtered subspace iteration started from the Ritz vectors.
EigenPairs lanczos_eigenpairs(const lattice::StencilOperator& H, int count, const EigenOptions& opt);

/// Block Chebyshev-filtered subspace iteration with Rayleigh-Ritz
/// extraction, deterministic random start.
EigenPairs subspace_eigenpairs(const lattice::StencilOperator& H, int count, const EigenOptions& opt);

}  // namespace gaugelab::spectral
