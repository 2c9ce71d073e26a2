#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "otoclab/common.hpp"

namespace otoclab::chaoskit {

/// y <- A x for a square operator of the given dimension. Must not alias.
using LinearMap = std::function<void(const CVector& x, CVector& y)>;

struct ArnoldiOptions {
  int nev = 4;               ///< wanted eigenvalues of largest modulus
  int krylov_dim = 0;        ///< 0 picks max(2 nev + 10, 30)
  double tol = 1e-10;        ///< relative residual ||A x - theta x|| / max(|theta|, 1e-3)
  int max_restarts = 500;
  std::uint64_t seed = 1;    ///< start vector
};

struct ArnoldiResult {
  std::vector<cplx> values;       ///< descending modulus
  std::vector<double> residuals;  ///< ||A x - theta x|| for unit x
  CMatrix vectors;                ///< Ritz vectors, one column per value
  int restarts = 0;
  int matvecs = 0;
  bool converged = false;
};

/// Largest-modulus eigenpairs of a general complex operator by thick-restarted Arnoldi:
/// after every cycle the wanted Ritz vectors are kept and the Krylov space is rebuilt
/// around them. Deterministic for a fixed seed.
ArnoldiResult arnoldi_largest(const LinearMap& a, int dimension, const ArnoldiOptions& options);

}  // namespace otoclab::chaoskit
