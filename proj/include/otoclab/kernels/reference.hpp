#pragma once

#include "otoclab/common.hpp"
#include "otoclab/kernels/conjugation.hpp"

/// Serial, loop-level implementations kept as test oracles and benchmark baselines.
/// Nothing here uses Eigen products, FFTs or OpenMP.
namespace otoclab::kernels::reference {

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
cplx trace(const CMatrix& a);

/// Unitary DFT matrix with kernel exp(-2 pi i p q / N) / sqrt(N).
CMatrix dft_matrix(int n);

/// U = F^dagger diag(momentum_phase) F diag(position_phase), by explicit products.
CMatrix split_step_unitary(const SplitStepFactors& factors);

/// U^dagger W U.
CMatrix conjugate(const CMatrix& w, const CMatrix& u);

/// Correlators from their literal definitions: the commutator is formed explicitly.
CorrelatorTraces correlator_traces(const CMatrix& wt, const CMatrix& v);

}  // namespace otoclab::kernels::reference
