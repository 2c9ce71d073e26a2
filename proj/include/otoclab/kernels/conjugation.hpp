#pragma once

#include "otoclab/common.hpp"
#include "otoclab/kernels/fft.hpp"

namespace otoclab::kernels {

/// Diagonal factors of a kicked-map unitary U = F^dagger diag(momentum_phase) F diag(position_phase),
/// written in the position basis; F is the unitary DFT with kernel exp(-2 pi i p q / N) / sqrt(N).
struct SplitStepFactors {
  CVector position_phase;
  CVector momentum_phase;
};

/// W <- U^dagger W U with a dense unitary. `scratch` is resized as needed.
void conjugate_dense(CMatrix& w, const CMatrix& u, CMatrix& scratch);

/// Conjugation by a split-step unitary in O(N^2 log N) per step.
class SplitStepConjugator {
 public:
  explicit SplitStepConjugator(SplitStepFactors factors);

  int dimension() const { return static_cast<int>(factors_.position_phase.size()); }
  const SplitStepFactors& factors() const { return factors_; }

  /// W <- U^dagger W U (one Heisenberg step).
  void heisenberg(CMatrix& w) const;
  /// W <- U W U^dagger.
  void schrodinger(CMatrix& w) const;
  /// W <- F W F^dagger, i.e. the matrix elements in the momentum basis.
  void to_momentum(CMatrix& w) const;
  /// psi <- U psi.
  void apply(CVector& psi) const;
  /// Dense U assembled column by column.
  CMatrix dense() const;

 private:
  SplitStepFactors factors_;
  MatrixFft fft_;
};

/// The four infinite-temperature correlators at one time, traces normalized by N.
struct CorrelatorTraces {
  double C = 0.0;
  cplx F{0.0, 0.0};
  double D = 0.0;
  double I = 0.0;
};

/// Traces for dense V using the products V W_t and W_t V (two GEMMs).
CorrelatorTraces correlator_traces_dense(const CMatrix& wt, const CMatrix& v, CMatrix& scratch_a,
                                         CMatrix& scratch_b);

/// Traces for V = diag(v) in the basis W_t is expressed in; O(N^2).
CorrelatorTraces correlator_traces_diagonal(const CMatrix& wt, const CVector& v);

}  // namespace otoclab::kernels
