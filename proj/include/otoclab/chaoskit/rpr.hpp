#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "otoclab/common.hpp"
#include "otoclab/kernels/conjugation.hpp"
#include "otoclab/qmap/quantize.hpp"
#include "otoclab/qmap/schwinger.hpp"

namespace otoclab::chaoskit {

/// The propagator of a kicked map acting on translation operators,
///   [P]_{xi chi} = exp(-eps |xi|^2) (1/N) Tr(T_xi^dagger U T_chi U^dagger),
/// truncated to |xi|_inf, |chi|_inf <= xi_max.
///
/// U T U^dagger is built from the two diagonal factors of U. Conjugation by the kick
/// diag(d) sends T_(a,b) to sum_k tau^{-ak} g_a(k) T_(a,b+k), where g_a is the DFT of
/// d_{n+a} conj(d_n) divided by N; the drift does the same with the roles of a and b
/// exchanged. Only intermediate chords inside the box reach the box, so the truncated
/// matrix factorizes exactly into two sets of (2 xi_max + 1)^2 blocks.
class CoarseGrainedPropagator {
 public:
  CoarseGrainedPropagator(const kernels::SplitStepFactors& factors, double epsilon, int xi_max);

  int dimension() const { return m_ * m_; }
  int side() const { return m_; }
  int xi_max() const { return r_; }
  double epsilon() const { return eps_; }
  /// Flat index of a displacement inside the box.
  int index(qmap::Displacement xi) const;
  qmap::Displacement displacement(int index) const;

  /// y <- P x, OpenMP over blocks.
  void apply(const CVector& x, CVector& y) const;
  /// Same product with plain loops; the reference for tests and benchmarks.
  void apply_serial(const CVector& x, CVector& y) const;
  /// Full matrix, column by column. Only for small boxes.
  CMatrix dense() const;

 private:
  int n_;
  int r_;
  int m_;
  double eps_;
  std::vector<CMatrix> kick_;   // per a: b_out x b_in
  std::vector<CMatrix> drift_;  // per b: a_out x a_in
  RVector damping_;
};

struct RprOptions {
  double epsilon = 0.02;
  int xi_max = 40;
  int k = 3;
  int krylov_dim = 0;
  double tol = 1e-10;
  int max_restarts = 500;
  std::uint64_t seed = 1;
};

struct RprEstimate {
  std::vector<cplx> resonances;   ///< descending modulus, trivial eigenvalue removed
  std::vector<double> residuals;  ///< one per resonance
  cplx trivial{0.0, 0.0};
  double epsilon = 0.0;
  int xi_max = 0;
  bool converged = false;
  int matvecs = 0;
};

/// Leading Ruelle-Pollicott resonances of a quantized map. Throws NumericalError when
/// no eigenvalue lies within 1e-6 of 1 (truncation too small) or a resonance exceeds
/// modulus 1 + 1e-8. Non-convergence is reported through `converged` and the residuals.
RprEstimate rpr_spectrum(const qmap::QuantizedMap& qm, const RprOptions& options);

nlohmann::json to_json(const RprEstimate& est);

}  // namespace otoclab::chaoskit
