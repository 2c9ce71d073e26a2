#pragma once

#include "otoclab/common.hpp"
#include "otoclab/kernels/conjugation.hpp"
#include "otoclab/qmap/int_matrix.hpp"
#include "otoclab/qmap/schwinger.hpp"
#include "otoclab/qmap/torus_map.hpp"

namespace otoclab::qmap {

/// N-dimensional quantization of a kicked torus map, U = F^dagger D_p F D_q.
///
/// The position factor D_q = exp(-i V(q)/hbar) implements the kick and the momentum
/// factor D_p = exp(-i T(p)/hbar) the drift, with q, p in {0, ..., N-1} and
/// hbar = 1 / (2 pi N). For the cat map
///   D_q = exp(+2 pi i [q^2/2N + K N cos(2 pi q / N)]),
///   D_p = exp(-2 pi i [p^2/2N - K N cos(2 pi p / N)]),
/// which reproduces the classical update rule of TorusMap in the Heisenberg picture.
struct QuantizedMap {
  int N = 0;
  TorusMap map;
  kernels::SplitStepFactors factors;
  /// Dense unitary; empty when quantize() was asked not to build it.
  CMatrix U;

  double hbar_eff() const { return 1.0 / (kTwoPi * N); }
  /// Description of the quantization convention, recorded in output metadata.
  std::string convention() const;
};

kernels::SplitStepFactors split_step_factors(const TorusMap& map, int n);

QuantizedMap quantize(const TorusMap& map, int n, bool build_dense = true);

/// |Tr(T_{M xi}^dagger U T_xi U^dagger)| / N. Equals 1 when U carries T_xi to a
/// multiple of T_{M xi}, i.e. when the quantum map is covariant under M.
double translation_fidelity(const QuantizedMap& qm, const IntMatrix2& m, Displacement xi);

}  // namespace otoclab::qmap
