#pragma once

#include <utility>

#include "otoclab/common.hpp"
#include "otoclab/qmap/int_matrix.hpp"

namespace otoclab::qmap {

/// Integer phase-space displacement (xi_q, xi_p).
struct Displacement {
  long long q = 0;
  long long p = 0;
};

/// Symplectic product <xi, chi> = xi_p chi_q - xi_q chi_p. With this orientation
/// T_xi T_chi = tau^<xi, chi> T_{xi + chi} for T_xi = V^{xi_q} U^{xi_p} tau^{xi_q xi_p}.
constexpr long long symplectic(Displacement a, Displacement b) { return a.p * b.q - a.q * b.p; }

/// exp(i pi m / N), with m reduced mod 2N before the angle is formed.
cplx tau_power(long long m, int n);

/// Clock and shift generators on Z_N and the Hermitian position/momentum built from them.
struct SchwingerOps {
  int N = 0;
  CMatrix shift;  ///< V = sum_q |q+1><q|
  CMatrix clock;  ///< U = sum_q tau^{2q} |q><q|
  CMatrix Q;      ///< (U - U^dagger) / 2i
  CMatrix P;      ///< (V - V^dagger) / 2i
  cplx tau;       ///< exp(i pi / N)
};

SchwingerOps schwinger_ops(int n);

/// Weyl translation T_xi = V^{xi_q} U^{xi_p} tau^{xi_q xi_p}; components may have any sign.
CMatrix translation_op(int n, Displacement xi);

/// Image of a displacement under an integer matrix, with components reduced mod 2N
/// (enough to fix T_{M xi} including its phase).
Displacement apply_mod(const IntMatrix2& m, Displacement xi, int n);

/// Normalized overlap |Tr(T_target^dagger A)| / N, evaluated on the single
/// off-diagonal band where T_target is supported.
double translation_overlap(const CMatrix& a, Displacement target);

}  // namespace otoclab::qmap
