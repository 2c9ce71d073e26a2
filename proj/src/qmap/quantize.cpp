#include "otoclab/qmap/quantize.hpp"

#include <cmath>

namespace otoclab::qmap {
namespace {

// pi * (n^2 mod 2N) / N, i.e. 2 pi n^2 / 2N reduced exactly
double quadratic_angle(long long n, int big_n) {
  const long long two_n = 2LL * big_n;
  return kPi * static_cast<double>((n * n) % two_n) / big_n;
}

}  // namespace

kernels::SplitStepFactors split_step_factors(const TorusMap& map, int n) {
  if (n < 2) throw InvalidArgument("quantize: N must be >= 2");
  kernels::SplitStepFactors f{CVector(n), CVector(n)};
  const double K = map.K;
  for (int k = 0; k < n; ++k) {
    const double c = std::cos(kTwoPi * k / n);
    double pos = 0.0;  // phase of D_q
    double mom = 0.0;  // phase of D_p
    switch (map.kind) {
      case MapKind::cat:
        pos = quadratic_angle(k, n) + kTwoPi * K * n * c;
        mom = -quadratic_angle(k, n) + kTwoPi * K * n * c;
        break;
      case MapKind::standard:
        pos = -(n * K / kTwoPi) * c;
        mom = -quadratic_angle(k, n);
        break;
      case MapKind::harper:
        pos = -n * K * c;
        mom = -n * map.second_kick() * c;
        break;
    }
    f.position_phase[k] = std::polar(1.0, pos);
    f.momentum_phase[k] = std::polar(1.0, mom);
  }
  return f;
}

std::string QuantizedMap::convention() const {
  return "U = F^dag diag(exp(-i T(p)/hbar)) F diag(exp(-i V(q)/hbar)); F_pq = exp(-2*pi*i*p*q/N)/sqrt(N); "
         "hbar = 1/(2*pi*N)";
}

QuantizedMap quantize(const TorusMap& map, int n, bool build_dense) {
  QuantizedMap qm;
  qm.N = n;
  qm.map = map;
  qm.factors = split_step_factors(map, n);
  if (build_dense) qm.U = kernels::SplitStepConjugator(qm.factors).dense();
  return qm;
}

double translation_fidelity(const QuantizedMap& qm, const IntMatrix2& m, Displacement xi) {
  const kernels::SplitStepConjugator conj(qm.factors);
  CMatrix t = translation_op(qm.N, xi);
  conj.schrodinger(t);
  return translation_overlap(t, apply_mod(m, xi, qm.N));
}

}  // namespace otoclab::qmap
