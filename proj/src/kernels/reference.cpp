#include "otoclab/kernels/reference.hpp"

#include <cmath>

namespace otoclab::kernels::reference {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("reference::matmul: dimension mismatch");
  CMatrix c = CMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const cplx bkj = b(k, j);
      for (Eigen::Index i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

cplx trace(const CMatrix& a) {
  cplx s{0.0, 0.0};
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

CMatrix dft_matrix(int n) {
  CMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      // reduce p*q mod n before the angle to keep the phase exact for large n
      const long long pq = (static_cast<long long>(p) * q) % n;
      f(p, q) = std::polar(norm, -kTwoPi * static_cast<double>(pq) / n);
    }
  return f;
}

CMatrix split_step_unitary(const SplitStepFactors& factors) {
  const auto n = static_cast<int>(factors.position_phase.size());
  const CMatrix f = dft_matrix(n);
  CMatrix dq = CMatrix::Zero(n, n);
  CMatrix dp = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    dq(i, i) = factors.position_phase[i];
    dp(i, i) = factors.momentum_phase[i];
  }
  return matmul(adjoint(f), matmul(dp, matmul(f, dq)));
}

CMatrix conjugate(const CMatrix& w, const CMatrix& u) { return matmul(adjoint(u), matmul(w, u)); }

CorrelatorTraces correlator_traces(const CMatrix& wt, const CMatrix& v) {
  const double n = static_cast<double>(wt.rows());
  const CMatrix wv = matmul(wt, v);
  const CMatrix vw = matmul(v, wt);
  const CMatrix comm = wv - vw;
  const CMatrix wt_dag = adjoint(wt);
  const CMatrix v_dag = adjoint(v);

  CorrelatorTraces out;
  out.C = trace(matmul(adjoint(comm), comm)).real() / n;
  out.F = trace(matmul(matmul(wt_dag, v_dag), matmul(wt, v))) / n;
  out.D = trace(matmul(v_dag, matmul(matmul(wt_dag, wt), v))).real() / n;
  out.I = trace(matmul(matmul(wt_dag, v_dag), matmul(v, wt))).real() / n;
  return out;
}

}  // namespace otoclab::kernels::reference
