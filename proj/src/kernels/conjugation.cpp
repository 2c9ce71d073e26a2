#include "otoclab/kernels/conjugation.hpp"

#include <vector>

namespace otoclab::kernels {
namespace {

// w_ij <- conj(d_i) w_ij d_j
void conjugate_by_diagonal(CMatrix& w, const CVector& d, bool adjoint_left) {
  const auto n = static_cast<int>(w.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    const cplx right = adjoint_left ? d[j] : std::conj(d[j]);
    for (int i = 0; i < n; ++i) {
      const cplx left = adjoint_left ? std::conj(d[i]) : d[i];
      w(i, j) *= left * right;
    }
  }
}

struct Partial {
  double c = 0.0, fr = 0.0, fi = 0.0, d = 0.0, i = 0.0;
};

// Column partials are summed serially so the result does not depend on the thread count.
CorrelatorTraces reduce(const std::vector<Partial>& parts, double n) {
  Partial total;
  for (const auto& p : parts) {
    total.c += p.c;
    total.fr += p.fr;
    total.fi += p.fi;
    total.d += p.d;
    total.i += p.i;
  }
  return {total.c / n, cplx(total.fr, total.fi) / n, total.d / n, total.i / n};
}

}  // namespace

void conjugate_dense(CMatrix& w, const CMatrix& u, CMatrix& scratch) {
  if (w.rows() != u.rows() || w.cols() != u.cols() || u.rows() != u.cols())
    throw InvalidArgument("conjugate_dense: dimension mismatch");
  scratch.noalias() = w * u;
  w.noalias() = u.adjoint() * scratch;
}

SplitStepConjugator::SplitStepConjugator(SplitStepFactors factors)
    : factors_(std::move(factors)), fft_(static_cast<int>(factors_.position_phase.size())) {
  if (factors_.position_phase.size() != factors_.momentum_phase.size())
    throw InvalidArgument("SplitStepConjugator: factor sizes differ");
}

void SplitStepConjugator::heisenberg(CMatrix& w) const {
  // U^dagger W U = Dq^dagger F^dagger Dp^dagger F W F^dagger Dp F Dq
  fft_.columns(w, FftDirection::forward);
  fft_.rows(w, FftDirection::backward);
  conjugate_by_diagonal(w, factors_.momentum_phase, true);
  fft_.columns(w, FftDirection::backward);
  fft_.rows(w, FftDirection::forward);
  conjugate_by_diagonal(w, factors_.position_phase, true);
}

void SplitStepConjugator::schrodinger(CMatrix& w) const {
  conjugate_by_diagonal(w, factors_.position_phase, false);
  fft_.columns(w, FftDirection::forward);
  fft_.rows(w, FftDirection::backward);
  conjugate_by_diagonal(w, factors_.momentum_phase, false);
  fft_.columns(w, FftDirection::backward);
  fft_.rows(w, FftDirection::forward);
}

void SplitStepConjugator::to_momentum(CMatrix& w) const {
  fft_.columns(w, FftDirection::forward);
  fft_.rows(w, FftDirection::backward);
}

void SplitStepConjugator::apply(CVector& psi) const {
  psi.array() *= factors_.position_phase.array();
  psi = dft(psi, FftDirection::forward, FftScale::unitary);
  psi.array() *= factors_.momentum_phase.array();
  psi = dft(psi, FftDirection::backward, FftScale::unitary);
}

CMatrix SplitStepConjugator::dense() const {
  CMatrix u = factors_.position_phase.asDiagonal();
  fft_.columns(u, FftDirection::forward);
  u = factors_.momentum_phase.asDiagonal() * u;
  fft_.columns(u, FftDirection::backward);
  return u;
}

CorrelatorTraces correlator_traces_dense(const CMatrix& wt, const CMatrix& v, CMatrix& scratch_a,
                                         CMatrix& scratch_b) {
  if (wt.rows() != v.rows() || wt.cols() != v.cols())
    throw InvalidArgument("correlator_traces_dense: dimension mismatch");
  CMatrix& x = scratch_a;  // V W_t
  CMatrix& y = scratch_b;  // W_t V
  x.noalias() = v * wt;
  y.noalias() = wt * v;
  const auto n = static_cast<int>(wt.cols());
  std::vector<Partial> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    Partial p;
    for (int i = 0; i < n; ++i) {
      const cplx xv = x(i, j);
      const cplx yv = y(i, j);
      p.c += std::norm(yv - xv);
      const cplx f = std::conj(xv) * yv;
      p.fr += f.real();
      p.fi += f.imag();
      p.d += std::norm(yv);
      p.i += std::norm(xv);
    }
    parts[static_cast<std::size_t>(j)] = p;
  }
  return reduce(parts, static_cast<double>(n));
}

CorrelatorTraces correlator_traces_diagonal(const CMatrix& wt, const CVector& v) {
  if (wt.rows() != v.size() || wt.cols() != v.size())
    throw InvalidArgument("correlator_traces_diagonal: dimension mismatch");
  const auto n = static_cast<int>(wt.cols());
  std::vector<Partial> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    Partial p;
    const cplx vj = v[j];
    for (int i = 0; i < n; ++i) {
      const double w2 = std::norm(wt(i, j));
      const cplx vi = v[i];
      p.c += w2 * std::norm(vj - vi);
      const cplx f = w2 * std::conj(vi) * vj;
      p.fr += f.real();
      p.fi += f.imag();
      p.d += w2 * std::norm(vj);
      p.i += w2 * std::norm(vi);
    }
    parts[static_cast<std::size_t>(j)] = p;
  }
  return reduce(parts, static_cast<double>(n));
}

}  // namespace otoclab::kernels
