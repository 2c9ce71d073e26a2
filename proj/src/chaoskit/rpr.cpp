#include "otoclab/chaoskit/rpr.hpp"

#include <cmath>

#include "otoclab/chaoskit/arnoldi.hpp"
#include "otoclab/kernels/fft.hpp"

namespace otoclab::chaoskit {

namespace {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// g_hat(k) = (1/N) sum_n d_{(n+shift) mod N} conj(d_n) exp(-2 pi i k n / N)
CVector chord_spectrum(const CVector& d, long long shift) {
  const auto n = static_cast<long long>(d.size());
  CVector g(d.size());
  for (long long j = 0; j < n; ++j) {
    const long long s = ((j + shift) % n + n) % n;
    g[j] = d[s] * std::conj(d[j]);
  }
  return kernels::dft(g, kernels::FftDirection::forward, kernels::FftScale::inverse);
}

// Block for a conjugation that keeps chord component c fixed and moves the other by k:
// entry (out, in) = tau^{-c k} g_c(k) with k = sign * (out - in).
CMatrix stage_block(const CVector& d, long long c, int r, int sign) {
  const auto n = static_cast<long long>(d.size());
  const int m = 2 * r + 1;
  const CVector g = chord_spectrum(d, c);
  CMatrix block(m, m);
  for (int o = 0; o < m; ++o) {
    for (int i = 0; i < m; ++i) {
      const long long k = static_cast<long long>(sign) * (o - i);
      block(o, i) = qmap::tau_power(-c * k, static_cast<int>(n)) * g[((k % n) + n) % n];
    }
  }
  return block;
}

}  // namespace

CoarseGrainedPropagator::CoarseGrainedPropagator(const kernels::SplitStepFactors& factors, double epsilon,
                                                 int xi_max)
    : n_(static_cast<int>(factors.position_phase.size())), r_(xi_max), m_(2 * xi_max + 1), eps_(epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("CoarseGrainedPropagator: epsilon must be >= 0");
  if (xi_max < 0) throw InvalidArgument("CoarseGrainedPropagator: xi_max must be >= 0");
  if (m_ > n_) throw InvalidArgument("CoarseGrainedPropagator: 2 xi_max + 1 must not exceed N");
  if (factors.momentum_phase.size() != factors.position_phase.size())
    throw InvalidArgument("CoarseGrainedPropagator: factor size mismatch");

  kick_.resize(static_cast<std::size_t>(m_));
  drift_.resize(static_cast<std::size_t>(m_));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m_; ++i) {
    // kick: (a, b) -> (a, b + k), k = b_out - b_in
    kick_[static_cast<std::size_t>(i)] = stage_block(factors.position_phase, i - r_, r_, +1);
    // drift: (a, b) -> (a - k, b), k = a_in - a_out
    drift_[static_cast<std::size_t>(i)] = stage_block(factors.momentum_phase, i - r_, r_, -1);
  }
  damping_.resize(m_ * m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) {
      const double qa = a - r_;
      const double pb = b - r_;
      damping_[a * m_ + b] = std::exp(-eps_ * (qa * qa + pb * pb));
    }
}

int CoarseGrainedPropagator::index(qmap::Displacement xi) const {
  if (std::abs(xi.q) > r_ || std::abs(xi.p) > r_) throw InvalidArgument("CoarseGrainedPropagator: outside box");
  return static_cast<int>((xi.q + r_) * m_ + (xi.p + r_));
}

qmap::Displacement CoarseGrainedPropagator::displacement(int index) const {
  return {index / m_ - r_, index % m_ - r_};
}

void CoarseGrainedPropagator::apply(const CVector& x, CVector& y) const {
  if (x.size() != dimension()) throw InvalidArgument("CoarseGrainedPropagator::apply: size mismatch");
  y.resize(dimension());
  Eigen::Map<const RowMajor> xin(x.data(), m_, m_);
  RowMajor mid(m_, m_);
  Eigen::Map<RowMajor> out(y.data(), m_, m_);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int a = 0; a < m_; ++a)
      mid.row(a).transpose().noalias() = kick_[static_cast<std::size_t>(a)] * xin.row(a).transpose();
#pragma omp for schedule(static)
    for (int b = 0; b < m_; ++b) out.col(b).noalias() = drift_[static_cast<std::size_t>(b)] * mid.col(b);
  }
  y.array() *= damping_.array();
}

void CoarseGrainedPropagator::apply_serial(const CVector& x, CVector& y) const {
  if (x.size() != dimension()) throw InvalidArgument("CoarseGrainedPropagator::apply_serial: size mismatch");
  std::vector<cplx> mid(static_cast<std::size_t>(m_ * m_));
  for (int a = 0; a < m_; ++a) {
    const CMatrix& k = kick_[static_cast<std::size_t>(a)];
    for (int bo = 0; bo < m_; ++bo) {
      cplx s{0.0, 0.0};
      for (int bi = 0; bi < m_; ++bi) s += k(bo, bi) * x[a * m_ + bi];
      mid[static_cast<std::size_t>(a * m_ + bo)] = s;
    }
  }
  y.resize(dimension());
  for (int b = 0; b < m_; ++b) {
    const CMatrix& d = drift_[static_cast<std::size_t>(b)];
    for (int ao = 0; ao < m_; ++ao) {
      cplx s{0.0, 0.0};
      for (int ai = 0; ai < m_; ++ai) s += d(ao, ai) * mid[static_cast<std::size_t>(ai * m_ + b)];
      y[ao * m_ + b] = s * damping_[ao * m_ + b];
    }
  }
}

CMatrix CoarseGrainedPropagator::dense() const {
  const int dim = dimension();
  CMatrix p(dim, dim);
  CVector e = CVector::Zero(dim);
  CVector col(dim);
  for (int j = 0; j < dim; ++j) {
    e[j] = 1.0;
    apply(e, col);
    p.col(j) = col;
    e[j] = 0.0;
  }
  return p;
}

RprEstimate rpr_spectrum(const qmap::QuantizedMap& qm, const RprOptions& options) {
  if (!(options.epsilon > 0.0)) throw InvalidArgument("rpr_spectrum: epsilon must be > 0");
  if (options.xi_max < 4) throw InvalidArgument("rpr_spectrum: xi_max must be >= 4");
  if (options.k < 1) throw InvalidArgument("rpr_spectrum: k must be >= 1");
  const CoarseGrainedPropagator prop(qm.factors, options.epsilon, options.xi_max);

  ArnoldiOptions ao;
  ao.nev = options.k + 1;
  ao.krylov_dim = options.krylov_dim;
  ao.tol = options.tol;
  ao.max_restarts = options.max_restarts;
  ao.seed = options.seed;
  const auto res = arnoldi_largest([&](const CVector& x, CVector& y) { prop.apply(x, y); }, prop.dimension(), ao);

  RprEstimate est;
  est.epsilon = options.epsilon;
  est.xi_max = options.xi_max;
  est.converged = res.converged;
  est.matvecs = res.matvecs;
  bool found = false;
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    const cplx theta = res.values[i];
    if (!found && std::abs(theta - 1.0) < 1e-6) {
      est.trivial = theta;
      found = true;
      continue;
    }
    if (est.resonances.size() == static_cast<std::size_t>(options.k)) break;
    if (std::abs(theta) > 1.0 + 1e-8)
      throw NumericalError("rpr_spectrum: eigenvalue of modulus " + std::to_string(std::abs(theta)) +
                           " exceeds 1; the coarse-grained propagator is not contracting");
    est.resonances.push_back(theta);
    est.residuals.push_back(res.residuals[i]);
  }
  if (!found) throw NumericalError("rpr_spectrum: trivial eigenvalue 1 not resolved to 1e-6; enlarge xi_max");
  return est;
}

nlohmann::json to_json(const RprEstimate& est) {
  nlohmann::json j;
  j["epsilon"] = est.epsilon;
  j["xi_max"] = est.xi_max;
  j["converged"] = est.converged;
  j["matvecs"] = est.matvecs;
  j["trivial"] = {est.trivial.real(), est.trivial.imag()};
  j["resonances"] = nlohmann::json::array();
  j["moduli"] = nlohmann::json::array();
  for (const auto& r : est.resonances) {
    j["resonances"].push_back({r.real(), r.imag()});
    j["moduli"].push_back(std::abs(r));
  }
  j["residuals"] = est.residuals;
  return j;
}

}  // namespace otoclab::chaoskit
