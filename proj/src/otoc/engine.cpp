#include "otoclab/otoc/engine.hpp"

#include <cmath>

#include "otoclab/kernels/fft.hpp"

namespace otoclab::otoc {

void OtocSeries::push_back(int t, const kernels::CorrelatorTraces& tr) {
  times.push_back(t);
  C.push_back(tr.C);
  F.push_back(tr.F);
  D.push_back(tr.D);
  I.push_back(tr.I);
}

std::vector<double> OtocSeries::times_as_double() const { return {times.begin(), times.end()}; }

std::vector<double> OtocSeries::abs_F() const {
  std::vector<double> out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(std::abs(f));
  return out;
}

DensePropagator::DensePropagator(CMatrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols()) throw InvalidArgument("DensePropagator: U must be square");
}

void DensePropagator::heisenberg(CMatrix& w) const {
  CMatrix scratch;
  kernels::conjugate_dense(w, u_, scratch);
}

SplitStepPropagator::SplitStepPropagator(kernels::SplitStepFactors factors) : conj_(std::move(factors)) {}

SplitStepPropagator::SplitStepPropagator(const qmap::QuantizedMap& qm) : conj_(qm.factors) {}

Observable Observable::dense(CMatrix m, std::string name) {
  if (m.rows() != m.cols()) throw InvalidArgument("Observable: matrix must be square");
  Observable o;
  o.form = Form::dense;
  o.matrix = std::move(m);
  o.name = std::move(name);
  return o;
}

Observable Observable::position_diagonal(CVector d, std::string name) {
  Observable o;
  o.form = Form::position_diagonal;
  o.diagonal = std::move(d);
  o.name = std::move(name);
  return o;
}

Observable Observable::momentum_diagonal(CVector d, std::string name) {
  Observable o = position_diagonal(std::move(d), std::move(name));
  o.form = Form::momentum_diagonal;
  return o;
}

int Observable::dimension() const {
  return static_cast<int>(form == Form::dense ? matrix.rows() : diagonal.size());
}

CMatrix Observable::to_matrix() const {
  switch (form) {
    case Form::dense: return matrix;
    case Form::position_diagonal: return diagonal.asDiagonal();
    case Form::momentum_diagonal: {
      // F^dagger diag(d) F
      const int n = dimension();
      CMatrix m = diagonal.asDiagonal();
      kernels::MatrixFft fft(n);
      fft.columns(m, kernels::FftDirection::backward);
      fft.rows(m, kernels::FftDirection::forward);
      return m;
    }
  }
  return {};
}

Observable position_observable(int n) {
  CVector d(n);
  for (int q = 0; q < n; ++q) d[q] = std::sin(kTwoPi * q / n);
  return Observable::position_diagonal(std::move(d), "Q");
}

Observable momentum_observable(int n) {
  CVector d(n);
  for (int p = 0; p < n; ++p) d[p] = -std::sin(kTwoPi * p / n);
  return Observable::momentum_diagonal(std::move(d), "P");
}

CMatrix heisenberg_evolve(const CMatrix& u, const CMatrix& w, int t) {
  if (t < 0) throw InvalidArgument("heisenberg_evolve: t must be non-negative");
  if (u.rows() != u.cols() || w.rows() != u.rows() || w.cols() != u.cols())
    throw InvalidArgument("heisenberg_evolve: dimension mismatch");
  CMatrix out = w;
  CMatrix scratch;
  for (int s = 0; s < t; ++s) kernels::conjugate_dense(out, u, scratch);
  return out;
}

namespace {

void check_finite(const kernels::CorrelatorTraces& tr, int t) {
  if (!std::isfinite(tr.C) || !std::isfinite(tr.F.real()) || !std::isfinite(tr.F.imag()) ||
      !std::isfinite(tr.D) || !std::isfinite(tr.I))
    throw NumericalError("otoc_series: non-finite correlator at t=" + std::to_string(t));
}

}  // namespace

OtocSeries otoc_series(const CMatrix& u, const CMatrix& w, const CMatrix& v, int t_max) {
  if (u.rows() != u.cols() || w.rows() != u.rows() || w.cols() != u.cols() || v.rows() != u.rows() ||
      v.cols() != u.cols())
    throw InvalidArgument("otoc_series: dimension mismatch");
  return otoc_series(DensePropagator(u), w, Observable::dense(v), t_max);
}

OtocSeries otoc_series(const Propagator& prop, const CMatrix& w, const Observable& v, int t_max) {
  const int n = prop.dimension();
  if (w.rows() != n || w.cols() != n || v.dimension() != n)
    throw InvalidArgument("otoc_series: dimension mismatch");
  if (t_max < 0) throw InvalidArgument("otoc_series: t_max must be non-negative");

  OtocSeries series;
  series.meta["propagator"] = prop.description();
  series.meta["V"] = v.name;
  series.meta["N"] = n;
  series.meta["normalization"] = "Tr(.)/N (maximally mixed state)";

  std::unique_ptr<kernels::MatrixFft> fft;
  if (v.form == Observable::Form::momentum_diagonal) fft = std::make_unique<kernels::MatrixFft>(n);

  CMatrix wt = w;
  CMatrix scratch_a, scratch_b, rotated;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) prop.heisenberg(wt);
    kernels::CorrelatorTraces tr;
    switch (v.form) {
      case Observable::Form::dense:
        tr = kernels::correlator_traces_dense(wt, v.matrix, scratch_a, scratch_b);
        break;
      case Observable::Form::position_diagonal:
        tr = kernels::correlator_traces_diagonal(wt, v.diagonal);
        break;
      case Observable::Form::momentum_diagonal:
        rotated = wt;
        fft->columns(rotated, kernels::FftDirection::forward);
        fft->rows(rotated, kernels::FftDirection::backward);
        tr = kernels::correlator_traces_diagonal(rotated, v.diagonal);
        break;
    }
    check_finite(tr, t);
    series.push_back(t, tr);
  }
  return series;
}

OtocSeries map_otoc(const qmap::QuantizedMap& qm, int t_max) {
  const Observable q = position_observable(qm.N);
  CMatrix w = q.to_matrix();
  OtocSeries s = otoc_series(SplitStepPropagator(qm), w, momentum_observable(qm.N), t_max);
  s.meta["W"] = "Q";
  s.meta["map"] = qmap::to_string(qm.map.kind);
  s.meta["K"] = qm.map.K;
  if (qm.map.kind == qmap::MapKind::harper) s.meta["K2"] = qm.map.second_kick();
  s.meta["map_convention"] = qm.map.convention();
  s.meta["quantization"] = qm.convention();
  return s;
}

AnalyticCatOtoc cat_otoc_analytic(int n, const qmap::IntMatrix2& m, long long t) {
  if (n < 1) throw InvalidArgument("cat_otoc_analytic: N must be positive");
  const qmap::IntMatrix2 mt = qmap::cat_matrix_power(m, t, qmap::BigInt(2 * n));
  AnalyticCatOtoc out;
  out.a_t_mod_2n = mt.a.convert_to<long long>();
  const double a = static_cast<double>(out.a_t_mod_2n);
  const double s = std::sin(kPi * a / n);
  out.C = s * s;
  out.F = std::cos(kTwoPi * a / n) / 4.0;
  return out;
}

EhrenfestEstimate ehrenfest_time(double lambda, int n) {
  if (!(lambda > 0.0)) throw InvalidArgument("ehrenfest_time: lambda must be positive");
  if (n < 2) throw InvalidArgument("ehrenfest_time: N must be >= 2");
  return {std::log(static_cast<double>(n)) / lambda, lambda, n};
}

}  // namespace otoclab::otoc
