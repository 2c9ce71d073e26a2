// Acceptance checks. Prints detail lines, then one PASS/FAIL line per criterion.
//   acceptance [--criterion N] [--workers W]

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "otoclab/chaoskit/rpr.hpp"
#include "otoclab/cli/config.hpp"
#include "otoclab/cli/sweep.hpp"
#include "otoclab/common.hpp"
#include "otoclab/otoc/engine.hpp"
#include "otoclab/otoc/fit.hpp"
#include "otoclab/qmap/quantize.hpp"
#include "otoclab/qmap/schwinger.hpp"
#include "otoclab/spinchain/chain.hpp"

using namespace otoclab;
using nlohmann::json;

namespace {

int g_workers = 1;
const double kCatLambda = std::log((3.0 + std::sqrt(5.0)) / 2.0);

void detail(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void detail(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  std::printf("  ");
  std::vprintf(fmt, ap);
  std::printf("\n");
  va_end(ap);
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// ---- 1 ------------------------------------------------------------------

bool criterion1() {
  const int n = 1024;
  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.0, {}}, n, false);
  const auto s = otoc::map_otoc(qm, 14);
  double err_c = 0.0, err_d = 0.0, err_i = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto a = otoc::cat_otoc_analytic(n, qmap::IntMatrix2::arnold_cat(), s.times[i]);
    err_c = std::max(err_c, std::abs(s.C[i] - a.C));
    err_d = std::max(err_d, std::abs(s.D[i] - 0.25));
    err_i = std::max(err_i, std::abs(s.I[i] - 0.25));
  }
  detail("N=1024 K=0 t<=14: max|C - sin^2(pi a_t/N)| = %.3e, max|D-1/4| = %.3e, max|I-1/4| = %.3e", err_c, err_d,
         err_i);
  return err_c < 1e-9 && err_d < 1e-10 && err_i < 1e-10;
}

// ---- 2 ------------------------------------------------------------------

bool criterion2() {
  const int n = 1024;
  bool ok = true;
  const double target = 2.0 * kCatLambda;
  for (auto [K, tol] : {std::pair{0.0, 0.05}, std::pair{0.02, 0.10}}) {
    const auto qm = qmap::quantize({qmap::MapKind::cat, K, {}}, n, false);
    const auto s = otoc::map_otoc(qm, 12);
    const auto fit = otoc::fit_growth_rate(s, {3, 12});
    const auto early = otoc::fit_growth_rate(s, {2, 6});
    const double rel = std::abs(fit.rate - target) / target;
    detail("K=%g: Lambda[3,12] = %.5f, 2 lambda = %.5f, ratio %.4f (tolerance %g%%)", K, fit.rate, target,
           fit.rate / target, tol * 100);
    detail("K=%g: supplementary Lambda[2,6] = %.5f, ratio %.4f; t_E = %.2f", K, early.rate, early.rate / target,
           otoc::ehrenfest_time(kCatLambda, n).t_E);
    ok = ok && rel < tol;
  }
  return ok;
}

// ---- 3 ------------------------------------------------------------------

bool criterion3() {
  const int n = 1024;
  const std::vector<std::pair<double, double>> cases = {{0.25, 0.698}, {0.275, 0.822}, {0.325, 0.864}};
  bool ok = true;
  for (auto [K, expected] : cases) {
    const qmap::TorusMap map{qmap::MapKind::cat, K, {}};
    const double lambda = qmap::lyapunov_exponent(map).exponent;
    const auto te = otoc::ehrenfest_time(lambda, n);
    const auto w = otoc::default_decay_window(te);
    const auto qm = qmap::quantize(map, n, false);
    const auto s = otoc::map_otoc(qm, static_cast<int>(w.end));
    const auto fit = otoc::fit_decay_rate(s.times_as_double(), s.abs_F(), w);
    const double from_f = otoc::resonance_modulus(fit);
    const auto est = chaoskit::rpr_spectrum(qm, {});
    const double alpha = std::abs(est.resonances.front());
    const bool match = std::abs(from_f - alpha) / alpha <= 0.10;
    const bool expected_ok = std::abs(alpha - expected) <= 0.03;
    detail("K=%g: lambda=%.4f window [%g,%g]; |F| decay modulus %.4f; rpr |alpha_1| %.5f (converged %d); expected %.3f",
           K, lambda, w.begin, w.end, from_f, alpha, est.converged ? 1 : 0, expected);
    detail("K=%g: decay vs rpr within 10%%: %s; rpr vs expected within 0.03: %s", K, match ? "yes" : "no",
           expected_ok ? "yes" : "no");
    ok = ok && match && expected_ok;
  }
  return ok;
}

// ---- 4 ------------------------------------------------------------------

bool criterion4() {
  const int L = 9, n_up = 5, realizations = 20;
  const std::vector<int> seps = {1, 2, 3};
  std::vector<double> times;
  for (int k = 2; k <= 20; ++k) times.push_back(0.01 * k);
  RMatrix mean = RMatrix::Zero(3, static_cast<Eigen::Index>(times.size()));
  for (int r = 0; r < realizations; ++r) {
    const auto m = spinchain::make_model(L, n_up, 1.0, 2024, static_cast<std::uint64_t>(r));
    mean += spinchain::chain_otoc(m, seps, times).C;
  }
  mean /= realizations;
  bool ok = true;
  for (int j = 0; j < 3; ++j) {
    const int l = seps[static_cast<std::size_t>(j)];
    std::vector<double> lt, y;
    for (std::size_t k = 0; k < times.size(); ++k) {
      lt.push_back(std::log(times[k]));
      y.push_back(mean(j, static_cast<Eigen::Index>(k)));
    }
    const auto fit = otoc::fit_log_linear(lt, y, {std::log(0.02) - 1e-9, std::log(0.2) + 1e-9});
    const double fact = std::tgamma(l + 1.0);
    const double prefactor = std::exp(fit.intercept);
    const double predicted = 1.0 / (2.0 * fact * fact);
    const bool slope_ok = std::abs(fit.rate - 2.0 * l) / (2.0 * l) < 0.02;
    const bool pref_ok = std::abs(prefactor / predicted - 1.0) < 0.20;
    detail("l=%d: slope %.5f (2l = %d, %s); prefactor %.5g vs 1/(2(l!)^2) = %.5g, ratio %.4f (%s)", l, fit.rate, 2 * l,
           slope_ok ? "ok" : "off", prefactor, predicted, prefactor / predicted, pref_ok ? "ok" : "off");
    ok = ok && slope_ok && pref_ok;
  }
  detail("L=%d n_up=%d h=1, %d realizations, t in [0.02, 0.2], sector-normalized trace", L, n_up, realizations);
  return ok;
}

// ---- 5 ------------------------------------------------------------------

std::map<double, std::vector<std::vector<double>>> per_value(const cli::SweepResult& res, const cli::SweepSpec& spec) {
  // value -> column -> numbers over realizations
  std::map<double, std::vector<std::vector<double>>> out;
  const std::size_t ncol = res.schema.value_columns.size();
  for (const auto& cell : res.cells) {
    auto& cols = out[spec.values[static_cast<std::size_t>(cell.value_index)]];
    cols.resize(ncol);
    if (!cell.output) continue;
    for (std::size_t c = 0; c < ncol; ++c)
      if (cell.output->values.front()[c].has_number()) cols[c].push_back(cell.output->values.front()[c].x);
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

bool criterion5() {
  const std::vector<double> hs = {0.5, 1, 2, 4, 8};
  const json ind = {{"task", "sweep"}, {"inner", "indicators"}, {"axis", "h"},   {"values", hs},
                    {"L", 9},          {"nup", 5},              {"l", {1}},      {"dt", 0.5},
                    {"window", {200, 400}}, {"realizations", 100}, {"seed", 20180601}};
  const auto ic = cli::RunConfig::from_json(ind);
  const auto ispec = cli::sweep_spec_from(ic);
  const auto ires = cli::execute(ispec, ic.seed, g_workers);
  const auto ivals = per_value(ires, ispec);

  const json spec13 = {{"task", "sweep"}, {"inner", "chain-spectrum"}, {"axis", "h"}, {"values", hs},
                       {"L", 13}, {"nup", 5}, {"realizations", 20}, {"seed", 20180602}};
  const auto sc = cli::RunConfig::from_json(spec13);
  const auto sspec = cli::sweep_spec_from(sc);
  const auto sres = cli::execute(sspec, sc.seed, g_workers);
  const auto svals = per_value(sres, sspec);

  std::vector<double> xi, inv_sigma, beta;
  for (double h : hs) {
    const auto& c = ivals.at(h);
    xi.push_back(mean_of(c[0]));
    inv_sigma.push_back(1.0 / mean_of(c[1]));
    beta.push_back(mean_of(svals.at(h)[0]));
    detail("h=%g: xi=%.4f (n=%zu) 1/sigma=%.4f brody(L=13)=%.4f (n=%zu) gap ratio(L=9)=%.4f", h, xi.back(),
           c[0].size(), inv_sigma.back(), beta.back(), svals.at(h)[0].size(), mean_of(c[3]));
  }
  detail("failed cells: indicators %d, spectrum %d", ires.failures, sres.failures);

  auto argmax = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  };
  auto chaotic_peak = [&](const std::vector<double>& v) { return argmax(v) <= 1; };
  auto decreasing_tail = [](const std::vector<double>& v) { return v[2] > v[3] && v[3] > v[4]; };
  // every pair involving h >= 2 is ordered the same way as by beta
  auto same_order = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = std::max<std::size_t>(i + 1, 2); j < v.size(); ++j)
        if ((v[i] > v[j]) != (beta[i] > beta[j])) return false;
    return true;
  };
  bool ok = true;
  for (auto [name, v] : {std::pair{"xi", &xi}, std::pair{"1/sigma", &inv_sigma}}) {
    const bool a = chaotic_peak(*v), b = decreasing_tail(*v), c = same_order(*v);
    detail("%s: peak at h<=1 %s, decreasing for h>=2 %s, ordering as brody %s", name, a ? "yes" : "no",
           b ? "yes" : "no", c ? "yes" : "no");
    ok = ok && a && b && c;
  }
  detail("brody: peak at h<=1 %s, decreasing for h>=2 %s", chaotic_peak(beta) ? "yes" : "no",
         decreasing_tail(beta) ? "yes" : "no");
  return ok && ires.failures == 0 && sres.failures == 0;
}

// ---- 6 ------------------------------------------------------------------

CMatrix site_z(int site, int L) {
  const int d = 1 << L;
  CMatrix m = CMatrix::Zero(d, d);
  for (int s = 0; s < d; ++s) m(s, s) = ((s >> site) & 1) ? 1.0 : -1.0;
  return m;
}

// Full-space heisenberg chain from explicit spin flips, then restricted to the sector.
double chain_oracle(const spinchain::SpinChainModel& m, int l, double t) {
  const int L = m.L, d = 1 << L;
  CMatrix h = CMatrix::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    for (int i = 0; i + 1 < L; ++i) {
      const int a = (s >> i) & 1, b = (s >> (i + 1)) & 1;
      h(s, s) += (a == b ? 0.25 : -0.25) * m.coupling;
      if (a != b) h(s ^ (3 << i), s) += 0.5 * m.coupling;
    }
    for (int i = 0; i < L; ++i) h(s, s) += 0.5 * m.fields[static_cast<std::size_t>(i)] * (((s >> i) & 1) ? 1 : -1);
  }
  std::vector<int> idx;
  for (int s = 0; s < d; ++s)
    if (std::popcount(static_cast<unsigned>(s)) == m.n_up) idx.push_back(s);
  const int n = static_cast<int>(idx.size());
  auto restrict = [&](const CMatrix& a) {
    CMatrix o(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) o(r, c) = a(idx[r], idx[c]);
    return o;
  };
  Eigen::SelfAdjointEigenSolver<CMatrix> es(restrict(h));
  const CVector ph = (es.eigenvalues().cast<cplx>() * cplx(0, -t)).array().exp();
  const CMatrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix w = u.adjoint() * restrict(site_z(0, L)) * u;
  const CMatrix v = restrict(site_z(l, L));
  return 1.0 - (w * v * w * v).trace().real() / n;
}

bool criterion6() {
  const int n = 8;
  double worst_map = 0.0;
  for (qmap::MapKind k : {qmap::MapKind::cat, qmap::MapKind::standard, qmap::MapKind::harper})
    for (double K : {0.0, 0.02, 0.3}) {
      // brute force: U from the explicit DFT matrix, Q and P from their spectral forms
      CMatrix f(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) f(a, b) = std::polar(1.0 / std::sqrt(n), -kTwoPi * a * b / n);
      const auto qm = qmap::quantize({k, K, {}}, n);
      const CMatrix u = f.adjoint() * qm.factors.momentum_phase.asDiagonal() * f * qm.factors.position_phase.asDiagonal();
      CMatrix q = CMatrix::Zero(n, n), pd = CMatrix::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        q(j, j) = std::sin(kTwoPi * j / n);
        pd(j, j) = -std::sin(kTwoPi * j / n);
      }
      const CMatrix p = f.adjoint() * pd * f;
      const auto fast = otoc::map_otoc(qm, 12);
      const auto dense = otoc::otoc_series(otoc::DensePropagator(qm.U), q, otoc::Observable::dense(p), 12);
      const auto plain = otoc::otoc_series(qm.U, q, p, 12);
      CMatrix wt = q;
      for (int t = 0; t <= 12; ++t) {
        const CMatrix c = wt * p - p * wt;
        const double C = (c.adjoint() * c).trace().real() / n;
        const cplx F = (wt.adjoint() * p.adjoint() * wt * p).trace() / static_cast<double>(n);
        const double D = (p.adjoint() * wt.adjoint() * wt * p).trace().real() / n;
        const double I = (wt.adjoint() * p.adjoint() * p * wt).trace().real() / n;
        for (const auto* s : {&fast, &dense, &plain})
          worst_map = std::max({worst_map, std::abs(s->C[t] - C), std::abs(s->F[t] - F), std::abs(s->D[t] - D),
                                std::abs(s->I[t] - I)});
        wt = u.adjoint() * wt * u;
      }
    }
  detail("maps at N=8 (split-step, dense propagator, dense series) vs brute force: max error %.3e", worst_map);

  double worst_chain = 0.0;
  const std::vector<double> times = {0.0, 0.1, 0.7, 2.0, 5.0, 20.0};
  const std::vector<int> seps = {1, 2, 3};
  for (int n_up : {1, 2, 3})
    for (double h : {0.0, 1.0, 5.0}) {
      const auto m = spinchain::make_model(4, n_up, h, 99, static_cast<std::uint64_t>(n_up));
      const auto res = spinchain::chain_otoc(m, seps, times);
      for (std::size_t j = 0; j < seps.size(); ++j)
        for (std::size_t k = 0; k < times.size(); ++k)
          worst_chain = std::max(worst_chain, std::abs(res.C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -
                                                       chain_oracle(m, seps[j], times[k])));
    }
  detail("chains at L=4 vs brute force: max error %.3e", worst_chain);
  return worst_map < 1e-12 && worst_chain < 1e-12;
}

// ---- 7 ------------------------------------------------------------------

bool criterion7() {
  bool ok = true;
  auto report = [&](const char* what, bool pass, double value) {
    detail("%-44s %s (%.3e)", what, pass ? "ok" : "FAILED", value);
    ok = ok && pass;
  };

  double unit = 0.0;
  for (qmap::MapKind k : {qmap::MapKind::cat, qmap::MapKind::standard, qmap::MapKind::harper})
    for (int n : {2, 17, 256}) {
      const auto qm = qmap::quantize({k, 0.3, {}}, n);
      unit = std::max(unit, max_abs(qm.U.adjoint() * qm.U - CMatrix::Identity(n, n)));
    }
  report("unitarity of quantized maps", unit < 1e-12, unit);

  Rng r(7);
  double weyl = 0.0;
  for (int n : {3, 16, 31})
    for (int i = 0; i < 20; ++i) {
      auto draw = [&] { return static_cast<long long>(std::floor(r.uniform(-50, 50))); };
      const qmap::Displacement a{draw(), draw()}, b{draw(), draw()};
      const CMatrix lhs = qmap::translation_op(n, a) * qmap::translation_op(n, b);
      const CMatrix rhs = qmap::tau_power(qmap::symplectic(a, b), n) * qmap::translation_op(n, {a.q + b.q, a.p + b.p});
      weyl = std::max(weyl, max_abs(lhs - rhs));
    }
  report("Weyl composition of translations", weyl < 1e-12, weyl);

  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.0, {}}, 1024, false);
  double cov = 1.0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      cov = std::min(cov, qmap::translation_fidelity(qm, qmap::IntMatrix2::arnold_cat(), {a, b}));
  report("translation covariance at K=0, N=1024", cov > 1.0 - 1e-10, 1.0 - cov);

  const auto s = otoc::map_otoc(qmap::quantize({qmap::MapKind::standard, 2.0, {}}, 128, false), 20);
  double dec = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) dec = std::max(dec, std::abs(s.C[i] - (s.D[i] + s.I[i] - 2 * s.F[i].real())));
  report("C = D + I - 2 Re F", dec < 1e-12, dec);

  const auto um = qmap::quantize({qmap::MapKind::cat, 0.1, {}}, 64);
  const auto us = otoc::otoc_series(um.U, qmap::translation_op(64, {1, 0}), qmap::translation_op(64, {0, 1}), 15);
  double uni = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) uni = std::max(uni, std::abs(us.C[i] - 2.0 * (1.0 - us.F[i].real())));
  report("C = 2(1 - Re F) for unitary W, V", uni < 1e-12, uni);

  const json sweep = {{"task", "sweep"}, {"inner", "indicators"}, {"axis", "h"}, {"values", {0.5, 4.0}},
                      {"L", 8}, {"nup", 4}, {"realizations", 4}, {"window", {20, 60}}, {"dt", 0.5}, {"seed", 3}};
  const auto c = cli::RunConfig::from_json(sweep);
  const auto spec = cli::sweep_spec_from(c);
  const auto one = cli::execute(spec, c.seed, 1);
  const auto many = cli::execute(spec, c.seed, 4);
  const bool same = one.cells_csv.str() == many.cells_csv.str() && one.aggregate_csv.str() == many.aggregate_csv.str();
  report("sweep tables identical with 1 and 4 workers", same, same ? 0.0 : 1.0);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  g_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) g_workers = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--workers W]\n");
      return 2;
    }
  }
  const std::vector<std::pair<int, std::function<bool()>>> all = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}};
  bool ok = true;
  for (const auto& [id, fn] : all) {
    if (only != 0 && only != id) continue;
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      detail("exception: %s", e.what());
    }
    std::printf("criterion %d: %s\n", id, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
    ok = ok && pass;
  }
  return ok ? 0 : 1;
}
