#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "otoclab/chaoskit/arnoldi.hpp"
#include "otoclab/chaoskit/indicators.hpp"
#include "otoclab/chaoskit/rpr.hpp"
#include "otoclab/chaoskit/spectral.hpp"
#include "otoclab/common.hpp"
#include "otoclab/otoc/engine.hpp"
#include "otoclab/qmap/quantize.hpp"
#include "otoclab/qmap/schwinger.hpp"

using namespace otoclab;
using namespace otoclab::chaoskit;

namespace {

// participation number of the one-sided power spectrum by direct summation
double xi_oracle(const std::vector<double>& x) {
  const int w = static_cast<int>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= w;
  std::vector<double> p;
  double total = 0.0;
  for (int k = 1; k <= w / 2; ++k) {
    cplx s{0, 0};
    for (int n = 0; n < w; ++n) s += (x[static_cast<std::size_t>(n)] - mean) * std::polar(1.0, -kTwoPi * k * n / w);
    p.push_back(std::norm(s));
    total += p.back();
  }
  double q = 0.0;
  for (double v : p) q += (v / total) * (v / total);
  return 1.0 / q;
}

std::vector<double> brody_sample(double beta, int n, std::uint64_t seed) {
  Rng r(seed);
  const double b = brody_b(beta);
  std::vector<double> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = std::pow(-std::log(1.0 - r.uniform()) / b, 1.0 / (beta + 1.0));
  return s;
}

RMatrix goe(int n, Rng& r) {
  RMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = r.normal();
  return (a + a.transpose()) / 2.0;
}

std::vector<double> to_vector(const RVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("xi of a pure sinusoid is one") {
  std::vector<double> x(256);
  for (int n = 0; n < 256; ++n) x[static_cast<std::size_t>(n)] = 0.3 + std::cos(kTwoPi * 12 * n / 256.0);
  CHECK(xi_otoc(x).value() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("xi of white noise matches direct summation") {
  Rng r(4);
  for (int w : {64, 101, 401}) {
    std::vector<double> x(static_cast<std::size_t>(w));
    for (auto& v : x) v = r.normal();
    CHECK(xi_otoc(x).value() == doctest::Approx(xi_oracle(x)).epsilon(1e-10));
  }
}

TEST_CASE("xi invariances and degenerate input") {
  Rng r(6);
  std::vector<double> x(200), y(200);
  for (auto& v : x) v = r.uniform();
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 5.0 + 3.0 * x[i];
  CHECK(xi_otoc(x).value() == doctest::Approx(xi_otoc(y).value()).epsilon(1e-10));
  CHECK(!xi_otoc(std::vector<double>(64, 0.7)).has_value());
  CHECK(!xi_otoc(std::vector<double>(64, 0.0)).has_value());
  CHECK_THROWS_AS(xi_otoc(std::vector<double>(8, 1.0)), InvalidArgument);
}

TEST_CASE("sigma_otoc") {
  CHECK(sigma_otoc(std::vector<double>{1, 1, 1}) == 0.0);
  CHECK(sigma_otoc(std::vector<double>{0, 2}) == doctest::Approx(1.0));
  CHECK(sigma_otoc(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(std::sqrt(1.25)));
  CHECK_THROWS_AS(sigma_otoc(std::vector<double>{1}), InvalidArgument);
}

TEST_CASE("window selection is closed") {
  const std::vector<double> t = {0, 1, 2, 3, 4}, v = {10, 11, 12, 13, 14};
  CHECK(select_window(t, v, {1, 3}) == std::vector<double>{11, 12, 13});
}

TEST_CASE("brody density") {
  CHECK(brody_b(0.0) == doctest::Approx(1.0));
  CHECK(brody_b(1.0) == doctest::Approx(kPi / 4.0));
  CHECK(brody_pdf(1.0, 0.0) == doctest::Approx(std::exp(-1.0)));
  for (double beta : {0.0, 0.5, 1.0}) {
    double norm = 0.0, mean = 0.0;
    const double ds = 1e-4;
    for (double s = ds / 2; s < 40.0; s += ds) {
      norm += brody_pdf(s, beta) * ds;
      mean += s * brody_pdf(s, beta) * ds;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("brody fit recovers the sampling parameter") {
  for (double beta : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto s = brody_sample(beta, 20000, 100 + static_cast<std::uint64_t>(beta * 10));
    CHECK(std::abs(brody_fit(s) - beta) < 0.03);
  }
  auto s = brody_sample(0.5, 2000, 1);
  const double a = brody_fit(s);
  for (auto& v : s) v *= 7.5;
  CHECK(brody_fit(s) == doctest::Approx(a).epsilon(1e-6));
  CHECK_THROWS_AS(brody_fit(std::vector<double>(100, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(brody_fit(std::vector<double>(300, 1.0)), InvalidArgument);
}

TEST_CASE("unfolding a uniform spectrum gives unit spacings") {
  std::vector<double> e(500);
  for (int i = 0; i < 500; ++i) e[static_cast<std::size_t>(i)] = 2.0 + 0.5 * i;
  const auto s = unfold_spacings(e);
  CHECK(s.size() == 299);
  for (double v : s) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  std::swap(e[3], e[4]);
  CHECK_THROWS_AS(unfold_spacings(e), InvalidArgument);
}

TEST_CASE("gap ratio of poisson levels") {
  Rng r(12);
  std::vector<double> e(200000);
  double x = 0.0;
  for (auto& v : e) v = (x += -std::log(1.0 - r.uniform()));
  CHECK(std::abs(gap_ratio(e) - (2.0 * std::log(2.0) - 1.0)) < 0.005);
}

TEST_CASE("gap ratio of GOE matrices") {
  Rng r(13);
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(goe(200, r), Eigen::EigenvaluesOnly);
    sum += gap_ratio(to_vector(es.eigenvalues()));
  }
  CHECK(std::abs(sum / 200 - 0.5307) < 0.01);
}

TEST_CASE("gap ratio edge cases") {
  std::vector<double> e(100);
  for (int i = 0; i < 100; ++i) e[static_cast<std::size_t>(i)] = i;
  CHECK(gap_ratio(e) == doctest::Approx(1.0));

  Rng r(2);
  double x = 0.0;
  for (auto& v : e) v = (x += r.uniform());
  std::vector<double> f(e);
  for (auto& v : f) v = -4.0 + 3.0 * v;
  CHECK(gap_ratio(f) == doctest::Approx(gap_ratio(e)).epsilon(1e-12));

  e[10] = e[11];
  CHECK_THROWS_AS(gap_ratio(e), DegenerateSpectrum);
  CHECK_THROWS_AS(gap_ratio(std::vector<double>(10, 0.0)), InvalidArgument);
}

TEST_CASE("inverse participation ratio") {
  CHECK(ipr(RMatrix(RMatrix::Identity(5, 5))) == doctest::Approx(1.0));
  CHECK(ipr(RMatrix(RMatrix::Constant(4, 1, 0.5))) == doctest::Approx(4.0));
  const auto per = ipr_per_vector(RMatrix::Identity(3, 3));
  CHECK(per == std::vector<double>{1.0, 1.0, 1.0});

  Rng r(19);
  const int d = 126;
  RMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = r.normal();
  Eigen::HouseholderQR<RMatrix> qr(a);
  const RMatrix q = qr.householderQ() * RMatrix::Identity(d, d);
  CHECK(std::abs(ipr(q) / ((d + 2) / 3.0) - 1.0) < 0.05);

  CHECK_THROWS_AS(ipr(RMatrix(RMatrix::Constant(4, 1, 1.0))), InvalidArgument);
}

TEST_CASE("arnoldi agrees with a dense eigensolver") {
  Rng r(31);
  const int n = 300;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {r.normal() / std::sqrt(n), r.normal() / std::sqrt(n)};
  for (int i = 0; i < 4; ++i) a(i, i) += 1.5 + 0.2 * i;

  ArnoldiOptions o;
  o.nev = 4;
  const auto res = arnoldi_largest([&](const CVector& x, CVector& y) { y = a * x; }, n, o);
  REQUIRE(res.converged);

  Eigen::ComplexEigenSolver<CMatrix> es(a, false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(res.values[static_cast<std::size_t>(i)] - ev[static_cast<std::size_t>(i)]) < 1e-8);
    CHECK(res.residuals[static_cast<std::size_t>(i)] < 1e-8);
  }
  const auto again = arnoldi_largest([&](const CVector& x, CVector& y) { y = a * x; }, n, o);
  CHECK(again.values == res.values);
}

TEST_CASE("coarse-grained propagator against direct traces") {
  const int n = 16;
  const int R = 3;
  const double eps = 0.05;
  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.1, {}}, n);
  const CoarseGrainedPropagator prop(qm.factors, eps, R);
  const CMatrix p = prop.dense();
  double worst = 0.0;
  for (int row = 0; row < prop.dimension(); ++row) {
    const auto xi = prop.displacement(row);
    const CMatrix txi = qmap::translation_op(n, xi);
    for (int col = 0; col < prop.dimension(); ++col) {
      const CMatrix tchi = qmap::translation_op(n, prop.displacement(col));
      const cplx direct = (txi.adjoint() * qm.U * tchi * qm.U.adjoint()).trace() / static_cast<double>(n) *
                          std::exp(-eps * static_cast<double>(xi.q * xi.q + xi.p * xi.p));
      worst = std::max(worst, std::abs(direct - p(row, col)));
    }
  }
  CHECK(worst < 1e-12);

  CVector x = CVector::Random(prop.dimension()), y1, y2;
  prop.apply(x, y1);
  prop.apply_serial(x, y2);
  CHECK((y1 - y2).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(prop.index(prop.displacement(17)) == 17);
  CHECK(prop.index({0, 0}) == R * (2 * R + 1) + R);
  CHECK_THROWS_AS(CoarseGrainedPropagator(qm.factors, eps, 8), InvalidArgument);
}

TEST_CASE("resonances lie in the unit disk") {
  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.25, {}}, 256, false);
  RprOptions o;
  o.xi_max = 20;
  const auto est = rpr_spectrum(qm, o);
  CHECK(std::abs(est.trivial - 1.0) < 1e-6);
  REQUIRE(est.resonances.size() == 3);
  for (std::size_t i = 0; i < est.resonances.size(); ++i) {
    CHECK(std::abs(est.resonances[i]) <= 1.0);
    if (i > 0) CHECK(std::abs(est.resonances[i]) <= std::abs(est.resonances[i - 1]) + 1e-12);
  }
  o.xi_max = 2;
  CHECK_THROWS_AS(rpr_spectrum(qm, o), InvalidArgument);
}

TEST_CASE("xi separates a regular harper map from a chaotic one") {
  const int n = 64;
  const chaoskit::TimeWindow w{100, 400};
  auto xi_for = [&](double K) {
    const auto qm = qmap::quantize({qmap::MapKind::harper, K, {}}, n, false);
    const auto s = otoc::map_otoc(qm, 400);
    const auto t = s.times_as_double();
    return xi_otoc(select_window(t, s.C, w)).value();
  };
  CHECK(xi_for(0.05) < xi_for(1.5));
}

TEST_CASE("leading resonance is stable under refinement of the coarse graining") {
  for (double K : {0.25, 0.275, 0.325}) {
    const auto qm = qmap::quantize({qmap::MapKind::cat, K, {}}, 1024, false);
    RprOptions coarse, fine;
    fine.epsilon = coarse.epsilon / 2;
    fine.xi_max = coarse.xi_max * 2;
    const double a = std::abs(rpr_spectrum(qm, coarse).resonances.front());
    const double b = std::abs(rpr_spectrum(qm, fine).resonances.front());
    CHECK(std::abs(a - b) < 0.02);
  }
}
