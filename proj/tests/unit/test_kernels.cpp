#include <doctest.h>

#include <omp.h>

#include "otoclab/common.hpp"
#include "otoclab/kernels/conjugation.hpp"
#include "otoclab/kernels/fft.hpp"
#include "otoclab/kernels/reference.hpp"

using namespace otoclab;
using namespace otoclab::kernels;

namespace {

CMatrix random_matrix(int n, std::uint64_t seed) {
  Rng r(seed);
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cplx(r.normal(), r.normal());
  return m;
}

CVector random_phases(int n, std::uint64_t seed) {
  Rng r(seed);
  CVector d(n);
  for (int i = 0; i < n; ++i) d[i] = std::polar(1.0, r.uniform(0.0, kTwoPi));
  return d;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("dft of a vector matches the explicit kernel") {
  for (int n : {1, 2, 3, 8, 12, 17}) {
    Rng r(n);
    CVector x(n);
    for (int i = 0; i < n; ++i) x[i] = cplx(r.normal(), r.normal());
    const CMatrix f = reference::dft_matrix(n);
    const CVector fwd = dft(x, FftDirection::forward, FftScale::unitary);
    const CVector bwd = dft(x, FftDirection::backward, FftScale::unitary);
    CHECK((fwd - f * x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((bwd - f.adjoint() * x).cwiseAbs().maxCoeff() < 1e-12);
    const CVector raw = dft(x, FftDirection::forward);
    CHECK((raw - std::sqrt(double(n)) * fwd).cwiseAbs().maxCoeff() < 1e-11);
    const CVector inv = dft(raw, FftDirection::backward, FftScale::inverse);
    CHECK((inv - x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("matrix fft columns and rows") {
  const int n = 12;
  const CMatrix f = reference::dft_matrix(n);
  const CMatrix m = random_matrix(n, 3);
  MatrixFft fft(n);
  CMatrix a = m;
  fft.columns(a, FftDirection::forward);
  CHECK(max_abs(a - f * m) < 1e-12);
  a = m;
  fft.columns(a, FftDirection::backward);
  CHECK(max_abs(a - f.adjoint() * m) < 1e-12);
  a = m;
  fft.rows(a, FftDirection::forward);
  CHECK(max_abs(a - m * f.transpose()) < 1e-12);
  a = m;
  fft.rows(a, FftDirection::backward);
  CHECK(max_abs(a - m * f.conjugate()) < 1e-12);
}

TEST_CASE("split-step unitary equals the explicit product") {
  for (int n : {2, 5, 16}) {
    SplitStepFactors fac{random_phases(n, 1), random_phases(n, 2)};
    const CMatrix u_ref = reference::split_step_unitary(fac);
    SplitStepConjugator conj(fac);
    const CMatrix u = conj.dense();
    CHECK(max_abs(u - u_ref) < 1e-12);
    CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(n, n)) < 1e-12);

    CVector psi = random_matrix(n, 9).col(0);
    const CVector expect = u_ref * psi;
    conj.apply(psi);
    CHECK((psi - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("heisenberg and schrodinger conjugations match dense products") {
  const int n = 16;
  SplitStepFactors fac{random_phases(n, 4), random_phases(n, 5)};
  const CMatrix u = reference::split_step_unitary(fac);
  SplitStepConjugator conj(fac);
  const CMatrix w = random_matrix(n, 6);

  CMatrix h = w;
  conj.heisenberg(h);
  CHECK(max_abs(h - reference::conjugate(w, u)) < 1e-12);

  CMatrix s = w;
  conj.schrodinger(s);
  CHECK(max_abs(s - reference::matmul(reference::matmul(u, w), reference::adjoint(u))) < 1e-12);

  CMatrix d = w, scratch;
  conjugate_dense(d, u, scratch);
  CHECK(max_abs(d - reference::conjugate(w, u)) < 1e-12);

  CMatrix m = w;
  conj.to_momentum(m);
  const CMatrix f = reference::dft_matrix(n);
  CHECK(max_abs(m - f * w * f.adjoint()) < 1e-12);
}

TEST_CASE("correlator traces agree across kernels") {
  const int n = 10;
  const CMatrix wt = random_matrix(n, 7);
  const CVector v = random_matrix(n, 8).col(0);
  const CMatrix vd = v.asDiagonal();
  const auto ref = reference::correlator_traces(wt, vd);
  CMatrix a, b;
  const auto dense = correlator_traces_dense(wt, vd, a, b);
  const auto diag = correlator_traces_diagonal(wt, v);
  for (const auto& tr : {dense, diag}) {
    CHECK(tr.C == doctest::Approx(ref.C).epsilon(1e-12));
    CHECK(std::abs(tr.F - ref.F) < 1e-12 * std::max(1.0, std::abs(ref.F)));
    CHECK(tr.D == doctest::Approx(ref.D).epsilon(1e-12));
    CHECK(tr.I == doctest::Approx(ref.I).epsilon(1e-12));
    CHECK(std::abs(tr.C - (tr.D + tr.I - 2.0 * tr.F.real())) < 1e-10 * std::max(1.0, tr.C));
  }
}

TEST_CASE("parallel kernels are bitwise independent of the thread count") {
  const int n = 64;
  SplitStepFactors fac{random_phases(n, 10), random_phases(n, 11)};
  SplitStepConjugator conj(fac);
  const CMatrix w = random_matrix(n, 12);
  const CVector v = random_phases(n, 13);
  const int saved = omp_get_max_threads();

  auto run = [&](int threads) {
    omp_set_num_threads(threads);
    CMatrix x = w;
    for (int t = 0; t < 5; ++t) conj.heisenberg(x);
    const auto tr = correlator_traces_diagonal(x, v);
    return std::make_pair(x, tr);
  };
  const auto one = run(1);
  const auto four = run(4);
  omp_set_num_threads(saved);
  CHECK((one.first.array() == four.first.array()).all());
  CHECK(one.second.C == four.second.C);
  CHECK(one.second.F == four.second.F);
}

TEST_CASE("dimension mismatches are rejected") {
  CMatrix w = CMatrix::Identity(3, 3), s;
  CHECK_THROWS_AS(conjugate_dense(w, CMatrix::Identity(4, 4), s), InvalidArgument);
  CHECK_THROWS_AS(SplitStepConjugator(SplitStepFactors{CVector::Ones(3), CVector::Ones(4)}), InvalidArgument);
}
