#include "otoclab/chaoskit/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace otoclab::chaoskit {

namespace {

// Orthogonalize w against the first k columns of v, twice (DGKS). Returns the coefficients.
CVector orthogonalize(const CMatrix& v, int k, CVector& w) {
  CVector h = CVector::Zero(k);
  for (int pass = 0; pass < 2; ++pass) {
    const CVector c = v.leftCols(k).adjoint() * w;
    w.noalias() -= v.leftCols(k) * c;
    h += c;
  }
  return h;
}

std::vector<int> by_descending_modulus(const CVector& theta) {
  std::vector<int> order(static_cast<std::size_t>(theta.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    const double ax = std::abs(theta[x]);
    const double ay = std::abs(theta[y]);
    if (ax != ay) return ax > ay;
    return std::arg(theta[x]) > std::arg(theta[y]);
  });
  return order;
}

}  // namespace

ArnoldiResult arnoldi_largest(const LinearMap& a, int dimension, const ArnoldiOptions& options) {
  const int n = dimension;
  const int nev = options.nev;
  if (n < 1) throw InvalidArgument("arnoldi_largest: empty operator");
  if (nev < 1 || nev > n) throw InvalidArgument("arnoldi_largest: nev must lie in [1, dimension]");
  int m = options.krylov_dim > 0 ? options.krylov_dim : std::max(2 * nev + 10, 30);
  m = std::min(m, n);
  if (m <= nev && m < n) throw InvalidArgument("arnoldi_largest: krylov_dim must exceed nev");

  ArnoldiResult out;
  CMatrix v = CMatrix::Zero(n, m + 1);
  CMatrix h = CMatrix::Zero(m + 1, m);

  Rng rng(options.seed);
  CVector start(n);
  for (int i = 0; i < n; ++i) start[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  v.col(0) = start / start.norm();

  int kept = 0;  // columns of v carried over from the previous cycle
  CVector w(n);
  const double breakdown = 1e-14;

  for (int cycle = 0;; ++cycle) {
    int filled = m;
    for (int j = kept; j < m; ++j) {
      a(v.col(j), w);
      ++out.matvecs;
      const CVector c = orthogonalize(v, j + 1, w);
      h.col(j).head(j + 1) += c;
      const double beta = w.norm();
      h(j + 1, j) = beta;
      if (beta < breakdown) {  // invariant subspace found
        filled = j + 1;
        break;
      }
      v.col(j + 1) = w / beta;
    }

    const CMatrix hm = h.topLeftCorner(filled, filled);
    Eigen::ComplexEigenSolver<CMatrix> es(hm);
    if (es.info() != Eigen::Success) throw NumericalError("arnoldi_largest: projected eigenproblem failed");
    const CVector theta = es.eigenvalues();
    const CMatrix y = es.eigenvectors();
    const auto order = by_descending_modulus(theta);
    const double beta = filled < m || filled == n ? 0.0 : std::abs(h(filled, filled - 1));

    const int want = std::min(nev, filled);
    bool done = true;
    std::vector<double> res(static_cast<std::size_t>(want));
    for (int i = 0; i < want; ++i) {
      const int idx = order[static_cast<std::size_t>(i)];
      res[static_cast<std::size_t>(i)] = beta * std::abs(y(filled - 1, idx)) / y.col(idx).norm();
      if (res[static_cast<std::size_t>(i)] > options.tol * std::max(std::abs(theta[idx]), 1e-3)) done = false;
    }

    if (done || cycle >= options.max_restarts || filled < m || filled == n) {
      out.converged = done && want == nev;
      out.restarts = cycle;
      out.vectors.resize(n, want);
      for (int i = 0; i < want; ++i) {
        const int idx = order[static_cast<std::size_t>(i)];
        out.values.push_back(theta[idx]);
        out.residuals.push_back(res[static_cast<std::size_t>(i)]);
        const CVector x = v.leftCols(filled) * y.col(idx);
        out.vectors.col(i) = x / x.norm();
      }
      return out;
    }

    // Thick restart: keep an orthonormal basis of the leading Ritz vectors plus a margin.
    // Their span is invariant under hm, so the compressed matrix is exact and the
    // residual of the new basis is the old residual f = beta v_m times e_m^T q.
    const int p = std::min(m - 2, std::max(nev + (m - nev) / 2, nev + 1));
    CMatrix yk(filled, p);
    for (int i = 0; i < p; ++i) yk.col(i) = y.col(order[static_cast<std::size_t>(i)]);
    Eigen::HouseholderQR<CMatrix> qr(yk);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(filled, p);
    const CMatrix hp = q.adjoint() * hm * q;
    const CMatrix vp = v.leftCols(filled) * q;
    const cplx beta_c = h(filled, filled - 1);
    const CVector tail = v.col(filled);

    h.setZero();
    v.leftCols(p) = vp;
    h.topLeftCorner(p, p) = hp;
    h.row(p).head(p) = beta_c * q.row(filled - 1);
    v.col(p) = tail;
    for (int j = p + 1; j <= m; ++j) v.col(j).setZero();
    kept = p;  // column p is expanded next
  }
}

}  // namespace otoclab::chaoskit
