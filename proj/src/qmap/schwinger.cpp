#include "otoclab/qmap/schwinger.hpp"

#include <cmath>

namespace otoclab::qmap {
namespace {

long long mod_positive(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

cplx tau_power(long long m, int n) {
  const long long two_n = 2LL * n;
  const long long r = mod_positive(m, two_n);
  return std::polar(1.0, kPi * static_cast<double>(r) / n);
}

SchwingerOps schwinger_ops(int n) {
  if (n < 2) throw InvalidArgument("schwinger_ops: N must be >= 2");
  SchwingerOps ops;
  ops.N = n;
  ops.tau = tau_power(1, n);
  ops.shift = CMatrix::Zero(n, n);
  ops.clock = CMatrix::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    ops.shift((q + 1) % n, q) = 1.0;
    ops.clock(q, q) = tau_power(2LL * q, n);
  }
  const cplx two_i(0.0, 2.0);
  ops.Q = (ops.clock - ops.clock.adjoint()) / two_i;
  ops.P = (ops.shift - ops.shift.adjoint()) / two_i;
  return ops;
}

CMatrix translation_op(int n, Displacement xi) {
  if (n < 1) throw InvalidArgument("translation_op: N must be positive");
  const long long two_n = 2LL * n;
  const long long xq = mod_positive(xi.q, two_n);
  const long long xp = mod_positive(xi.p, two_n);
  const long long base = static_cast<long long>((static_cast<__int128>(xq) * xp) % two_n);
  CMatrix t = CMatrix::Zero(n, n);
  const long long shift = mod_positive(xq, n);
  for (long long col = 0; col < n; ++col) {
    const long long row = (col + shift) % n;
    t(row, col) = tau_power(base + 2 * ((xp * col) % two_n), n);
  }
  return t;
}

Displacement apply_mod(const IntMatrix2& m, Displacement xi, int n) {
  const BigInt two_n = 2 * n;
  auto red = [&](const BigInt& v) {
    BigInt r = v % two_n;
    if (r < 0) r += two_n;
    return r.convert_to<long long>();
  };
  return {red(m.a * xi.q + m.b * xi.p), red(m.c * xi.q + m.d * xi.p)};
}

double translation_overlap(const CMatrix& a, Displacement target) {
  const auto n = static_cast<int>(a.rows());
  if (a.cols() != n) throw InvalidArgument("translation_overlap: matrix must be square");
  const long long two_n = 2LL * n;
  const long long xq = mod_positive(target.q, two_n);
  const long long xp = mod_positive(target.p, two_n);
  const long long base = static_cast<long long>((static_cast<__int128>(xq) * xp) % two_n);
  const long long shift = mod_positive(xq, n);
  cplx sum{0.0, 0.0};
  for (long long col = 0; col < n; ++col) {
    const long long row = (col + shift) % n;
    sum += std::conj(tau_power(base + 2 * ((xp * col) % two_n), n)) * a(row, col);
  }
  return std::abs(sum) / n;
}

}  // namespace otoclab::qmap
