#include "otoclab/kernels/fft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace otoclab::kernels {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

int sign_of(FftDirection dir) { return dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD; }

// A single strided transform of length n; executed on many vectors with fftw_execute_dft.
fftw_plan make_plan(int n, int stride, FftDirection dir) {
  std::lock_guard lock(planner_mutex());
  CVector scratch(static_cast<Eigen::Index>(n) * stride);
  int dims[1] = {n};
  fftw_plan p = fftw_plan_many_dft(1, dims, 1, as_fftw(scratch.data()), nullptr, stride, 0,
                                   as_fftw(scratch.data()), nullptr, stride, 0, sign_of(dir),
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p == nullptr) throw NumericalError("FFTW failed to create a plan");
  return p;
}

void destroy(fftw_plan p) {
  if (p == nullptr) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(p);
}

}  // namespace

CVector dft(const CVector& in, FftDirection dir, FftScale scale) {
  const auto n = static_cast<int>(in.size());
  if (n == 0) return in;
  CVector out = in;
  fftw_plan p = make_plan(n, 1, dir);
  fftw_execute_dft(p, as_fftw(out.data()), as_fftw(out.data()));
  destroy(p);
  if (scale == FftScale::unitary) out /= std::sqrt(static_cast<double>(n));
  if (scale == FftScale::inverse) out /= static_cast<double>(n);
  return out;
}

struct MatrixFft::Plans {
  fftw_plan col_fwd = nullptr;
  fftw_plan col_bwd = nullptr;
  fftw_plan row_fwd = nullptr;
  fftw_plan row_bwd = nullptr;
  ~Plans() {
    destroy(col_fwd);
    destroy(col_bwd);
    destroy(row_fwd);
    destroy(row_bwd);
  }
};

MatrixFft::MatrixFft(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 1) throw InvalidArgument("MatrixFft: size must be positive");
  plans_->col_fwd = make_plan(n, 1, FftDirection::forward);
  plans_->col_bwd = make_plan(n, 1, FftDirection::backward);
  plans_->row_fwd = make_plan(n, n, FftDirection::forward);
  plans_->row_bwd = make_plan(n, n, FftDirection::backward);
}

MatrixFft::~MatrixFft() = default;
MatrixFft::MatrixFft(MatrixFft&&) noexcept = default;
MatrixFft& MatrixFft::operator=(MatrixFft&&) noexcept = default;

void MatrixFft::columns(CMatrix& m, FftDirection dir) const {
  if (m.rows() != n_ || m.cols() != n_) throw InvalidArgument("MatrixFft: dimension mismatch");
  fftw_plan p = dir == FftDirection::forward ? plans_->col_fwd : plans_->col_bwd;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  const int n = n_;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    cplx* col = m.data() + static_cast<std::ptrdiff_t>(j) * n;
    fftw_execute_dft(p, as_fftw(col), as_fftw(col));
    for (int i = 0; i < n; ++i) col[i] *= scale;
  }
}

void MatrixFft::rows(CMatrix& m, FftDirection dir) const {
  if (m.rows() != n_ || m.cols() != n_) throw InvalidArgument("MatrixFft: dimension mismatch");
  fftw_plan p = dir == FftDirection::forward ? plans_->row_fwd : plans_->row_bwd;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  const int n = n_;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    cplx* row = m.data() + i;
    fftw_execute_dft(p, as_fftw(row), as_fftw(row));
  }
  m *= scale;
}

}  // namespace otoclab::kernels
