#pragma once

#include <memory>

#include "otoclab/common.hpp"

namespace otoclab::kernels {

/// Sign convention: forward uses exp(-2 pi i j k / n), backward exp(+2 pi i j k / n).
enum class FftDirection { forward, backward };

/// Scale applied after the raw transform.
enum class FftScale { none, unitary, inverse };

/// Transform of a single vector; planning is serialized internally.
CVector dft(const CVector& in, FftDirection dir, FftScale scale = FftScale::none);

/// In-place unitary DFTs along the columns or rows of an n x n matrix.
///
/// Plans are created once with FFTW_ESTIMATE, so repeated runs execute the same
/// algorithm and produce bit-identical output. Execution over the n vectors is
/// spread across OpenMP threads.
class MatrixFft {
 public:
  explicit MatrixFft(int n);
  ~MatrixFft();
  MatrixFft(const MatrixFft&) = delete;
  MatrixFft& operator=(const MatrixFft&) = delete;
  MatrixFft(MatrixFft&&) noexcept;
  MatrixFft& operator=(MatrixFft&&) noexcept;

  int size() const { return n_; }

  /// m <- F m (forward) or F^dagger m (backward); F is the unitary DFT matrix.
  void columns(CMatrix& m, FftDirection dir) const;
  /// Transforms each row as a vector: m <- m F^T (forward) or m conj(F) (backward).
  void rows(CMatrix& m, FftDirection dir) const;

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace otoclab::kernels
