#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace otoclab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Rejected inputs: wrong dimensions, out-of-range parameters, malformed configs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced non-finite values or failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SplitMix64 finalizer; the building block for every derived seed in the project.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stable, order-sensitive combination of a master seed with stream indices.
constexpr std::uint64_t derive_seed(std::uint64_t master) { return mix64(master); }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, Rest... rest) {
  return derive_seed(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ULL), rest...);
}

/// Small seedable generator with a platform-independent double conversion.
/// Streams are split by deriving a new seed, never by sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per call, the partner is discarded).
  double normal();

  Rng split(std::uint64_t stream) const { return Rng(derive_seed(state_, stream)); }

 private:
  std::uint64_t state_;
};

/// FNV-1a over a byte string; used for config hashes in metadata.
std::uint64_t fnv1a64(const std::string& bytes);

std::string hex64(std::uint64_t value);

}  // namespace otoclab
