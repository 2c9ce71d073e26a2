#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace otoclab::qmap {

using BigInt = boost::multiprecision::cpp_int;

/// Exact 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static IntMatrix2 identity() { return {}; }
  /// The linear cat map [[2, 1], [1, 1]] acting on (q, p).
  static IntMatrix2 arnold_cat() { return {2, 1, 1, 1}; }

  BigInt determinant() const { return a * d - b * c; }
  IntMatrix2 operator*(const IntMatrix2& o) const;
  bool operator==(const IntMatrix2&) const = default;
};

/// M^t by repeated squaring. With a modulus every entry is reduced into [0, modulus),
/// and the determinant is then 1 modulo the modulus.
IntMatrix2 cat_matrix_power(const IntMatrix2& m, long long t,
                            const std::optional<BigInt>& modulus = std::nullopt);

/// Entry-wise reduction into [0, modulus).
IntMatrix2 reduce(const IntMatrix2& m, const BigInt& modulus);

std::string to_string(const IntMatrix2& m);

}  // namespace otoclab::qmap
