#include "otoclab/qmap/int_matrix.hpp"

#include "otoclab/common.hpp"

namespace otoclab::qmap {
namespace {

BigInt mod_positive(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix2 reduce(const IntMatrix2& m, const BigInt& modulus) {
  if (modulus <= 0) throw InvalidArgument("reduce: modulus must be positive");
  return {mod_positive(m.a, modulus), mod_positive(m.b, modulus), mod_positive(m.c, modulus),
          mod_positive(m.d, modulus)};
}

IntMatrix2 cat_matrix_power(const IntMatrix2& m, long long t, const std::optional<BigInt>& modulus) {
  if (t < 0) throw InvalidArgument("cat_matrix_power: t must be non-negative");
  IntMatrix2 result = IntMatrix2::identity();
  IntMatrix2 base = modulus ? reduce(m, *modulus) : m;
  if (modulus) result = reduce(result, *modulus);
  while (t > 0) {
    if (t & 1) {
      result = result * base;
      if (modulus) result = reduce(result, *modulus);
    }
    t >>= 1;
    if (t > 0) {
      base = base * base;
      if (modulus) base = reduce(base, *modulus);
    }
  }
  return result;
}

std::string to_string(const IntMatrix2& m) {
  return "[[" + m.a.str() + "," + m.b.str() + "],[" + m.c.str() + "," + m.d.str() + "]]";
}

}  // namespace otoclab::qmap
