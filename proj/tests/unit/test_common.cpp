#include <doctest.h>

#include <set>

#include "otoclab/common.hpp"

using namespace otoclab;

TEST_CASE("rng streams are reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  CHECK(Rng(42).next_u64() != c.next_u64());
}

TEST_CASE("uniform draws stay in [0, 1) with the right mean") {
  Rng r(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws have unit variance") {
  Rng r(11);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("derived seeds depend on every index and on order") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 20; ++i)
    for (std::uint64_t j = 0; j < 20; ++j) seen.insert(derive_seed(5, i, j));
  CHECK(seen.size() == 400);
  CHECK(derive_seed(5, 1, 2) != derive_seed(5, 2, 1));
  static_assert(derive_seed(5, 1, 2) == derive_seed(5, 1, 2));
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}
