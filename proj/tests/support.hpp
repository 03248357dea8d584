#ifndef ZONAL_TESTS_SUPPORT_HPP
#define ZONAL_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>

#include "zonal/hyperbolic.hpp"

namespace zonal::test_support {

/// Seed for all property tests; override with ZONAL_TEST_SEED.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("ZONAL_TEST_SEED")) {
    return std::strtoull(s, nullptr, 10);
  }
  return 20261019ULL;
}

class generator {
 public:
  explicit generator(std::uint64_t salt = 0) : rng_(test_seed() ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  /// A point at moderate distance from the base point.
  h_point point(model m) {
    const double t = std::exp(uniform(-2.0, 2.0));
    if (m == model::h2) {
      return h_point::h2(uniform(-3.0, 3.0), t);
    }
    return h_point::h3(uniform(-3.0, 3.0), uniform(-3.0, 3.0), t);
  }

  /// A unit-determinant matrix with entries of modulus at most a few units:
  /// real for H2, complex for H3.
  mobius matrix(model m) {
    auto c = [&] {
      return m == model::h2 ? complex(uniform(-2.0, 2.0), 0.0)
                            : complex(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
    };
    for (;;) {
      const complex a = c();
      if (std::abs(a) < 0.5) {
        continue;
      }
      const complex b = c();
      const complex cc = c();
      const complex d = (1.0 + b * cc) / a;
      if (std::abs(d) > 6.0) {
        continue;
      }
      return {a, b, cc, d};
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Composite Simpson rule with n (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

}  // namespace zonal::test_support

#endif  // ZONAL_TESTS_SUPPORT_HPP
