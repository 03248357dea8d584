// Partial Poincare sums of the level-2 congruence group at s = 1 next to the
// n / log n shape expected at the critical exponent.

#include <cmath>
#include <cstdio>

#include "zonal/orbit.hpp"

int main() {
  const auto gp = zonal::groups::gamma2();
  const auto i = zonal::h_point::base(gp.kind());
  const auto table = zonal::partial_sum(gp, i, i, 1.0, 12);
  std::printf("%3s %10s %14s %14s\n", "n", "count", "P_n", "P_n log n / n");
  for (const auto& e : table.entries) {
    const double ratio = e.n >= 2 ? e.value * std::log(e.n) / e.n : 0.0;
    std::printf("%3d %10llu %14.6f %14.6f\n", e.n, static_cast<unsigned long long>(e.count),
                e.value, ratio);
  }
}
