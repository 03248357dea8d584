// Regime, wandering rate and return sequence across a range of exponents
// for a rank-one cusp.

#include <cstdio>

#include "zonal/asymptotics.hpp"

int main() {
  const int r_max = 1;
  std::printf("%6s %12s %6s %12s %12s\n", "delta", "regime", "beta", "w_1000", "nu_1000");
  for (double delta : {0.6, 0.7, 0.8, 0.9, 0.99, 1.0, 1.1, 1.3}) {
    const auto rep = zonal::classify_regime(delta, r_max);
    std::printf("%6.2f %12s %6.2f %12.4f %12.4f%s\n", delta, zonal::to_string(rep.kind), rep.beta,
                zonal::wandering_rate_model(delta, r_max, 1000.0),
                zonal::return_sequence_model(delta, r_max, 1000.0),
                rep.boundary_flag ? "  (near boundary)" : "");
  }
}
