// Exact Lebesgue measure of the continued-fraction sum-level sets for small n,
// checked against the interval construction.

#include <cmath>
#include <cstdio>

#include "zonal/sumlevel.hpp"

int main() {
  for (int n = 1; n <= 14; ++n) {
    const auto lambda = zonal::sum_level_measure(n);
    const auto intervals = zonal::interval_oracle(n);
    const bool agree = zonal::total_length(intervals) == lambda;
    std::printf("n=%2d  lambda=%.12f  lambda*log2(n)=%.6f  intervals=%zu  %s\n", n, lambda.get_d(),
                lambda.get_d() * std::log2(n), intervals.size(), agree ? "exact match" : "MISMATCH");
  }
}
