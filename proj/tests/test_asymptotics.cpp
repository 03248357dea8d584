#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "zonal/asymptotics.hpp"

using namespace zonal;

namespace {

/// Gamma on [1, 2] from the Stirling series at x + 20 and the recurrence;
/// relative error far below 1e-12 there.
double gamma_oracle(double x) {
  const int shift = 20;
  const double y = x + shift;
  const double series = 1.0 / (12 * y) - 1.0 / (360 * y * y * y) + 1.0 / (1260 * std::pow(y, 5))
                        - 1.0 / (1680 * std::pow(y, 7));
  double log_gamma = (y - 0.5) * std::log(y) - y + 0.5 * std::log(2 * std::numbers::pi) + series;
  for (int k = 0; k < shift; ++k) {
    log_gamma -= std::log(x + k);
  }
  return std::exp(log_gamma);
}

std::map<double, double> sample(auto&& f, int lo, int hi) {
  std::map<double, double> out;
  for (int n = lo; n <= hi; n *= 2) {
    out[n] = f(static_cast<double>(n));
  }
  return out;
}

const std::vector<asymptotic_model> regime_families{
    asymptotic_model::power_fitted(), asymptotic_model::n_over_log(), asymptotic_model::linear()};

}  // namespace

TEST(Beta, Examples) {
  EXPECT_EQ(beta_index(1.0, 1), 0.0);
  EXPECT_NEAR(beta_index(0.8, 1), 0.4, 1e-15);
  EXPECT_THROW(beta_index(0.4, 1), beardon_violation);
  EXPECT_THROW(beta_index(0.5, 1), beardon_violation);
  EXPECT_THROW(beta_index(1.0, 0), validation_error);
}

TEST(Beta, BeardonMessageCarriesTheBound) {
  try {
    beta_index(0.4, 1);
    FAIL();
  } catch (const beardon_violation& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos) << e.what();
  }
}

TEST(Beta, ZeroExactlyOutsideThePolynomialRegime) {
  for (int r = 1; r <= 3; ++r) {
    for (int k = 1; k <= 200; ++k) {
      const double delta = 0.5 * r + 0.01 * k;
      const double beta = beta_index(delta, r);
      const auto rep = classify_regime(delta, r);
      EXPECT_GE(beta, 0.0);
      EXPECT_LT(beta, 1.0);
      EXPECT_EQ(beta == 0.0, rep.kind != regime::polynomial) << delta << " " << r;
    }
  }
}

TEST(WanderingRate, Examples) {
  EXPECT_NEAR(wandering_rate_model(0.8, 1, 100.0), 6.309573444801933, 1e-12);
  EXPECT_NEAR(wandering_rate_model(1.0, 1, std::exp(2.0)), 2.0, 1e-14);
  EXPECT_EQ(wandering_rate_model(1.2, 1, 37.0), 1.0);
  EXPECT_THROW(wandering_rate_model(0.8, 1, 1.0), usage_error);
}

TEST(ReturnSequence, Examples) {
  for (double n : {2.0, 10.0, 1000.0, 123456.0}) {
    EXPECT_EQ(return_sequence_model(1.2, 1, n), n);
  }
  EXPECT_NEAR(return_sequence_model(1.0, 1, 1000.0), 1000.0 / std::log(1000.0), 1e-10);
  EXPECT_NEAR(return_sequence_model(1.0, 1, 1000.0), 144.76, 0.005);
  const double expected = std::pow(1000.0, 0.6) / (gamma_oracle(1.4) * gamma_oracle(1.6));
  EXPECT_NEAR(return_sequence_model(0.8, 1, 1000.0), expected, 1e-10 * expected);
  EXPECT_NEAR(return_sequence_model(0.8, 1, 1000.0), 79.59, 0.01);
}

TEST(ReturnSequence, GammaProductMatchesTheOracle) {
  EXPECT_NEAR(gamma_oracle(1.5), std::sqrt(std::numbers::pi) / 2.0, 1e-13);
  for (int k = 0; k <= 100; ++k) {
    const double beta = 0.0099 * k;
    const double oracle = gamma_oracle(1.0 + beta) * gamma_oracle(2.0 - beta);
    EXPECT_NEAR(gamma_product(beta), oracle, 1e-12 * oracle);
  }
}

TEST(ReturnSequence, ProductWithTheWanderingRate) {
  for (double delta : {0.55, 0.8, 0.95, 1.0, 1.3, 1.1, 1.5, 1.7}) {
    const int r = delta < 1.05 ? 1 : 2;
    if (delta <= 0.5 * r) continue;
    const double beta = beta_index(delta, r);
    for (double n : {2.0, 50.0, 5000.0}) {
      const double lhs = return_sequence_model(delta, r, n) * wandering_rate_model(delta, r, n);
      EXPECT_NEAR(lhs, n / gamma_product(beta), 1e-12 * n);
    }
  }
}

TEST(Models, PositiveAndNondecreasing) {
  const std::vector<asymptotic_model> models{
      asymptotic_model::power(0.3), asymptotic_model::power(0.0), asymptotic_model::linear(),
      asymptotic_model::log(), asymptotic_model::constant()};
  for (const auto& m : models) {
    double prev = 0.0;
    for (int n = 2; n <= 5000; ++n) {
      const double v = m(n);
      EXPECT_GT(v, 0.0);
      EXPECT_GE(v, prev) << m.name() << " n=" << n;
      prev = v;
    }
  }
  // n / log n dips between 2 and 3 (its minimum is at e).
  double prev = asymptotic_model::n_over_log()(3);
  for (int n = 4; n <= 5000; ++n) {
    EXPECT_GE(asymptotic_model::n_over_log()(n), prev);
    prev = asymptotic_model::n_over_log()(n);
  }
}

TEST(Classify, Examples) {
  const auto a = classify_regime(1.0, 1);
  EXPECT_EQ(a.kind, regime::boundary);
  EXPECT_EQ(a.predicted_model().family(), model_family::n_over_log);
  EXPECT_TRUE(a.boundary_flag);

  const auto b = classify_regime(0.8, 1);
  EXPECT_EQ(b.kind, regime::polynomial);
  EXPECT_NEAR(b.predicted_exponent, 0.6, 1e-15);
  EXPECT_FALSE(b.boundary_flag);

  const auto c = classify_regime(1.4, 2);
  EXPECT_EQ(c.kind, regime::polynomial);
  EXPECT_NEAR(c.predicted_exponent, 0.8, 1e-15);

  EXPECT_EQ(classify_regime(1.2, 1).kind, regime::linear);
  EXPECT_THROW(classify_regime(0.4, 1), beardon_violation);
}

TEST(Classify, BoundaryFlagListsBothFamilies) {
  const auto rep = classify_regime(0.995, 1);
  EXPECT_EQ(rep.kind, regime::polynomial);
  EXPECT_TRUE(rep.boundary_flag);
  ASSERT_EQ(rep.candidates.size(), 2U);
  EXPECT_EQ(rep.candidates[1], regime::boundary);
  EXPECT_FALSE(classify_regime(0.98, 1).boundary_flag);
  EXPECT_TRUE(classify_regime(0.98, 1, 0.05).boundary_flag);
}

TEST(Classify, PolynomialExponentApproachesOneAtTheBoundary) {
  for (int r = 1; r <= 3; ++r) {
    const double edge = 0.5 * (r + 1);
    double prev = 0.0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
      const auto rep = classify_regime(edge - gap, r);
      EXPECT_EQ(rep.kind, regime::polynomial);
      EXPECT_GT(rep.predicted_exponent, prev);
      EXPECT_LT(rep.predicted_exponent, 1.0);
      EXPECT_NEAR(rep.predicted_exponent, 1.0, 2.0 * gap + 1e-15);
      prev = rep.predicted_exponent;
    }
    EXPECT_NEAR(wandering_rate_model(edge - 1e-9, r, 1000.0), 1.0, 1e-7);
  }
}

TEST(Convolution, SecondTermFormula) {
  for (double delta : {0.6, 0.8, 1.0, 1.3}) {
    const auto rows = convolution_check(delta, 1, 8);
    ASSERT_EQ(rows.front().n, 2);
    const double nu2 = return_sequence_model(delta, 1, 2.0);
    EXPECT_NEAR(rows.front().ratio, (nu2 + std::pow(2.0, -2.0 * delta)) / nu2, 1e-14);
  }
  EXPECT_THROW(convolution_check(0.8, 1, 7), usage_error);
  EXPECT_THROW(convolution_check(0.5, 1, 8), beardon_violation);
}

TEST(Convolution, PolynomialBand) {
  const auto rows = convolution_check(0.8, 1, 10000);
  double lo = 1e9;
  double hi = 0.0;
  for (const auto& row : rows) {
    if (row.n < 10) continue;
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
  }
  EXPECT_GE(lo, 1.0);
  EXPECT_LT(hi, 3.0);
  // Frozen from the first run (direct summation).
  EXPECT_NEAR(hi, 2.2727922887097209, 1e-9);
  EXPECT_LE(hi, convolution_bound(0.8, 1));
}

TEST(Convolution, LinearRegimeLimit) {
  const auto rows = convolution_check(1.2, 1, 4000);
  double limit = 1.0;
  for (int k = 2; k <= 100000; ++k) {
    limit += std::pow(k, -2.4);
  }
  EXPECT_LE(rows.back().ratio, limit);
  EXPECT_NEAR(rows.back().ratio, limit, 0.01);
}

TEST(Convolution, BoundedOnTheGrid) {
  for (int r = 1; r <= 3; ++r) {
    for (int k = 1; k <= 20; ++k) {
      const double delta = 0.5 * r + 0.05 * k;
      const auto rows = convolution_check(delta, r, 10000);
      double hi = 0.0;
      for (const auto& row : rows) {
        if (row.n >= 10) hi = std::max(hi, row.ratio);
      }
      EXPECT_GE(rows.back().ratio, 1.0);
      EXPECT_LE(hi, 2.0 * convolution_bound(delta, r)) << "delta=" << delta << " r=" << r;
    }
  }
}

TEST(FitSeries, ExactPowerWins) {
  const auto fit = fit_series(sample([](double n) { return std::pow(n, 0.6); }, 4, 4096),
                              regime_families);
  EXPECT_EQ(fit.best_family(), model_family::power);
  ASSERT_TRUE(fit.best_fit().slope);
  EXPECT_NEAR(*fit.best_fit().slope, 0.6, 1e-9);
}

TEST(FitSeries, NOverLogBeatsPowerAndLinear) {
  const auto fit = fit_series(sample([](double n) { return n / std::log(n); }, 8, 4096),
                              regime_families);
  EXPECT_EQ(fit.best_family(), model_family::n_over_log);
  for (const auto& c : fit.candidates) {
    EXPECT_GE(c.residual, 0.0);
    EXPECT_GE(c.residual, fit.best_fit().residual);
  }
}

TEST(FitSeries, ConstantWins) {
  const std::vector<asymptotic_model> cands{asymptotic_model::power_fitted(),
                                            asymptotic_model::constant(),
                                            asymptotic_model::log()};
  const auto fit = fit_series(sample([](double) { return 3.5; }, 2, 1024), cands);
  EXPECT_EQ(fit.best_family(), model_family::constant);
  EXPECT_NEAR(fit.best_fit().scale, 3.5, 1e-12);
  EXPECT_NEAR(fit.best_fit().ratio_min, 1.0, 1e-12);
  EXPECT_NEAR(fit.best_fit().ratio_max, 1.0, 1e-12);
}

TEST(FitSeries, InputChecks) {
  std::map<double, double> few{{2, 1}, {4, 1}, {8, 1}};
  EXPECT_THROW(fit_series(few, regime_families), insufficient_data_error);
  std::map<double, double> narrow;
  for (int n = 10; n <= 15; ++n) narrow[n] = 1.0;
  EXPECT_THROW(fit_series(narrow, regime_families), insufficient_data_error);
  auto bad = sample([](double) { return 1.0; }, 2, 256);
  bad[16] = -1.0;
  EXPECT_THROW(fit_series(bad, regime_families), usage_error);
  EXPECT_THROW(fit_series(sample([](double) { return 1.0; }, 2, 256), {}), usage_error);
}

TEST(FitSeries, RecoversEachRegimeOnAGrid) {
  for (int r = 1; r <= 3; ++r) {
    for (int k = 1; k <= 20; ++k) {
      const double delta = 0.5 * r + 0.05 * k;
      const auto rep = classify_regime(delta, r);
      if (rep.boundary_flag && rep.kind != regime::boundary) continue;
      const auto series =
          sample([&](double n) { return return_sequence_model(delta, r, n); }, 4, 1 << 16);
      const auto fit = fit_series(series, regime_families);
      EXPECT_EQ(fit.best_family(), rep.predicted_model().family())
          << "delta=" << delta << " r=" << r;
    }
  }
}
