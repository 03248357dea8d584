#ifndef ZONAL_ASYMPTOTICS_HPP
#define ZONAL_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zonal/error.hpp"

namespace zonal {

/// Growth regime of P_n(z, w, delta) and of the return sequence.
enum class regime {
  polynomial,  ///< delta < (r_max + 1) / 2: n^{2 delta - r_max}
  boundary,    ///< delta = (r_max + 1) / 2: n / log n
  linear,      ///< delta > (r_max + 1) / 2: n
};

inline const char* to_string(regime r) {
  switch (r) {
    case regime::polynomial: return "polynomial";
    case regime::boundary: return "boundary";
    case regime::linear: return "linear";
  }
  return "?";
}

enum class model_family { power, n_over_log, linear, log, constant, inverse_log };

inline const char* to_string(model_family f) {
  switch (f) {
    case model_family::power: return "power";
    case model_family::n_over_log: return "n_over_log";
    case model_family::linear: return "linear";
    case model_family::log: return "log";
    case model_family::constant: return "constant";
    case model_family::inverse_log: return "inverse_log";
  }
  return "?";
}

/// A growth shape known up to a multiplicative constant.
///
/// `power` carries an exponent; without one the exponent is a free parameter
/// fitted by `fit_series`.
class asymptotic_model {
 public:
  static asymptotic_model power(double exponent) { return {model_family::power, exponent}; }
  static asymptotic_model power_fitted() { return {model_family::power, std::nullopt}; }
  static asymptotic_model n_over_log() { return {model_family::n_over_log, std::nullopt}; }
  static asymptotic_model linear() { return {model_family::linear, std::nullopt}; }
  static asymptotic_model log() { return {model_family::log, std::nullopt}; }
  static asymptotic_model constant() { return {model_family::constant, std::nullopt}; }
  static asymptotic_model inverse_log() { return {model_family::inverse_log, std::nullopt}; }

  model_family family() const { return family_; }
  const std::optional<double>& exponent() const { return exponent_; }
  bool fitted_exponent() const { return family_ == model_family::power && !exponent_; }

  /// Free parameters in a fit: the scale, plus the exponent when fitted.
  int free_parameters() const { return fitted_exponent() ? 2 : 1; }

  /// Shape value at n > 1 (scale 1). A fitted power needs `exponent_override`.
  double operator()(double n, std::optional<double> exponent_override = std::nullopt) const {
    switch (family_) {
      case model_family::power: {
        const auto e = exponent_override ? exponent_override : exponent_;
        if (!e) {
          throw usage_error("power model has no exponent to evaluate");
        }
        return std::pow(n, *e);
      }
      case model_family::n_over_log: return n / std::log(n);
      case model_family::linear: return n;
      case model_family::log: return std::log(n);
      case model_family::constant: return 1.0;
      case model_family::inverse_log: return 1.0 / std::log(n);
    }
    return 0.0;
  }

  std::string name() const {
    if (family_ == model_family::power) {
      return exponent_ ? "power(" + std::to_string(*exponent_) + ")" : "power(fitted)";
    }
    return to_string(family_);
  }

 private:
  asymptotic_model(model_family f, std::optional<double> e) : family_(f), exponent_(e) {}

  model_family family_;
  std::optional<double> exponent_;
};

inline void require_beardon(double delta, int r_max) {
  if (r_max < 1) {
    throw validation_error("r_max must be at least 1 (the group must have a cusp)");
  }
  if (!(delta > 0.5 * r_max)) {
    throw beardon_violation(delta, r_max);
  }
}

/// Index of regular variation of the wandering rate:
/// beta = max{0, 1 + r_max - 2 delta}, in [0, 1) under delta > r_max / 2.
inline double beta_index(double delta, int r_max) {
  require_beardon(delta, r_max);
  return std::max(0.0, 1.0 + r_max - 2.0 * delta);
}

namespace detail {

inline regime exact_regime(double delta, int r_max) {
  const double gap = 2.0 * delta - (r_max + 1.0);
  if (gap < 0.0) {
    return regime::polynomial;
  }
  return gap == 0.0 ? regime::boundary : regime::linear;
}

inline void require_n(double n) {
  if (!(n >= 2.0)) {
    throw usage_error("asymptotic models are evaluated at n >= 2");
  }
}

}  // namespace detail

/// Wandering-rate growth w_n: n^{r_max - 2 delta + 1}, log n, or 1.
inline double wandering_rate_model(double delta, int r_max, double n) {
  require_beardon(delta, r_max);
  detail::require_n(n);
  switch (detail::exact_regime(delta, r_max)) {
    case regime::polynomial: return std::pow(n, r_max - 2.0 * delta + 1.0);
    case regime::boundary: return std::log(n);
    case regime::linear: return 1.0;
  }
  return 0.0;
}

/// Gamma(1 + beta) Gamma(2 - beta).
inline double gamma_product(double beta) { return std::tgamma(1.0 + beta) * std::tgamma(2.0 - beta); }

/// Return sequence from nu_n w_n ~ n / (Gamma(1 + beta) Gamma(2 - beta)).
inline double return_sequence_model(double delta, int r_max, double n) {
  const double beta = beta_index(delta, r_max);
  return n / (gamma_product(beta) * wandering_rate_model(delta, r_max, n));
}

/// Return sequence with the conventions nu_0 = nu_1 = 1 for the terms that
/// the asymptotic model does not cover.
inline double return_sequence_at(double delta, int r_max, int m) {
  return m < 2 ? 1.0 : return_sequence_model(delta, r_max, m);
}

struct regime_report {
  double delta = 0.0;
  int r_max = 0;
  double beta = 0.0;
  regime kind = regime::polynomial;
  /// Exponent of n in the predicted growth of P_n (1 in the boundary and
  /// linear regimes, where the boundary adds a 1 / log n factor).
  double predicted_exponent = 0.0;
  /// |2 delta - (r_max + 1)| < epsilon: the boundary family is reported
  /// next to the exact classification.
  bool boundary_flag = false;
  double epsilon = 0.0;
  std::vector<regime> candidates;

  /// Growth shape of P_n and nu_n for `kind`.
  asymptotic_model predicted_model() const { return model_for(kind); }

  asymptotic_model model_for(regime r) const {
    switch (r) {
      case regime::polynomial: return asymptotic_model::power(2.0 * delta - r_max);
      case regime::boundary: return asymptotic_model::n_over_log();
      case regime::linear: return asymptotic_model::linear();
    }
    return asymptotic_model::linear();
  }
};

/// Three-regime classification of the growth of P_n(z, w, delta).
inline regime_report classify_regime(double delta, int r_max, double epsilon = 0.02) {
  regime_report rep;
  rep.delta = delta;
  rep.r_max = r_max;
  rep.beta = beta_index(delta, r_max);
  rep.kind = detail::exact_regime(delta, r_max);
  rep.epsilon = epsilon;
  rep.predicted_exponent = rep.kind == regime::polynomial ? 2.0 * delta - r_max : 1.0;
  rep.boundary_flag = std::abs(2.0 * delta - (r_max + 1.0)) < epsilon;
  rep.candidates.push_back(rep.kind);
  if (rep.boundary_flag && rep.kind != regime::boundary) {
    rep.candidates.push_back(regime::boundary);
  }
  return rep;
}

struct convolution_row {
  int n = 0;
  double ratio = 0.0;
};

/// ratio(n) = [nu_n + sum_{k=2}^{n} k^{r_max - 1 - 2 delta} nu_{n-k}] / nu_n for
/// n = 2..n_max, with the model return sequence and nu_0 = nu_1 = 1.
inline std::vector<convolution_row> convolution_check(double delta, int r_max, int n_max) {
  require_beardon(delta, r_max);
  if (n_max < 8) {
    throw usage_error("convolution_check needs n_max >= 8");
  }
  const auto len = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> nu(len);
  std::vector<double> weight(len, 0.0);
  for (std::size_t m = 0; m < len; ++m) {
    nu[m] = return_sequence_at(delta, r_max, static_cast<int>(m));
    if (m >= 2) {
      weight[m] = std::pow(static_cast<double>(m), r_max - 1.0 - 2.0 * delta);
    }
  }
  std::vector<convolution_row> rows;
  rows.reserve(len - 2);
  for (std::size_t n = 2; n < len; ++n) {
    double conv = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
      conv += weight[k] * nu[n - k];
    }
    rows.push_back({static_cast<int>(n), (nu[n] + conv) / nu[n]});
  }
  return rows;
}

/// Upper bound zeta(1 + 2 kappa), kappa = delta - r_max / 2, on ratio(n) for
/// every n at which nu_n dominates nu_0..nu_{n-2}.
inline double convolution_bound(double delta, int r_max) {
  require_beardon(delta, r_max);
  return std::riemann_zeta(1.0 + 2.0 * (delta - 0.5 * r_max));
}

struct candidate_fit {
  asymptotic_model model = asymptotic_model::constant();
  double residual = 0.0;  ///< least squares in log-log coordinates
  double scale = 0.0;     ///< fitted multiplicative constant
  std::optional<double> slope;
  std::optional<double> slope_stderr;
  double ratio_min = 0.0;  ///< min of series / (scale * shape)
  double ratio_max = 0.0;
};

struct fit_result {
  std::vector<candidate_fit> candidates;
  std::size_t best = 0;

  const candidate_fit& best_fit() const { return candidates.at(best); }
  model_family best_family() const { return best_fit().model.family(); }
};

/// Ranks candidate growth shapes for a positive series by least-squares
/// residual of log(value) in log-log coordinates, each candidate with its
/// own fitted scale (and exponent for a fitted power).
///
/// Residuals within rounding of the minimum count as ties; a tie goes to the
/// candidate with fewer free parameters, then to the earlier candidate.
/// Needs at least 6 points with n > 1, spanning a factor of 2 in n.
inline fit_result fit_series(const std::map<double, double>& series,
                             std::span<const asymptotic_model> candidates) {
  if (candidates.empty()) {
    throw usage_error("fit_series needs at least one candidate");
  }
  if (series.size() < 6) {
    throw insufficient_data_error("fit_series needs >= 6 points, got "
                                  + std::to_string(series.size()));
  }
  const double n_lo = series.begin()->first;
  const double n_hi = series.rbegin()->first;
  if (!(n_lo > 1.0) || n_hi < 2.0 * n_lo) {
    throw insufficient_data_error("fit_series needs n > 1 spanning a factor >= 2");
  }
  std::vector<double> ns;
  std::vector<double> log_n;
  std::vector<double> log_v;
  for (const auto& [n, v] : series) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw usage_error("fit_series needs positive finite values");
    }
    ns.push_back(n);
    log_n.push_back(std::log(n));
    log_v.push_back(std::log(v));
  }
  const auto m = static_cast<double>(ns.size());

  fit_result out;
  for (const auto& cand : candidates) {
    candidate_fit fit;
    fit.model = cand;
    std::optional<double> exponent;
    if (cand.fitted_exponent()) {
      double mx = 0.0;
      double my = 0.0;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        mx += log_n[i];
        my += log_v[i];
      }
      mx /= m;
      my /= m;
      double sxx = 0.0;
      double sxy = 0.0;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
        sxy += (log_n[i] - mx) * (log_v[i] - my);
      }
      const double b = sxy / sxx;
      exponent = b;
      double ssr = 0.0;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = log_v[i] - (my + b * (log_n[i] - mx));
        ssr += r * r;
      }
      fit.residual = ssr;
      fit.slope = b;
      fit.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
    }
    std::vector<double> log_shape(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      log_shape[i] = std::log(cand(ns[i], exponent));
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      mean += log_v[i] - log_shape[i];
    }
    mean /= m;
    if (!cand.fitted_exponent()) {
      double ssr = 0.0;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = log_v[i] - log_shape[i] - mean;
        ssr += r * r;
      }
      fit.residual = ssr;
      if (cand.family() == model_family::power) {
        fit.slope = cand.exponent();
      }
    }
    fit.scale = std::exp(mean);
    fit.ratio_min = std::numeric_limits<double>::infinity();
    fit.ratio_max = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double ratio = std::exp(log_v[i] - log_shape[i] - mean);
      fit.ratio_min = std::min(fit.ratio_min, ratio);
      fit.ratio_max = std::max(fit.ratio_max, ratio);
    }
    out.candidates.push_back(fit);
  }

  double min_res = std::numeric_limits<double>::infinity();
  for (const auto& c : out.candidates) {
    min_res = std::min(min_res, c.residual);
  }
  const double tie = min_res + 1e-18 * m;
  bool found = false;
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    const auto& c = out.candidates[i];
    if (c.residual > tie) {
      continue;
    }
    if (!found
        || c.model.free_parameters() < out.candidates[out.best].model.free_parameters()) {
      out.best = i;
      found = true;
    }
  }
  return out;
}

}  // namespace zonal

#endif  // ZONAL_ASYMPTOTICS_HPP
