#ifndef ZONAL_REPORT_HPP
#define ZONAL_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zonal/asymptotics.hpp"
#include "zonal/orbit.hpp"
#include "zonal/presentation.hpp"
#include "zonal/sumlevel.hpp"

// CSV and JSON emission. Floats carry 17 significant digits; exact
// rationals are written as "p/q" next to a decimal column. Metadata lines
// start with '#'.

namespace zonal {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Ordered "# key: value" metadata.
using metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string metadata_block(const metadata& meta) {
  std::string out;
  for (const auto& [k, v] : meta) {
    out += "# " + k + ": " + v + "\n";
  }
  return out;
}

/// Per-length counts from an enumeration next to the closed-form counts.
inline std::string enumeration_csv(const metadata& meta, const std::vector<std::uint64_t>& counts,
                                   const std::vector<exact_uint>& closed_form) {
  std::string out = metadata_block(meta) + "n,count,closed_form\n";
  for (std::size_t n = 0; n < counts.size(); ++n) {
    out += std::to_string(n) + "," + std::to_string(counts[n]) + ","
           + closed_form.at(n).to_string() + "\n";
  }
  return out;
}

/// Rows n, cumulative count, P_n, restricted sum, predicted model, and
/// P_n / shape(n) for n >= 2 (empty below, or without a model).
inline std::string poincare_csv(const metadata& meta, const partial_sum_table& full,
                                const partial_sum_table& restricted,
                                const std::optional<asymptotic_model>& model) {
  std::string out = metadata_block(meta) + "n,count,P_n,restricted_sum,predicted_model,ratio\n";
  for (const auto& e : full.entries) {
    out += std::to_string(e.n) + "," + std::to_string(e.count) + "," + format_double(e.value)
           + "," + format_double(restricted.at(e.n).value) + ","
           + (model ? model->name() : std::string("none")) + ",";
    if (model && e.n >= 2) {
      out += format_double(e.value / (*model)(e.n));
    }
    out += "\n";
  }
  return out;
}

inline std::string sumlevel_csv(const metadata& meta, const sum_level_table& t) {
  std::string out = metadata_block(meta)
                    + "n,lambda,lambda_decimal,cumulative,cumulative_decimal,lambda_log2n,"
                      "cumulative_log2n_over_n\n";
  for (const auto& [n, v] : t.entries) {
    const auto& c = t.cumulative.at(n);
    out += std::to_string(n) + "," + to_fraction_string(v) + "," + format_double(v.get_d()) + ","
           + to_fraction_string(c) + "," + format_double(c.get_d()) + ","
           + format_double(t.normalized_measure.at(n)) + ","
           + format_double(t.normalized_cumulative.at(n)) + "\n";
  }
  return out;
}

struct delta_source {
  double delta = 0.0;
  bool estimated = false;
  double stderr_value = 0.0;
};

/// Regime report with model tables on a dyadic grid n = 2, 4, ..., 2^k <=
/// model_n_max and a convolution-ratio summary up to convolution_n_max.
inline nlohmann::json regime_json(const delta_source& src, int r_max, double epsilon = 0.02,
                                  int model_n_max = 1 << 20, int convolution_n_max = 1000) {
  const auto rep = classify_regime(src.delta, r_max, epsilon);
  nlohmann::json j;
  j["version"] = 1;
  j["delta"] = rep.delta;
  j["delta_source"] = src.estimated ? "estimated" : "given";
  if (src.estimated) {
    j["delta_stderr"] = src.stderr_value;
  }
  j["r_max"] = rep.r_max;
  j["beta"] = rep.beta;
  j["regime"] = to_string(rep.kind);
  j["predicted_exponent"] = rep.kind == regime::polynomial ? nlohmann::json(rep.predicted_exponent)
                                                            : nlohmann::json(nullptr);
  j["boundary_flag"] = rep.boundary_flag;
  j["epsilon"] = rep.epsilon;
  j["candidates"] = nlohmann::json::array();
  for (auto c : rep.candidates) {
    j["candidates"].push_back(to_string(c));
  }
  j["predicted_model"] = rep.predicted_model().name();
  j["models"] = nlohmann::json::array();
  for (int n = 2; n <= model_n_max; n *= 2) {
    j["models"].push_back({{"n", n},
                           {"wandering_rate", wandering_rate_model(src.delta, r_max, n)},
                           {"return_sequence", return_sequence_model(src.delta, r_max, n)}});
  }
  const auto rows = convolution_check(src.delta, r_max, convolution_n_max);
  double lo = rows.front().ratio;
  double hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  j["convolution"] = {{"n_max", convolution_n_max},
                      {"ratio_min", lo},
                      {"ratio_max", hi},
                      {"bound", convolution_bound(src.delta, r_max)}};
  return j;
}

}  // namespace zonal

#endif  // ZONAL_REPORT_HPP
