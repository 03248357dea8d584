#ifndef ZONAL_CONFIG_HPP
#define ZONAL_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zonal/error.hpp"
#include "zonal/hyperbolic.hpp"
#include "zonal/json_schema.hpp"
#include "zonal/orbit.hpp"
#include "zonal/presentation.hpp"
#include "zonal/schemas.hpp"
#include "zonal/sumlevel.hpp"

namespace zonal {

/// Largest admissible (word-length cap) x (max generator displacement):
/// orbit points at that distance have heights near e^{-600}, still normal
/// binary64 numbers, and matrix entries near e^{300}.
inline constexpr double displacement_budget = 600.0;

/// A validated run configuration. Absent optional fields keep their
/// defaults; the group is optional because `regime` and `sumlevel` do not
/// need one.
struct run_config {
  nlohmann::json source;
  std::optional<group_presentation> group;
  std::optional<h_point> z;
  std::optional<h_point> w;
  int word_length_cap = default_word_length_cap;
  std::optional<double> s;
  bool estimate_delta = false;
  std::optional<double> delta;
  std::optional<int> r_max;
  std::optional<int> n_max;
  std::optional<std::pair<int, int>> fit_range;
  int sum_level_cap = default_sum_level_cap;
  std::optional<std::string> output;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  /// z and w default to the base point i (or j in H3).
  h_point base_z() const { return z ? *z : h_point::base(group->kind()); }
  h_point base_w() const { return w ? *w : h_point::base(group->kind()); }

  enumeration_options enumeration() const {
    enumeration_options opt;
    opt.threads = threads;
    opt.word_length_cap = word_length_cap;
    return opt;
  }
};

inline const json_schema& run_config_schema() {
  static const json_schema schema(nlohmann::json::parse(schemas::run_config));
  return schema;
}

inline const json_schema& regime_report_schema() {
  static const json_schema schema(nlohmann::json::parse(schemas::regime_report));
  return schema;
}

namespace detail {

inline complex complex_from(const nlohmann::json& v) {
  return {v.at(0).get<double>(), v.at(1).get<double>()};
}

inline mobius matrix_from(const nlohmann::json& v) {
  return {complex_from(v.at(0)), complex_from(v.at(1)), complex_from(v.at(2)),
          complex_from(v.at(3))};
}

inline h_point point_from(const nlohmann::json& v, model m, const char* name) {
  const std::size_t want = m == model::h2 ? 2 : 3;
  if (v.size() != want) {
    throw validation_error(std::string(name) + " needs " + std::to_string(want)
                           + " coordinates in " + to_string(m));
  }
  try {
    if (m == model::h2) {
      return h_point::h2(v[0].get<double>(), v[1].get<double>());
    }
    return h_point::h3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  } catch (const usage_error& e) {
    throw validation_error(std::string(name) + ": " + e.what());
  }
}

inline group_presentation group_from(const nlohmann::json& g) {
  const model m = g.at("model").get<std::string>() == "H2" ? model::h2 : model::h3;
  std::vector<factor> factors;
  try {
    for (const auto& f : g.at("factors")) {
      if (f.at("kind").get<std::string>() == "parabolic") {
        std::vector<mobius> gens;
        for (const auto& mat : f.at("generators")) {
          gens.push_back(matrix_from(mat));
        }
        const auto& fp = f.at("fixed_point");
        factors.push_back(factor::parabolic(std::move(gens),
                                            fp.is_string() ? boundary_point::infinity()
                                                           : boundary_point::finite(complex_from(fp))));
      } else {
        factors.push_back(factor::loxodromic(matrix_from(f.at("generator"))));
      }
    }
  } catch (const usage_error& e) {
    throw validation_error(std::string("group: ") + e.what());
  }
  return {m, std::move(factors), g.value("name", std::string("custom"))};
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += (i ? sep : "") + parts[i];
  }
  return out;
}

}  // namespace detail

/// Schema check, then semantic checks: the group presentation, point
/// dimensions and the word-length cap against the displacement budget.
inline run_config parse_config(const nlohmann::json& doc) {
  const auto problems = run_config_schema().validate(doc);
  if (!problems.empty()) {
    throw validation_error("config does not match the schema: " + detail::join(problems, "; "));
  }
  run_config c;
  c.source = doc;
  c.word_length_cap = doc.value("word_length_cap", default_word_length_cap);
  c.sum_level_cap = doc.value("sum_level_cap", default_sum_level_cap);
  c.threads = doc.value("threads", 1U);
  c.seed = doc.value("seed", std::uint64_t{0});
  if (doc.contains("group")) {
    c.group = detail::group_from(doc["group"]);
    const auto issues = validate(*c.group);
    if (!issues.empty()) {
      throw validation_error("group \"" + c.group->name() + "\" is invalid: "
                             + detail::join(issues, "; "));
    }
    if (doc.contains("z")) c.z = detail::point_from(doc["z"], c.group->kind(), "z");
    if (doc.contains("w")) c.w = detail::point_from(doc["w"], c.group->kind(), "w");
    const double disp = max_generator_displacement(*c.group, c.base_w());
    if (c.word_length_cap * disp > displacement_budget) {
      throw validation_error("word-length cap " + std::to_string(c.word_length_cap)
                             + " times the largest generator displacement "
                             + std::to_string(disp) + " exceeds "
                             + std::to_string(displacement_budget));
    }
  } else if (doc.contains("z") || doc.contains("w")) {
    throw validation_error("base points z and w need a group");
  }
  if (doc.contains("s")) {
    if (doc["s"].is_string()) {
      c.estimate_delta = true;
    } else {
      c.s = doc["s"].get<double>();
    }
  }
  if (doc.contains("delta")) c.delta = doc["delta"].get<double>();
  if (doc.contains("r_max")) c.r_max = doc["r_max"].get<int>();
  if (doc.contains("n_max")) c.n_max = doc["n_max"].get<int>();
  if (doc.contains("fit_range")) {
    c.fit_range = std::pair{doc["fit_range"][0].get<int>(), doc["fit_range"][1].get<int>()};
    if (c.fit_range->first >= c.fit_range->second) {
      throw validation_error("fit_range must be increasing");
    }
  }
  if (doc.contains("output")) c.output = doc["output"].get<std::string>();
  return c;
}

/// Parses JSON text; syntax errors become validation errors carrying the
/// parser's line and column.
inline run_config parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(std::string("malformed config JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline run_config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error("cannot read config file " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

/// The presentation as config JSON (inverse of the "group" field).
inline nlohmann::json group_to_json(const group_presentation& gp) {
  auto cx = [](const complex& v) { return nlohmann::json::array({v.real(), v.imag()}); };
  auto mat = [&](const mobius& m) {
    return nlohmann::json::array({cx(m.a()), cx(m.b()), cx(m.c()), cx(m.d())});
  };
  nlohmann::json g;
  g["name"] = gp.name();
  g["model"] = to_string(gp.kind());
  g["factors"] = nlohmann::json::array();
  for (const auto& f : gp.factors()) {
    nlohmann::json jf;
    if (f.is_parabolic()) {
      jf["kind"] = "parabolic";
      const auto& fp = f.fixed_point();
      jf["fixed_point"] = fp.at_infinity ? nlohmann::json("infinity") : cx(fp.value);
      jf["generators"] = nlohmann::json::array();
      for (const auto& m : f.generators()) {
        jf["generators"].push_back(mat(m));
      }
    } else {
      jf["kind"] = "loxodromic";
      jf["generator"] = mat(f.generators().front());
    }
    g["factors"].push_back(jf);
  }
  return g;
}

}  // namespace zonal

#endif  // ZONAL_CONFIG_HPP
