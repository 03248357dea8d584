// zonal: command-line front end for orbit enumeration, Poincare partial
// sums, regime reports and sum-level measures.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 numeric
// domain (overflow, insufficient data for an estimate), 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zonal/config.hpp"
#include "zonal/report.hpp"

namespace {

struct options {
  std::string config;
  std::string out;
  std::optional<int> n_max;
  std::optional<double> s;
  bool estimate_delta = false;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<int> r_max;
};

zonal::run_config load(const options& o) {
  zonal::run_config c =
      o.config.empty() ? zonal::parse_config(nlohmann::json{{"version", 1}}) : zonal::load_config(o.config);
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.seed = *o.seed;
  if (o.n_max) c.n_max = *o.n_max;
  if (o.s) {
    c.s = *o.s;
    c.estimate_delta = false;
  }
  if (o.estimate_delta) {
    c.s.reset();
    c.estimate_delta = true;
  }
  if (o.delta) c.delta = *o.delta;
  if (o.r_max) c.r_max = *o.r_max;
  if (!o.out.empty()) c.output = o.out;
  return c;
}

const zonal::group_presentation& need_group(const zonal::run_config& c, const char* command) {
  if (!c.group) {
    throw zonal::validation_error(std::string(command) + " needs a config with a \"group\"");
  }
  return *c.group;
}

void emit(const zonal::run_config& c, const std::string& text) {
  if (!c.output) {
    std::cout << text;
    return;
  }
  std::ofstream f(*c.output, std::ios::binary);
  if (!f) {
    throw zonal::validation_error("cannot write " + *c.output);
  }
  f << text;
}

zonal::metadata common_meta(const char* command, const zonal::run_config& c) {
  zonal::metadata m{{"command", command}};
  if (c.group) {
    m.emplace_back("group", c.group->name());
    m.emplace_back("model", zonal::to_string(c.group->kind()));
    m.emplace_back("r_max", std::to_string(c.group->r_max()));
    m.emplace_back("z", c.base_z().to_string());
    m.emplace_back("w", c.base_w().to_string());
    m.emplace_back("word_length_cap", std::to_string(c.word_length_cap));
  }
  m.emplace_back("threads", std::to_string(c.threads));
  m.emplace_back("seed", std::to_string(c.seed));
  return m;
}

void run_enumerate(const zonal::run_config& c) {
  const auto& gp = need_group(c, "enumerate");
  const int n_max = c.n_max.value_or(10);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(n_max, 0)) + 1, 0);
  auto opt = c.enumeration();
  opt.mode = zonal::delivery::serialized;
  zonal::enumerate(
      gp, c.base_z(), c.base_w(), n_max,
      [&](const zonal::orbit_record& r) { ++counts[static_cast<std::size_t>(r.length)]; }, opt);
  auto meta = common_meta("enumerate", c);
  meta.emplace_back("n_max", std::to_string(n_max));
  emit(c, zonal::enumeration_csv(meta, counts, zonal::sphere_counts_group(gp, n_max)));
}

void run_poincare(const zonal::run_config& c) {
  const auto& gp = need_group(c, "poincare");
  const int n_max = c.n_max.value_or(10);
  const auto z = c.base_z();
  const auto w = c.base_w();
  const auto opt = c.enumeration();
  auto meta = common_meta("poincare", c);
  meta.emplace_back("n_max", std::to_string(n_max));
  double s = 0.0;
  if (c.s && !c.estimate_delta) {
    s = *c.s;
    meta.emplace_back("s", zonal::format_double(s));
  } else {
    const auto fit = zonal::estimate_delta(gp, z, w, opt);
    if (fit.subexponential) {
      throw zonal::insufficient_data_error("orbit growth looks subexponential; no delta estimate");
    }
    s = fit.delta;
    meta.emplace_back("s", zonal::format_double(s) + " (delta estimate)");
    meta.emplace_back("delta_estimate", zonal::format_double(fit.delta));
    meta.emplace_back("delta_stderr", zonal::format_double(fit.standard_error));
    meta.emplace_back("delta_window", zonal::format_double(fit.r_min) + " "
                                          + zonal::format_double(fit.r_max));
  }
  // Growth predictions hold at s = delta; an explicit --delta takes precedence.
  const double delta = c.delta.value_or(s);
  std::optional<zonal::asymptotic_model> model;
  try {
    const auto rep = zonal::classify_regime(delta, gp.r_max());
    model = rep.predicted_model();
    meta.emplace_back("regime", zonal::to_string(rep.kind));
    if (rep.boundary_flag) {
      meta.emplace_back("boundary_flag", "true");
    }
  } catch (const zonal::validation_error& e) {
    meta.emplace_back("regime", std::string("none (") + e.what() + ")");
  }
  const auto d = zonal::decompose_orbit(gp, z, w, s, n_max, opt);
  const auto full = zonal::partial_sum(d);
  const auto restricted = zonal::restricted_sum(gp, d);
  const auto [lo, hi] = c.fit_range.value_or(std::pair{std::max(2, n_max / 2), n_max});
  if (hi <= n_max && lo >= 2 && hi - lo >= 2) {
    std::vector<double> x;
    std::vector<double> y;
    for (int n = lo; n <= hi; ++n) {
      x.push_back(std::log(n));
      y.push_back(std::log(full.at(n).value));
    }
    const auto f = zonal::detail::fit_line(x, y);
    meta.emplace_back("fit_range", std::to_string(lo) + " " + std::to_string(hi));
    meta.emplace_back("fitted_slope", zonal::format_double(f.slope));
    meta.emplace_back("fitted_slope_stderr", zonal::format_double(f.slope_stderr));
  }
  emit(c, zonal::poincare_csv(meta, full, restricted, model));
}

void run_regime(const zonal::run_config& c) {
  zonal::delta_source src;
  int r_max = 0;
  if (c.r_max) {
    r_max = *c.r_max;
  } else if (c.group) {
    r_max = c.group->r_max();
  } else {
    throw zonal::validation_error("regime needs r_max (flag, config, or a group)");
  }
  if (c.delta) {
    src.delta = *c.delta;
  } else if (c.group) {
    const auto fit = zonal::estimate_delta(*c.group, c.base_z(), c.base_w(), c.enumeration());
    src.delta = fit.delta;
    src.estimated = true;
    src.stderr_value = fit.standard_error;
  } else {
    throw zonal::validation_error("regime needs delta (flag or config) or a group to estimate it");
  }
  const auto report = zonal::regime_json(src, r_max);
  const auto problems = zonal::regime_report_schema().validate(report);
  if (!problems.empty()) {
    throw zonal::error("regime report fails its own schema: " + problems.front());
  }
  emit(c, report.dump(2) + "\n");
}

void run_sumlevel(const zonal::run_config& c) {
  if (!c.n_max) {
    throw zonal::validation_error("sumlevel needs --n-max or \"n_max\"");
  }
  zonal::sum_level_options opt;
  opt.cap = c.sum_level_cap;
  opt.threads = c.threads;
  const auto table = zonal::cumulative_table(*c.n_max, opt);
  auto meta = common_meta("sumlevel", c);
  meta.emplace_back("n_max", std::to_string(*c.n_max));
  meta.emplace_back("cap", std::to_string(opt.cap));
  if (*c.n_max >= 16) {
    const auto fit = zonal::asymptotic_report(table);
    meta.emplace_back("best_family", fit.best_fit().model.name());
    for (const auto& cand : fit.candidates) {
      std::string line = "residual " + zonal::format_double(cand.residual) + ", ratio band "
                         + zonal::format_double(cand.ratio_min) + " "
                         + zonal::format_double(cand.ratio_max);
      if (cand.model.fitted_exponent() && cand.slope) {
        line += ", slope " + zonal::format_double(*cand.slope);
      }
      meta.emplace_back("fit " + cand.model.name(), line);
    }
  }
  emit(c, zonal::sumlevel_csv(meta, table));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit sums, regime reports and sum-level measures for zonal Kleinian groups"};
  app.require_subcommand(1);
  options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "run configuration (JSON)");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--n-max", o.n_max, "largest word length or sum level");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    sub->add_option("--seed", o.seed, "seed recorded in the output metadata");
  };
  auto* enumerate = app.add_subcommand("enumerate", "per-length orbit counts and closed forms");
  add_common(enumerate);
  auto* poincare = app.add_subcommand("poincare", "Poincare partial sums");
  add_common(poincare);
  auto* s_opt = poincare->add_option("--s", o.s, "exponent s");
  poincare->add_flag("--estimate-delta", o.estimate_delta, "use the delta estimate as s")
      ->excludes(s_opt);
  poincare->add_option("--delta", o.delta, "delta for the predicted model (default s)");
  auto* regime = app.add_subcommand("regime", "regime report (JSON)");
  add_common(regime);
  regime->add_option("--delta", o.delta, "critical exponent (default: estimate from the group)");
  regime->add_option("--r-max", o.r_max, "maximal cusp rank (default: from the group)");
  auto* sumlevel = app.add_subcommand("sumlevel", "exact sum-level measures (CSV)");
  add_common(sumlevel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto c = load(o);
    if (enumerate->parsed()) run_enumerate(c);
    if (poincare->parsed()) run_poincare(c);
    if (regime->parsed()) run_regime(c);
    if (sumlevel->parsed()) run_sumlevel(c);
  } catch (const zonal::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const zonal::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const zonal::overflow_domain_error& e) {
    std::cerr << "numeric domain error: " << e.what() << "\n";
    return 3;
  } catch (const zonal::insufficient_data_error& e) {
    std::cerr << "numeric domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
