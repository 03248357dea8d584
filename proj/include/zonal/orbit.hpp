#ifndef ZONAL_ORBIT_HPP
#define ZONAL_ORBIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zonal/compensated.hpp"
#include "zonal/error.hpp"
#include "zonal/hyperbolic.hpp"
#include "zonal/parallel.hpp"
#include "zonal/presentation.hpp"

namespace zonal {

/// Default word-length cap; keeps matrix entries (~e^{d/2}) and heights
/// (~e^{-d}) inside binary64 for groups of moderate displacement.
inline constexpr int default_word_length_cap = 40;

/// How visitor callbacks are delivered when the enumeration runs on several
/// threads.
enum class delivery {
  concurrent,  ///< visitor is called from worker threads simultaneously
  serialized,  ///< calls are guarded by a mutex
};

struct enumeration_options {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  delivery mode = delivery::serialized;
  int word_length_cap = default_word_length_cap;
};

/// A syllable together with its matrix, precomputed once per enumeration.
struct syllable_entry {
  syllable syl;
  mobius matrix;
  int length = 0;
};

/// One orbit point g(w), with the normal word of g and d(z, g(w)).
///
/// `path` points into enumeration-owned storage and is only valid during the
/// visitor call; use `word()` to keep a copy.
struct orbit_record {
  std::span<const syllable_entry* const> path;
  int length = 0;
  mobius matrix;
  h_point point = h_point::base(model::h2);
  double dist = 0.0;

  normal_word word() const {
    std::vector<syllable> s;
    s.reserve(path.size());
    for (const auto* e : path) {
      s.push_back(e->syl);
    }
    return normal_word(std::move(s));
  }
};

namespace detail {

inline void exponent_vectors(int rank, int norm, std::vector<int>& current, std::size_t pos,
                             std::vector<std::vector<int>>& out) {
  if (pos + 1 == static_cast<std::size_t>(rank)) {
    if (norm == 0) {
      current[pos] = 0;
      out.push_back(current);
    } else {
      current[pos] = -norm;
      out.push_back(current);
      current[pos] = norm;
      out.push_back(current);
    }
    return;
  }
  for (int a = -norm; a <= norm; ++a) {
    current[pos] = a;
    exponent_vectors(rank, norm - std::abs(a), current, pos + 1, out);
  }
}

/// Every syllable of factor f with l1 length in [1, n_max], ordered by length
/// and then lexicographically by exponent vector.
inline std::vector<syllable_entry> syllable_table(const group_presentation& gp, std::size_t f,
                                                  int n_max) {
  const factor& fac = gp.at(f);
  const int rank = fac.rank();
  // powers[j][n_max + e] = generator_j^e, built by single-generator extension.
  std::vector<std::vector<mobius>> powers(static_cast<std::size_t>(rank));
  for (int j = 0; j < rank; ++j) {
    auto& row = powers[static_cast<std::size_t>(j)];
    row.assign(2 * static_cast<std::size_t>(n_max) + 1, mobius());
    const mobius& g = fac.generators()[static_cast<std::size_t>(j)];
    const mobius g_inv = inverse(g);
    for (int e = 1; e <= n_max; ++e) {
      row[static_cast<std::size_t>(n_max + e)] =
          mobius::multiply_raw(row[static_cast<std::size_t>(n_max + e - 1)], g);
      row[static_cast<std::size_t>(n_max - e)] =
          mobius::multiply_raw(row[static_cast<std::size_t>(n_max - e + 1)], g_inv);
    }
  }
  std::vector<syllable_entry> table;
  std::vector<int> current(static_cast<std::size_t>(rank), 0);
  for (int norm = 1; norm <= n_max; ++norm) {
    std::vector<std::vector<int>> vecs;
    exponent_vectors(rank, norm, current, 0, vecs);
    for (auto& v : vecs) {
      mobius m;
      for (int j = 0; j < rank; ++j) {
        if (v[static_cast<std::size_t>(j)] != 0) {
          m = mobius::multiply_raw(
              m, powers[static_cast<std::size_t>(j)]
                       [static_cast<std::size_t>(n_max + v[static_cast<std::size_t>(j)])]);
        }
      }
      table.push_back({syllable{f, std::move(v)}, m, norm});
    }
  }
  return table;
}

inline std::string describe(std::span<const syllable_entry* const> path) {
  std::string s;
  for (const auto* e : path) {
    s += (s.empty() ? "" : " ") + std::string("f") + std::to_string(e->syl.factor_index) + "^(";
    for (std::size_t j = 0; j < e->syl.exponents.size(); ++j) {
      s += (j ? "," : "") + std::to_string(e->syl.exponents[j]);
    }
    s += ")";
  }
  return s.empty() ? "identity" : s;
}

/// Depth-first enumeration of normal words by syllable extension with an
/// exact length budget.
class orbit_walker {
 public:
  orbit_walker(const group_presentation& gp, const h_point& z, const h_point& w, int n_max,
               const std::vector<std::vector<syllable_entry>>& tables)
      : gp_(gp), z_(z), w_(w), n_max_(n_max), tables_(tables) {
    path_.reserve(static_cast<std::size_t>(n_max) + 1);
  }

  /// Subtrees whose root lies farther than `r` from z are skipped.
  void prune_beyond(double r) { prune_beyond_ = r; }

  /// Visits every word whose first syllable is `first`.
  template <class Visitor>
  void walk_from(const syllable_entry& first, Visitor& visit) {
    path_.clear();
    step(mobius(), 0, first, visit);
  }

 private:
  template <class Visitor>
  void step(const mobius& m, int len, const syllable_entry& e, Visitor& visit) {
    const mobius next = mobius::multiply_raw(m, e.matrix);
    const int next_len = len + e.length;
    path_.push_back(&e);
    orbit_record rec;
    rec.path = std::span<const syllable_entry* const>(path_.data(), path_.size());
    rec.length = next_len;
    rec.matrix = next;
    try {
      rec.point = apply(next, w_);
    } catch (const overflow_domain_error& ex) {
      throw overflow_domain_error(std::string(ex.what()) + " at word " + describe(rec.path),
                                  next_len);
    }
    rec.dist = distance(z_, rec.point);
    visit(rec);
    if (next_len < n_max_ && rec.dist <= prune_beyond_) {
      const std::size_t f = e.syl.factor_index;
      for (std::size_t g = 0; g < tables_.size(); ++g) {
        if (g == f) {
          continue;
        }
        for (const auto& child : tables_[g]) {
          if (child.length > n_max_ - next_len) {
            break;
          }
          step(next, next_len, child, visit);
        }
      }
    }
    path_.pop_back();
  }

  const group_presentation& gp_;
  h_point z_;
  h_point w_;
  int n_max_;
  double prune_beyond_ = std::numeric_limits<double>::infinity();
  const std::vector<std::vector<syllable_entry>>& tables_;
  std::vector<const syllable_entry*> path_;
};

inline void check_enumeration_args(const group_presentation& gp, const h_point& z,
                                   const h_point& w, int n_max, const enumeration_options& opt) {
  if (n_max < 0) {
    throw usage_error("n_max must be nonnegative");
  }
  if (n_max > opt.word_length_cap) {
    throw validation_error("n_max = " + std::to_string(n_max) + " exceeds the word-length cap "
                           + std::to_string(opt.word_length_cap));
  }
  if (z.kind() != gp.kind() || w.kind() != gp.kind()) {
    throw usage_error("base points must belong to the model of the group");
  }
}

/// Runs `job(partition_index, walker)` over the partitions, one walker per
/// worker thread.
template <class Job>
void run_partitions(const group_presentation& gp, const h_point& z, const h_point& w, int n_max,
                    const std::vector<std::vector<syllable_entry>>& tables,
                    std::size_t partitions, unsigned threads, Job&& job,
                    double prune_beyond = std::numeric_limits<double>::infinity()) {
  for_each_partition(
      partitions, threads,
      [&] {
        orbit_walker walker(gp, z, w, n_max, tables);
        walker.prune_beyond(prune_beyond);
        return walker;
      },
      job);
}

struct tables_and_firsts {
  std::vector<std::vector<syllable_entry>> tables;
  std::vector<const syllable_entry*> firsts;  // every syllable of length <= n_max
};

inline tables_and_firsts build_tables(const group_presentation& gp, int n_max) {
  tables_and_firsts t;
  for (std::size_t f = 0; f < gp.size(); ++f) {
    t.tables.push_back(syllable_table(gp, f, n_max));
  }
  for (const auto& table : t.tables) {
    for (const auto& e : table) {
      t.firsts.push_back(&e);
    }
  }
  return t;
}

}  // namespace detail

/// Visits every element of word length <= n_max exactly once (identity
/// first, then the first-syllable partitions).
///
/// The visitor receives `const orbit_record&`. With several threads and
/// `delivery::concurrent` it must be safe to call concurrently.
template <class Visitor>
void enumerate(const group_presentation& gp, const h_point& z, const h_point& w, int n_max,
               Visitor&& visit, const enumeration_options& opt = {}) {
  detail::check_enumeration_args(gp, z, w, n_max, opt);
  orbit_record id;
  id.point = w;
  id.dist = distance(z, w);
  visit(static_cast<const orbit_record&>(id));
  if (n_max == 0) {
    return;
  }
  const auto t = detail::build_tables(gp, n_max);
  std::mutex mu;
  auto guarded = [&](const orbit_record& r) {
    if (opt.mode == delivery::serialized) {
      std::lock_guard<std::mutex> lock(mu);
      visit(r);
    } else {
      visit(r);
    }
  };
  detail::run_partitions(gp, z, w, n_max, t.tables, t.firsts.size(), opt.threads,
                         [&](std::size_t p, detail::orbit_walker& walker) {
                           walker.walk_from(*t.firsts[p], guarded);
                         });
}

/// Cumulative orbit counts and Poincare partial sums
/// P_n(z, w, s) = sum_{|g| <= n} exp(-s d(z, g w)), for n = 0..n_max.
struct partial_sum_table {
  struct entry {
    int n = 0;
    std::uint64_t count = 0;  ///< elements with |g| <= n
    double value = 0.0;       ///< P_n
  };

  double s = 0.0;
  h_point z = h_point::base(model::h2);
  h_point w = h_point::base(model::h2);
  std::vector<entry> entries;

  const entry& at(int n) const { return entries.at(static_cast<std::size_t>(n)); }
  int n_max() const { return static_cast<int>(entries.size()) - 1; }
};

/// Per-length term sums of the orbit, split by first syllable.
///
/// Partition p collects the words whose first syllable is `firsts[p]`; the
/// identity is kept separately. Sums are compensated within a partition and
/// combined in partition order, so results do not depend on the thread count.
struct orbit_decomposition {
  struct part {
    syllable first;
    std::vector<std::uint64_t> counts;  ///< per exact length
    std::vector<compensated_sum> sums;  ///< per exact length
  };

  double s = 0.0;
  int n_max = 0;
  h_point z = h_point::base(model::h2);
  h_point w = h_point::base(model::h2);
  double identity_term = 0.0;
  std::vector<part> parts;
};

inline orbit_decomposition decompose_orbit(const group_presentation& gp, const h_point& z,
                                           const h_point& w, double s, int n_max,
                                           const enumeration_options& opt = {}) {
  if (!(s > 0.0)) {
    throw usage_error("Poincare exponent s must be positive");
  }
  detail::check_enumeration_args(gp, z, w, n_max, opt);
  orbit_decomposition out;
  out.s = s;
  out.n_max = n_max;
  out.z = z;
  out.w = w;
  out.identity_term = std::exp(-s * distance(z, w));
  if (n_max == 0) {
    return out;
  }
  const auto t = detail::build_tables(gp, n_max);
  const auto len = static_cast<std::size_t>(n_max) + 1;
  out.parts.resize(t.firsts.size());
  for (std::size_t p = 0; p < t.firsts.size(); ++p) {
    out.parts[p].first = t.firsts[p]->syl;
    out.parts[p].counts.assign(len, 0);
    out.parts[p].sums.assign(len, compensated_sum());
  }
  detail::run_partitions(gp, z, w, n_max, t.tables, t.firsts.size(), opt.threads,
                         [&](std::size_t p, detail::orbit_walker& walker) {
                           auto& part = out.parts[p];
                           auto visit = [&](const orbit_record& r) {
                             const auto k = static_cast<std::size_t>(r.length);
                             ++part.counts[k];
                             part.sums[k].add(std::exp(-s * r.dist));
                           };
                           walker.walk_from(*t.firsts[p], visit);
                         });
  return out;
}

namespace detail {

template <class Keep>
partial_sum_table accumulate(const orbit_decomposition& d, Keep&& keep) {
  partial_sum_table table;
  table.s = d.s;
  table.z = d.z;
  table.w = d.w;
  const auto len = static_cast<std::size_t>(d.n_max) + 1;
  std::vector<std::uint64_t> counts(len, 0);
  std::vector<compensated_sum> sums(len);
  counts[0] = 1;
  sums[0].add(d.identity_term);
  for (const auto& part : d.parts) {
    if (!keep(part)) {
      continue;
    }
    for (std::size_t k = 1; k < len; ++k) {
      counts[k] += part.counts[k];
      sums[k].add(part.sums[k]);
    }
  }
  compensated_sum running;
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < len; ++k) {
    running.add(sums[k]);
    count += counts[k];
    table.entries.push_back({static_cast<int>(k), count, running.value()});
  }
  return table;
}

}  // namespace detail

/// True for syllables of a maximal-rank parabolic factor with l1 length >= 2:
/// the leading syllables that mark a deep excursion into a maximal cusp.
inline bool is_cusp_excursion(const group_presentation& gp, const syllable& s) {
  return gp.is_max_rank_parabolic(s.factor_index) && s.length() >= 2;
}

/// P_n(z, w, s) for n = 0..n_max.
inline partial_sum_table partial_sum(const orbit_decomposition& d) {
  return detail::accumulate(d, [](const orbit_decomposition::part&) { return true; });
}

inline partial_sum_table partial_sum(const group_presentation& gp, const h_point& z,
                                     const h_point& w, double s, int n_max,
                                     const enumeration_options& opt = {}) {
  return partial_sum(decompose_orbit(gp, z, w, s, n_max, opt));
}

/// Partial sums restricted to words whose first syllable is not a cusp
/// excursion (see `is_cusp_excursion`); the identity is included.
inline partial_sum_table restricted_sum(const group_presentation& gp,
                                        const orbit_decomposition& d) {
  return detail::accumulate(
      d, [&](const orbit_decomposition::part& p) { return !is_cusp_excursion(gp, p.first); });
}

inline partial_sum_table restricted_sum(const group_presentation& gp, const h_point& z,
                                        const h_point& w, double s, int n_max,
                                        const enumeration_options& opt = {}) {
  return restricted_sum(gp, decompose_orbit(gp, z, w, s, n_max, opt));
}

/// Sum of exp(-s d(z, g w)) over |g| <= n_max whose first syllable is
/// `prefix`, a maximal-rank parabolic syllable of length in [2, n_max].
inline double coset_sum(const group_presentation& gp, const h_point& z, const h_point& w,
                        double s, int n_max, const syllable& prefix,
                        const enumeration_options& opt = {}) {
  if (!(s > 0.0)) {
    throw usage_error("Poincare exponent s must be positive");
  }
  detail::check_enumeration_args(gp, z, w, n_max, opt);
  if (prefix.factor_index >= gp.size() || !gp.is_max_rank_parabolic(prefix.factor_index)
      || static_cast<int>(prefix.exponents.size()) != gp.at(prefix.factor_index).rank()) {
    throw usage_error("coset prefix must be a syllable of a maximal-rank parabolic factor");
  }
  const int k = prefix.length();
  if (k < 2 || k > n_max) {
    throw usage_error("coset prefix length " + std::to_string(k) + " is outside [2, "
                      + std::to_string(n_max) + "]");
  }
  const auto t = detail::build_tables(gp, n_max);
  const syllable_entry* first = nullptr;
  for (const auto* e : t.firsts) {
    if (e->syl == prefix) {
      first = e;
      break;
    }
  }
  compensated_sum sum;
  auto visit = [&](const orbit_record& r) { sum.add(std::exp(-s * r.dist)); };
  detail::orbit_walker walker(gp, z, w, n_max, t.tables);
  walker.walk_from(*first, visit);
  return sum.value();
}

/// Cusp-excursion prefixes of length 2..n_max, with their coset sums taken
/// from a decomposition.
inline std::vector<std::pair<syllable, double>> coset_sums(const group_presentation& gp,
                                                           const orbit_decomposition& d) {
  std::vector<std::pair<syllable, double>> out;
  for (const auto& part : d.parts) {
    if (!is_cusp_excursion(gp, part.first)) {
      continue;
    }
    compensated_sum sum;
    for (const auto& x : part.sums) {
      sum.add(x);
    }
    out.emplace_back(part.first, sum.value());
  }
  return out;
}

/// Orbit counting function N(R) = #{g : |g| <= n_max, d(z, g w) <= R}.
///
/// `horizon()` is the radius below which the count is taken to be complete:
/// the nearest word of the maximal length (anything longer is assumed to lie
/// farther out), or the radius limit of a pruned enumeration if smaller.
class counting_function {
 public:
  counting_function() = default;

  explicit counting_function(std::vector<double> radii,
                             double horizon = std::numeric_limits<double>::infinity())
      : radii_(std::move(radii)) {
    std::sort(radii_.begin(), radii_.end());
    horizon_ = std::min(horizon, max_radius());
  }

  std::uint64_t operator()(double r) const {
    return static_cast<std::uint64_t>(std::upper_bound(radii_.begin(), radii_.end(), r)
                                      - radii_.begin());
  }

  std::uint64_t total() const { return radii_.size(); }
  double max_radius() const { return radii_.empty() ? 0.0 : radii_.back(); }
  double horizon() const { return horizon_; }
  const std::vector<double>& radii() const { return radii_; }

 private:
  std::vector<double> radii_;
  double horizon_ = 0.0;
};

/// Counting function of the words of length <= n_max.
///
/// With a finite `radius_limit` only orbit points within that radius are
/// kept, and a subtree is abandoned once its root is more than one maximal
/// generator displacement beyond the limit. This makes n_max up to the
/// word-length cap affordable for estimating delta.
inline counting_function make_counting_function(
    const group_presentation& gp, const h_point& z, const h_point& w, int n_max,
    const enumeration_options& opt = {},
    double radius_limit = std::numeric_limits<double>::infinity()) {
  detail::check_enumeration_args(gp, z, w, n_max, opt);
  if (!(radius_limit > 0.0)) {
    throw usage_error("radius limit must be positive");
  }
  std::vector<double> radii;
  double frontier = std::numeric_limits<double>::infinity();
  const double d0 = distance(z, w);
  if (d0 <= radius_limit) {
    radii.push_back(d0);
  }
  if (n_max == 0) {
    frontier = d0;
  } else {
    const auto t = detail::build_tables(gp, n_max);
    const double prune = std::isfinite(radius_limit)
                             ? radius_limit + max_generator_displacement(gp, w)
                             : radius_limit;
    std::vector<std::vector<double>> per_part(t.firsts.size());
    std::vector<double> per_frontier(t.firsts.size(), std::numeric_limits<double>::infinity());
    detail::run_partitions(
        gp, z, w, n_max, t.tables, t.firsts.size(), opt.threads,
        [&](std::size_t p, detail::orbit_walker& walker) {
          auto visit = [&](const orbit_record& r) {
            if (r.dist <= radius_limit) {
              per_part[p].push_back(r.dist);
            }
            if (r.length == n_max) {
              per_frontier[p] = std::min(per_frontier[p], r.dist);
            }
          };
          walker.walk_from(*t.firsts[p], visit);
        },
        prune);
    for (std::size_t p = 0; p < per_part.size(); ++p) {
      radii.insert(radii.end(), per_part[p].begin(), per_part[p].end());
      frontier = std::min(frontier, per_frontier[p]);
    }
  }
  return counting_function(std::move(radii), std::min(frontier, radius_limit));
}

/// Least-squares estimate of the critical exponent from log N(R) ~ delta R.
struct delta_fit {
  double delta = 0.0;
  double standard_error = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;
  /// log N(R) is fitted better by a multiple of log R than by a multiple of
  /// R: the orbit grows subexponentially and `delta` is not meaningful.
  bool subexponential = false;
};

namespace detail {

struct line_fit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double residual = 0.0;  ///< sum of squared residuals
};

inline line_fit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  line_fit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.residual += r * r;
  }
  f.slope_stderr = (x.size() > 2 && sxx > 0.0) ? std::sqrt(f.residual / (n - 2.0) / sxx) : 0.0;
  return f;
}

}  // namespace detail

/// Default estimation window: R_min = 2 * (largest generator displacement at
/// w), R_max = 0.8 * cf.horizon().
///
/// Past the horizon the count misses long words (mostly deep cusp
/// excursions) and the fitted slope drops well below delta.
inline std::pair<double, double> default_delta_window(const group_presentation& gp,
                                                      const h_point& w,
                                                      const counting_function& cf) {
  return {2.0 * max_generator_displacement(gp, w), 0.8 * cf.horizon()};
}

/// Slope of log N(R) against R on an evenly spaced grid over [r_min, r_max],
/// for any nondecreasing N given as a callable; `horizon` plays the role of
/// the largest realized distance.
template <class Counts>
delta_fit delta_estimate_from(Counts&& count_at, double horizon, double r_min, double r_max,
                              int grid = 64) {
  if (!(r_min < r_max) || grid < 10) {
    throw insufficient_data_error("delta estimate needs r_min < r_max and a grid of >= 10 points");
  }
  if (r_max > 0.8 * horizon * (1.0 + 1e-12)) {
    throw insufficient_data_error("delta estimate window ends at R = " + std::to_string(r_max)
                                  + ", beyond 0.8 x the enumeration horizon "
                                  + std::to_string(horizon));
  }
  std::vector<double> rs;
  std::vector<double> log_rs;
  std::vector<double> log_ns;
  for (int j = 0; j < grid; ++j) {
    const double r = r_min + (r_max - r_min) * j / (grid - 1);
    const double n = static_cast<double>(count_at(r));
    if (n >= 10.0 && r > 0.0) {
      rs.push_back(r);
      log_rs.push_back(std::log(r));
      log_ns.push_back(std::log(n));
    }
  }
  if (rs.size() < 10) {
    throw insufficient_data_error("delta estimate has only " + std::to_string(rs.size())
                                  + " grid points with N(R) >= 10 in [" + std::to_string(r_min)
                                  + ", " + std::to_string(r_max) + "]");
  }
  const auto exp_fit = detail::fit_line(rs, log_ns);
  const auto pow_fit = detail::fit_line(log_rs, log_ns);
  delta_fit out;
  out.delta = exp_fit.slope;
  out.standard_error = exp_fit.slope_stderr;
  out.r_min = r_min;
  out.r_max = r_max;
  out.points = static_cast<int>(rs.size());
  out.subexponential = pow_fit.residual < exp_fit.residual || !(exp_fit.slope > 0.0);
  return out;
}

/// Slope of log N(R) against R on an evenly spaced grid over [r_min, r_max].
///
/// Needs at least 10 grid points with N(R) >= 10 and r_max no larger than
/// 0.8 times the largest realized distance; throws insufficient_data_error
/// otherwise.
inline delta_fit delta_estimate(const counting_function& cf, double r_min, double r_max,
                                int grid = 64) {
  return delta_estimate_from(cf, cf.max_radius(), r_min, r_max, grid);
}

/// Estimates delta with the default window from a radius-limited enumeration
/// up to the word-length cap.
///
/// The radius limit is the distance of the nearest single syllable of length
/// equal to the cap, which is usually where the cap starts to cut the count.
inline delta_fit estimate_delta(const group_presentation& gp, const h_point& z, const h_point& w,
                                const enumeration_options& opt = {}) {
  const int cap = opt.word_length_cap;
  detail::check_enumeration_args(gp, z, w, cap, opt);
  double limit = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < gp.size(); ++f) {
    for (const auto& e : detail::syllable_table(gp, f, cap)) {
      if (e.length == cap) {
        limit = std::min(limit, distance(z, apply(e.matrix, w)));
      }
    }
  }
  const auto cf = make_counting_function(gp, z, w, cap, opt, limit);
  const auto [r_min, r_max] = default_delta_window(gp, w, cf);
  return delta_estimate(cf, r_min, r_max);
}

}  // namespace zonal

#endif  // ZONAL_ORBIT_HPP
