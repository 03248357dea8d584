#ifndef ZONAL_SUMLEVEL_HPP
#define ZONAL_SUMLEVEL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zonal/asymptotics.hpp"
#include "zonal/error.hpp"
#include "zonal/exact.hpp"
#include "zonal/parallel.hpp"

// Lebesgue measure of the continued-fraction sum-level sets
//   C_n = { x in (0,1) : a_1 + ... + a_k = n for some k },
// computed exactly in two independent ways.

namespace zonal {

inline constexpr int default_sum_level_cap = 30;
inline constexpr int default_oracle_cap = 18;

/// Consecutive continuants (q_{k-1}, q_k) of a continued fraction [a_1, ..., a_k].
struct continuant_pair {
  exact_uint prev{0};
  exact_uint curr{1};

  /// Appends a digit: q_{k+1} = a q_k + q_{k-1}.
  continuant_pair advance(std::uint64_t digit) const { return {curr, exact_uint(digit) * curr + prev}; }

  /// Lebesgue measure of the cylinder as the exact denominator q_k (q_k + q_{k-1}).
  exact_uint cylinder_denominator() const { return curr * (curr + prev); }
};

/// q_0, q_1, ..., q_k for the given digits.
inline std::vector<exact_uint> continuants(std::span<const std::uint64_t> digits) {
  std::vector<exact_uint> q{exact_uint(1)};
  continuant_pair p;
  for (auto a : digits) {
    if (a == 0) {
      throw usage_error("continued-fraction digits must be positive");
    }
    p = p.advance(a);
    q.push_back(p.curr);
  }
  return q;
}

namespace detail {

/// Sum of many rationals by pairwise merging: slot i holds the sum of 2^i
/// inputs, so operands of each addition have comparable size.
class rational_accumulator {
 public:
  void add(mpq_class x) {
    for (auto& slot : slots_) {
      if (!slot.used) {
        slot.value = std::move(x);
        slot.used = true;
        return;
      }
      x += slot.value;
      slot.used = false;
    }
    slots_.push_back({std::move(x), true});
  }

  mpq_class value() const {
    mpq_class total(0);
    for (const auto& slot : slots_) {
      if (slot.used) {
        total += slot.value;
      }
    }
    return total;
  }

 private:
  struct slot {
    mpq_class value;
    bool used = false;
  };
  std::vector<slot> slots_;
};

/// Collects cylinder denominators, folding runs of equal ones into a single
/// count/denominator term before they reach GMP.
class denominator_sink {
 public:
  static constexpr std::size_t batch = std::size_t{1} << 20;

  void push(std::uint64_t d) {
    buffer_.push_back(d);
    ++count_;
    if (buffer_.size() >= batch) {
      flush();
    }
  }

  void flush() {
    std::sort(buffer_.begin(), buffer_.end());
    for (std::size_t i = 0; i < buffer_.size();) {
      std::size_t j = i;
      while (j < buffer_.size() && buffer_[j] == buffer_[i]) {
        ++j;
      }
      mpq_class term{mpz_class(static_cast<unsigned long>(j - i)),
                     mpz_class(static_cast<unsigned long>(buffer_[i]))};
      term.canonicalize();
      acc_.add(std::move(term));
      i = j;
    }
    buffer_.clear();
  }

  mpq_class value() {
    flush();
    return acc_.value();
  }

  std::uint64_t count() const { return count_; }

 private:
  std::vector<std::uint64_t> buffer_;
  rational_accumulator acc_;
  std::uint64_t count_ = 0;
};

inline void visit_compositions(int remaining, const continuant_pair& q, denominator_sink& sink) {
  for (int a = 1; a <= remaining; ++a) {
    const continuant_pair next = q.advance(static_cast<std::uint64_t>(a));
    if (a == remaining) {
      sink.push(next.cylinder_denominator().to_u64());
    } else {
      visit_compositions(remaining - a, next, sink);
    }
  }
}

inline void check_level(int n, int cap, const char* what) {
  if (n < 1) {
    throw validation_error(std::string(what) + " needs n >= 1, got " + std::to_string(n));
  }
  if (n > cap) {
    throw validation_error(std::string(what) + ": n = " + std::to_string(n)
                           + " exceeds the cap " + std::to_string(cap));
  }
}

}  // namespace detail

struct sum_level_options {
  int cap = default_sum_level_cap;
  /// 0 means one worker per hardware thread.
  unsigned threads = 1;
};

/// lambda(C_n) together with the number of cylinders summed (2^{n-1}).
struct level_measure {
  int n = 0;
  mpq_class value;
  std::uint64_t cylinders = 0;
};

/// Sums 1/(q_k (q_k + q_{k-1})) over all compositions (a_1, ..., a_k) of n,
/// one partition per first digit.
inline level_measure measure_level(int n, const sum_level_options& opt = {}) {
  detail::check_level(n, opt.cap, "sum-level measure");
  const auto parts = static_cast<std::size_t>(n);
  std::vector<mpq_class> sums(parts);
  std::vector<std::uint64_t> counts(parts);
  detail::for_each_partition(
      parts, opt.threads, [] { return 0; },
      [&](std::size_t i, int&) {
        const int first = static_cast<int>(i) + 1;
        const continuant_pair q = continuant_pair{}.advance(static_cast<std::uint64_t>(first));
        detail::denominator_sink sink;
        if (first == n) {
          sink.push(q.cylinder_denominator().to_u64());
        } else {
          detail::visit_compositions(n - first, q, sink);
        }
        sums[i] = sink.value();
        counts[i] = sink.count();
      });
  level_measure out;
  out.n = n;
  detail::rational_accumulator acc;
  for (std::size_t i = 0; i < parts; ++i) {
    acc.add(sums[i]);
    out.cylinders += counts[i];
  }
  out.value = acc.value();
  if (gcd(out.value.get_num(), out.value.get_den()) != 1) {
    throw error("sum-level measure is not in lowest terms");
  }
  return out;
}

/// lambda(C_n) as an exact rational.
inline mpq_class sum_level_measure(int n, const sum_level_options& opt = {}) {
  return measure_level(n, opt).value;
}

/// A nonnegative fraction num/den with machine-word parts.
struct fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  mpq_class to_mpq() const {
    mpq_class q{mpz_class(static_cast<unsigned long>(num)),
                mpz_class(static_cast<unsigned long>(den))};
    q.canonicalize();
    return q;
  }

  friend bool operator<(const fraction& a, const fraction& b) {
    return static_cast<unsigned __int128>(a.num) * b.den
           < static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const fraction& a, const fraction& b) { return !(b < a); }
};

/// Open interval (lo, hi) with rational endpoints.
struct rational_interval {
  fraction lo;
  fraction hi;
};

/// C_n as a sorted list of disjoint intervals, built from
///   C_n = (1/(n+1), 1/n)  u  union_{j<n} phi_j(C_{n-j}),   phi_j(y) = 1/(j + y).
///
/// Endpoints come from the recursion only; no cylinder formula is used.
inline std::vector<rational_interval> interval_oracle(int n, int cap = default_oracle_cap) {
  detail::check_level(n, cap, "interval oracle");
  std::vector<std::vector<rational_interval>> levels(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    auto& level = levels[static_cast<std::size_t>(k)];
    const auto uk = static_cast<std::uint64_t>(k);
    level.push_back({{1, uk + 1}, {1, uk}});
    for (int j = 1; j < k; ++j) {
      const auto uj = static_cast<std::uint64_t>(j);
      for (const auto& iv : levels[static_cast<std::size_t>(k - j)]) {
        // 1/(j + p/q) = q/(j q + p); phi_j reverses orientation.
        const exact_uint lo_den = exact_uint(uj) * exact_uint(iv.hi.den) + exact_uint(iv.hi.num);
        const exact_uint hi_den = exact_uint(uj) * exact_uint(iv.lo.den) + exact_uint(iv.lo.num);
        level.push_back({{iv.hi.den, lo_den.to_u64()}, {iv.lo.den, hi_den.to_u64()}});
      }
    }
  }
  auto out = std::move(levels[static_cast<std::size_t>(n)]);
  std::sort(out.begin(), out.end(),
            [](const rational_interval& a, const rational_interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i].lo < out[i].hi) || out[i].lo.num == 0 || out[i].hi.den < out[i].hi.num) {
      throw error("interval oracle produced an interval outside (0, 1)");
    }
    if (i + 1 < out.size() && !(out[i].hi <= out[i + 1].lo)) {
      throw error("interval oracle produced overlapping intervals");
    }
  }
  return out;
}

/// Exact total length of a list of intervals.
inline mpq_class total_length(std::span<const rational_interval> intervals) {
  detail::rational_accumulator acc;
  for (const auto& iv : intervals) {
    acc.add(iv.hi.to_mpq() - iv.lo.to_mpq());
  }
  return acc.value();
}

/// Exact lambda(C_n) and cumulative sums for n = 1..n_max, with the
/// normalized sequences lambda(C_n) log2 n and cumulative * log2(n) / n.
struct sum_level_table {
  std::map<int, mpq_class> entries;
  std::map<int, mpq_class> cumulative;
  std::map<int, double> normalized_measure;
  std::map<int, double> normalized_cumulative;

  int n_max() const { return entries.empty() ? 0 : entries.rbegin()->first; }
};

inline sum_level_table cumulative_table(int n_max, const sum_level_options& opt = {}) {
  detail::check_level(n_max, opt.cap, "cumulative table");
  sum_level_table t;
  mpq_class running(0);
  for (int n = 1; n <= n_max; ++n) {
    mpq_class lambda = sum_level_measure(n, opt);
    running += lambda;
    const double lg = std::log2(static_cast<double>(n));
    t.normalized_measure[n] = lambda.get_d() * lg;
    t.normalized_cumulative[n] = running.get_d() * lg / n;
    t.entries[n] = std::move(lambda);
    t.cumulative[n] = running;
  }
  return t;
}

/// First n of the window used when comparing growth shapes of lambda(C_n).
inline constexpr int sum_level_fit_start = 8;

/// Compares c / log n, c n^{-a} and a constant on a positive series.
inline fit_result asymptotic_report(const std::map<double, double>& series) {
  const std::vector<asymptotic_model> candidates{
      asymptotic_model::inverse_log(), asymptotic_model::power_fitted(),
      asymptotic_model::constant()};
  return fit_series(series, candidates);
}

/// The same comparison on lambda(C_n) for n in [8, n_max]; n_max must be at
/// least 16.
inline fit_result asymptotic_report(const sum_level_table& t) {
  const int n_max = t.n_max();
  if (n_max < 16) {
    throw validation_error("sum-level asymptotic report needs n_max >= 16, got "
                           + std::to_string(n_max));
  }
  std::map<double, double> series;
  for (const auto& [n, v] : t.entries) {
    if (n >= sum_level_fit_start) {
      series[n] = v.get_d();
    }
  }
  return asymptotic_report(series);
}

inline fit_result asymptotic_report(int n_max, const sum_level_options& opt = {}) {
  if (n_max < 16) {
    throw validation_error("sum-level asymptotic report needs n_max >= 16, got "
                           + std::to_string(n_max));
  }
  return asymptotic_report(cumulative_table(n_max, opt));
}

/// "p/q" (or "p" for integers).
inline std::string to_fraction_string(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

}  // namespace zonal

#endif  // ZONAL_SUMLEVEL_HPP
