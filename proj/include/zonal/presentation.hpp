#ifndef ZONAL_PRESENTATION_HPP
#define ZONAL_PRESENTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "zonal/error.hpp"
#include "zonal/exact.hpp"
#include "zonal/hyperbolic.hpp"

namespace zonal {

enum class factor_kind { parabolic, loxodromic };

/// One free factor: a rank-r parabolic group Z^r, or a cyclic loxodromic group.
///
/// The generating set of the whole group is the union of the factor
/// generators and their inverses, so word length depends on the presentation.
class factor {
 public:
  static factor parabolic(std::vector<mobius> generators, boundary_point fixed_point) {
    factor f;
    f.kind_ = factor_kind::parabolic;
    f.generators_ = std::move(generators);
    f.fixed_point_ = fixed_point;
    return f;
  }

  static factor loxodromic(mobius generator) {
    factor f;
    f.kind_ = factor_kind::loxodromic;
    f.generators_ = {generator};
    return f;
  }

  factor_kind kind() const { return kind_; }
  bool is_parabolic() const { return kind_ == factor_kind::parabolic; }

  /// Number of generators: r for parabolic factors, 1 for loxodromic ones.
  int rank() const { return static_cast<int>(generators_.size()); }

  const std::vector<mobius>& generators() const { return generators_; }
  const boundary_point& fixed_point() const { return fixed_point_; }

 private:
  factor_kind kind_ = factor_kind::loxodromic;
  std::vector<mobius> generators_;
  boundary_point fixed_point_;
};

/// Free product of parabolic and loxodromic factors acting on H2 or H3.
class group_presentation {
 public:
  group_presentation(model m, std::vector<factor> factors, std::string name = {})
      : model_(m), factors_(std::move(factors)), name_(std::move(name)) {}

  model kind() const { return model_; }
  const std::vector<factor>& factors() const { return factors_; }
  const factor& at(std::size_t i) const { return factors_.at(i); }
  std::size_t size() const { return factors_.size(); }
  const std::string& name() const { return name_; }

  /// Maximal parabolic rank; 0 if there are no parabolic factors.
  int r_max() const {
    int r = 0;
    for (const auto& f : factors_) {
      if (f.is_parabolic()) {
        r = std::max(r, f.rank());
      }
    }
    return r;
  }

  bool is_max_rank_parabolic(std::size_t i) const {
    return factors_.at(i).is_parabolic() && factors_[i].rank() == r_max();
  }

 private:
  model model_;
  std::vector<factor> factors_;
  std::string name_;
};

/// Element of one factor: an exponent vector in Z^r (length 1 for loxodromic
/// factors), not all zero.
struct syllable {
  std::size_t factor_index = 0;
  std::vector<int> exponents;

  /// l1 norm of the exponent vector.
  int length() const {
    int n = 0;
    for (int e : exponents) {
      n += std::abs(e);
    }
    return n;
  }

  syllable inverse() const {
    syllable s{factor_index, exponents};
    for (int& e : s.exponents) {
      e = -e;
    }
    return s;
  }

  friend bool operator==(const syllable&, const syllable&) = default;
  friend auto operator<=>(const syllable&, const syllable&) = default;
};

/// Free-product normal form: adjacent syllables come from distinct factors.
///
/// The constructor enforces the normal-form invariants, so every instance is a
/// unique representative of its group element.
class normal_word {
 public:
  normal_word() = default;

  explicit normal_word(std::vector<syllable> syllables) : syllables_(std::move(syllables)) {
    for (std::size_t i = 0; i < syllables_.size(); ++i) {
      if (syllables_[i].length() == 0) {
        throw usage_error("syllable " + std::to_string(i) + " has a zero exponent vector");
      }
      if (i > 0 && syllables_[i].factor_index == syllables_[i - 1].factor_index) {
        throw usage_error("not in normal form: syllables " + std::to_string(i - 1) + " and "
                          + std::to_string(i) + " belong to the same factor");
      }
    }
  }

  const std::vector<syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }

  /// Syllable-wise inverse, reversed.
  normal_word inverse() const {
    std::vector<syllable> out;
    out.reserve(syllables_.size());
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return normal_word(std::move(out));
  }

  friend bool operator==(const normal_word&, const normal_word&) = default;
  friend auto operator<=>(const normal_word&, const normal_word&) = default;

 private:
  std::vector<syllable> syllables_;
};

/// Word metric with respect to the presented generators: sum of l1 norms.
inline int word_length(const normal_word& w) {
  int n = 0;
  for (const auto& s : w.syllables()) {
    n += s.length();
  }
  return n;
}

namespace detail {

inline bool commute(const mobius& m1, const mobius& m2, double tol) {
  return compose(m1, m2).same_isometry(compose(m2, m1), tol);
}

}  // namespace detail

/// Checks the structural invariants of a presentation.
///
/// Returns one message per violated invariant; an empty result means the
/// presentation is accepted. Discreteness and the geometric face conditions
/// of a fundamental polyhedron are not checked: presentations are trusted.
inline std::vector<std::string> validate(const group_presentation& gp) {
  std::vector<std::string> report;
  constexpr double tol = 1e-9;
  if (gp.factors().empty()) {
    report.emplace_back("presentation has no factors");
    return report;
  }
  const int max_rank = gp.kind() == model::h2 ? 1 : 2;
  int parabolic_count = 0;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    const factor& f = gp.at(i);
    const std::string tag = "factor " + std::to_string(i) + ": ";
    for (std::size_t j = 0; j < f.generators().size(); ++j) {
      const mobius& g = f.generators()[j];
      if (std::abs(g.determinant() - complex(1.0, 0.0)) > 1e-12) {
        report.push_back(tag + "generator " + std::to_string(j) + " is not unit-determinant");
      }
      if (gp.kind() == model::h2 && !g.is_real()) {
        report.push_back(tag + "generator " + std::to_string(j)
                         + " is not a real matrix (required in H2)");
      }
    }
    if (f.is_parabolic()) {
      ++parabolic_count;
      if (f.rank() < 1) {
        report.push_back(tag + "parabolic factor has no generators");
        continue;
      }
      if (f.rank() > max_rank) {
        report.push_back(tag + "parabolic rank " + std::to_string(f.rank()) + " exceeds "
                         + std::to_string(max_rank) + " allowed in " + to_string(gp.kind()));
      }
      for (std::size_t j = 0; j < f.generators().size(); ++j) {
        const mobius& g = f.generators()[j];
        const isometry_class c = classify(g, tol);
        if (c != isometry_class::parabolic) {
          report.push_back(tag + "generator " + std::to_string(j) + " is " + to_string(c)
                           + ", expected parabolic");
        }
        if (fixed_point_defect(g, f.fixed_point()) > tol) {
          report.push_back(tag + "generator " + std::to_string(j)
                           + " does not fix the declared parabolic fixed point");
        }
        if (gp.kind() == model::h2 && !f.fixed_point().at_infinity
            && std::abs(f.fixed_point().value.imag()) > tol) {
          report.push_back(tag + "H2 fixed point is not on the real line");
        }
        for (std::size_t k = j + 1; k < f.generators().size(); ++k) {
          if (!detail::commute(g, f.generators()[k], tol)) {
            report.push_back(tag + "generators " + std::to_string(j) + " and "
                             + std::to_string(k) + " do not commute");
          }
        }
      }
    } else {
      if (f.rank() != 1) {
        report.push_back(tag + "loxodromic factor must have exactly one generator");
        continue;
      }
      const isometry_class c = classify(f.generators()[0], tol);
      if (c != isometry_class::loxodromic) {
        report.push_back(tag + "generator is " + std::string(to_string(c))
                         + ", expected loxodromic");
      }
    }
  }
  if (parabolic_count == 0) {
    report.emplace_back("group is not zonal: no parabolic factor");
  }
  return report;
}

/// Throws validation_error listing every violation, if any.
inline void require_valid(const group_presentation& gp) {
  const auto report = validate(gp);
  if (!report.empty()) {
    std::string msg = "invalid group presentation";
    for (const auto& r : report) {
      msg += "\n  - " + r;
    }
    throw validation_error(msg);
  }
}

/// Number of vectors in Z^r with l1 norm exactly k (k >= 1):
/// sum_{j=1}^{min(r,k)} 2^j C(r, j) C(k-1, j-1).
inline exact_uint sphere_count_factor(int rank, std::uint64_t k) {
  if (rank < 1 || k < 1) {
    throw usage_error("sphere_count_factor needs rank >= 1 and k >= 1");
  }
  exact_uint total = 0;
  const std::uint64_t top = std::min<std::uint64_t>(static_cast<std::uint64_t>(rank), k);
  for (std::uint64_t j = 1; j <= top; ++j) {
    const exact_uint pow2 = exact_uint::from_raw(static_cast<exact_uint::raw_type>(1) << j);
    total += pow2 * binomial(static_cast<std::uint64_t>(rank), j) * binomial(k - 1, j - 1);
  }
  return total;
}

/// Exact number of group elements of each word length 0..n_max.
///
/// Recursion over (length, factor of the last syllable):
/// ending[n][f] = sum_k S_f(k) * (total[n-k] - ending[n-k][f]).
inline std::vector<exact_uint> sphere_counts_group(const group_presentation& gp, int n_max) {
  if (n_max < 0) {
    throw usage_error("n_max must be nonnegative");
  }
  const std::size_t nf = gp.size();
  const auto n_len = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<exact_uint>> syllables(nf, std::vector<exact_uint>(n_len));
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t k = 1; k < n_len; ++k) {
      syllables[f][k] = sphere_count_factor(gp.at(f).rank(), k);
    }
  }
  std::vector<std::vector<exact_uint>> ending(n_len, std::vector<exact_uint>(nf));
  std::vector<exact_uint> total(n_len);
  total[0] = 1;
  for (std::size_t n = 1; n < n_len; ++n) {
    exact_uint sum = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      exact_uint e = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        e += syllables[f][k] * (total[n - k] - ending[n - k][f]);
      }
      ending[n][f] = e;
      sum += e;
    }
    total[n] = sum;
  }
  return total;
}

/// Exact number of group elements with word length exactly n.
inline exact_uint sphere_count_group(const group_presentation& gp, int n) {
  return sphere_counts_group(gp, n).back();
}

/// Matrix of a single syllable: product of generator powers.
inline mobius matrix_of(const syllable& s, const group_presentation& gp) {
  if (s.factor_index >= gp.size()) {
    throw usage_error("syllable refers to factor " + std::to_string(s.factor_index)
                      + " but the presentation has " + std::to_string(gp.size()));
  }
  const factor& f = gp.at(s.factor_index);
  if (static_cast<int>(s.exponents.size()) != f.rank()) {
    throw usage_error("syllable exponent vector has length " + std::to_string(s.exponents.size())
                      + ", factor rank is " + std::to_string(f.rank()));
  }
  mobius m;
  for (std::size_t j = 0; j < s.exponents.size(); ++j) {
    if (s.exponents[j] != 0) {
      m = mobius::multiply_raw(m, power(f.generators()[j], s.exponents[j]));
    }
  }
  return m;
}

/// Ordered product of the syllable matrices; the identity word maps to the
/// identity.
inline mobius matrix_of(const normal_word& w, const group_presentation& gp) {
  mobius m;
  for (const auto& s : w.syllables()) {
    m = mobius::multiply_raw(m, matrix_of(s, gp));
  }
  return {m.a(), m.b(), m.c(), m.d()};
}

/// Largest displacement d(p, g p) over the generators.
inline double max_generator_displacement(const group_presentation& gp, const h_point& p) {
  double best = 0.0;
  for (const auto& f : gp.factors()) {
    for (const auto& g : f.generators()) {
      best = std::max(best, distance(p, apply(g, p)));
    }
  }
  return best;
}

/// Shipped test groups.
namespace groups {

/// <z + 2> * <z / (2z + 1)> acting on H2: the principal congruence subgroup
/// of level 2 (free of rank 2, finite covolume, delta = 1, r_max = 1).
inline group_presentation gamma2() {
  return {model::h2,
          {factor::parabolic({mobius(1.0, 2.0, 0.0, 1.0)}, boundary_point::infinity()),
           factor::parabolic({mobius(1.0, 0.0, 2.0, 1.0)}, boundary_point::finite(0.0))},
          "gamma2"};
}

/// Loxodromic with axis the geodesic from -1 to 1 and translation length
/// `length`.
inline mobius hyperbolic_boost(double length) {
  const double ch = std::cosh(0.5 * length);
  const double sh = std::sinh(0.5 * length);
  return {ch, sh, sh, ch};
}

/// <z + translation> * <h> acting on H2, h a boost of the given translation
/// length along the geodesic (-1, 1).
///
/// Schottky-type whenever the isometric circles of h, centred at
/// +-coth(length/2) with radius 1/sinh(length/2), fit inside the strip
/// |Re z| <= translation / 2, i.e. coth(length / 4) <= translation / 2. The
/// quotient then has infinite area and delta < 1.
inline group_presentation schottky(double translation = 6.0, double length = 2.0) {
  return {model::h2,
          {factor::parabolic({mobius(1.0, translation, 0.0, 1.0)}, boundary_point::infinity()),
           factor::loxodromic(hyperbolic_boost(length))},
          "schottky"};
}

/// Rank-2 cusp <z + a, z + a i> at oo together with a loxodromic boost,
/// acting on H3 (r_max = 2).
inline group_presentation rank2_cusp(double side = 6.0, double length = 2.0) {
  return {model::h3,
          {factor::parabolic({mobius(1.0, side, 0.0, 1.0), mobius(1.0, complex(0.0, side), 0.0, 1.0)},
                             boundary_point::infinity()),
           factor::loxodromic(hyperbolic_boost(length))},
          "rank2_cusp"};
}

}  // namespace groups

}  // namespace zonal

#endif  // ZONAL_PRESENTATION_HPP
