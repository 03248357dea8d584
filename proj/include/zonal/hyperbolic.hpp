#ifndef ZONAL_HYPERBOLIC_HPP
#define ZONAL_HYPERBOLIC_HPP

#include <cmath>
#include <complex>
#include <string>

#include "zonal/error.hpp"

namespace zonal {

using complex = std::complex<double>;

/// Upper half-plane (H2) or upper half-space (H3).
enum class model { h2, h3 };

inline const char* to_string(model m) { return m == model::h2 ? "H2" : "H3"; }

/// A point of H2 or H3.
///
/// H2 points are x + i t; H3 points are (x, y, t), written as the quaternion
/// x + y i + t j. In both cases `height()` is t > 0.
class h_point {
 public:
  static h_point h2(complex z) { return h_point(model::h2, z.real(), 0.0, z.imag()); }
  static h_point h2(double x, double t) { return h_point(model::h2, x, 0.0, t); }
  static h_point h3(double x, double y, double t) { return h_point(model::h3, x, y, t); }

  /// i in H2, (0, 0, 1) in H3.
  static h_point base(model m) { return m == model::h2 ? h2(0.0, 1.0) : h3(0.0, 0.0, 1.0); }

  model kind() const { return model_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double height() const { return t_; }

  friend bool operator==(const h_point&, const h_point&) = default;

  /// Horizontal coordinate x + y i (y = 0 in H2).
  complex horizontal() const { return {x_, y_}; }

  std::string to_string() const {
    if (model_ == model::h2) {
      return "(" + std::to_string(x_) + " + " + std::to_string(t_) + "i)";
    }
    return "(" + std::to_string(x_) + ", " + std::to_string(y_) + ", " + std::to_string(t_) + ")";
  }

  /// Builds a point without checks; used internally after the action has
  /// verified the height.
  static h_point unchecked(model m, double x, double y, double t) {
    h_point p;
    p.model_ = m;
    p.x_ = x;
    p.y_ = y;
    p.t_ = t;
    return p;
  }

 private:
  h_point() = default;
  h_point(model m, double x, double y, double t) : model_(m), x_(x), y_(y), t_(t) {
    if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(x) || !std::isfinite(y)) {
      throw usage_error("hyperbolic point needs finite coordinates and positive height");
    }
    if (m == model::h2 && y != 0.0) {
      throw usage_error("H2 point has a nonzero y coordinate");
    }
  }

  model model_ = model::h2;
  double x_ = 0.0;
  double y_ = 0.0;
  double t_ = 1.0;
};

/// A 2x2 complex matrix of determinant 1, acting as an orientation-preserving
/// isometry of H2 (real entries) or H3.
class mobius {
 public:
  /// Identity.
  mobius() = default;

  /// Scales the entries by 1/sqrt(ad - bc); throws if the determinant is ~0.
  mobius(complex a, complex b, complex c, complex d) : a_(a), b_(b), c_(c), d_(d) {
    const complex det = a * d - b * c;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
    if (!(std::abs(det) > 1e-300) || !(std::abs(det) > 1e-14 * scale * scale)) {
      throw usage_error("Mobius matrix is singular");
    }
    if (det != complex(1.0, 0.0)) {
      const complex s = 1.0 / std::sqrt(det);
      a_ *= s;
      b_ *= s;
      c_ *= s;
      d_ *= s;
    }
  }

  static mobius identity() { return {}; }

  /// Product without renormalization, for tight loops over unit-determinant
  /// factors.
  static mobius multiply_raw(const mobius& m1, const mobius& m2) {
    mobius r;
    r.a_ = m1.a_ * m2.a_ + m1.b_ * m2.c_;
    r.b_ = m1.a_ * m2.b_ + m1.b_ * m2.d_;
    r.c_ = m1.c_ * m2.a_ + m1.d_ * m2.c_;
    r.d_ = m1.c_ * m2.b_ + m1.d_ * m2.d_;
    return r;
  }

  /// Divides out sqrt(det) when det is within 1e-6 of 1; otherwise the
  /// entries are too large for the computed determinant to mean anything.
  static mobius renormalized(const mobius& p) {
    const complex det = p.determinant();
    if (det == complex(1.0, 0.0) || !(std::abs(det - 1.0) < 1e-6)) {
      return p;
    }
    const complex s = 1.0 / std::sqrt(det);
    return {p.a_ * s, p.b_ * s, p.c_ * s, p.d_ * s, raw_tag{}};
  }

  static mobius adjugate(const mobius& m) { return {m.d_, -m.b_, -m.c_, m.a_, raw_tag{}}; }

  const complex& a() const { return a_; }
  const complex& b() const { return b_; }
  const complex& c() const { return c_; }
  const complex& d() const { return d_; }

  complex determinant() const { return a_ * d_ - b_ * c_; }
  complex trace() const { return a_ + d_; }

  bool is_real(double tol = 1e-12) const {
    return std::abs(a_.imag()) <= tol && std::abs(b_.imag()) <= tol
           && std::abs(c_.imag()) <= tol && std::abs(d_.imag()) <= tol;
  }

  /// Largest entrywise modulus difference.
  double distance_to(const mobius& o) const {
    return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                     std::abs(d_ - o.d_)});
  }

  /// Equality as elements of PSL(2, C): M and -M are the same isometry.
  bool same_isometry(const mobius& o, double tol) const {
    const mobius neg(-o.a_, -o.b_, -o.c_, -o.d_, raw_tag{});
    return distance_to(o) <= tol || distance_to(neg) <= tol;
  }

 private:
  struct raw_tag {};
  mobius(complex a, complex b, complex c, complex d, raw_tag) : a_(a), b_(b), c_(c), d_(d) {}

  complex a_{1.0, 0.0};
  complex b_{0.0, 0.0};
  complex c_{0.0, 0.0};
  complex d_{1.0, 0.0};
};

/// Product m1 * m2 (apply m2 first), renormalized to determinant 1 when the
/// computed determinant is accurate enough to be worth dividing out (for
/// entries beyond ~1e4 rounding in ad - bc swamps the drift it would fix).
inline mobius compose(const mobius& m1, const mobius& m2) {
  return mobius::renormalized(mobius::multiply_raw(m1, m2));
}

/// Adjugate; equals the inverse for determinant 1 and needs no renormalizing.
inline mobius inverse(const mobius& m) { return mobius::adjugate(m); }

/// Integer power by repeated squaring; negative exponents use the inverse.
inline mobius power(const mobius& m, long long e) {
  mobius base = e < 0 ? inverse(m) : m;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                               : static_cast<unsigned long long>(e);
  mobius result;
  while (k != 0) {
    if (k & 1ULL) {
      result = mobius::multiply_raw(result, base);
    }
    base = mobius::multiply_raw(base, base);
    k >>= 1U;
  }
  return result;
}

/// Action on H2/H3 via the Poincare extension (a P + b)(c P + d)^{-1} with
/// P = z + t j.
///
/// Throws overflow_domain_error when the image height underflows 1e-300 or
/// the result is not finite.
inline h_point apply(const mobius& m, const h_point& p) {
  const complex z = p.horizontal();
  const double t = p.height();
  const complex cz_d = m.c() * z + m.d();
  const double denom = std::norm(cz_d) + std::norm(m.c()) * t * t;
  const complex num = (m.a() * z + m.b()) * std::conj(cz_d) + m.a() * std::conj(m.c()) * t * t;
  const complex zn = num / denom;
  const double tn = t / denom;
  if (!(tn >= 1e-300) || !std::isfinite(tn) || !std::isfinite(zn.real())
      || !std::isfinite(zn.imag())) {
    throw overflow_domain_error("Mobius action left the representable range (height "
                                + std::to_string(tn) + ")");
  }
  // H2 inputs with real matrices keep y = 0 exactly; complex matrices in H2
  // are rejected by presentation validation.
  return h_point::unchecked(p.kind(), zn.real(), p.kind() == model::h2 ? 0.0 : zn.imag(), tn);
}

/// cosh(d(p, q)) - 1 = |p - q|^2 / (2 t_p t_q).
inline double cosh_distance_minus_one(const h_point& p, const h_point& q) {
  if (p.kind() != q.kind()) {
    throw usage_error("distance between points of different models");
  }
  const double dx = p.x() - q.x();
  const double dy = p.y() - q.y();
  const double dt = p.height() - q.height();
  return (dx * dx + dy * dy + dt * dt) / (2.0 * p.height() * q.height());
}

/// Hyperbolic distance.
///
/// Evaluated as 2 asinh(sqrt(u / 2)) with u = cosh d - 1, which equals
/// arccosh(1 + u) without cancellation near 0; u <= 1e-15 returns 0.
inline double distance(const h_point& p, const h_point& q) {
  const double u = cosh_distance_minus_one(p, q);
  if (u <= 1e-15) {
    return 0.0;
  }
  return 2.0 * std::asinh(std::sqrt(0.5 * u));
}

enum class isometry_class { identity, elliptic, parabolic, loxodromic };

inline const char* to_string(isometry_class c) {
  switch (c) {
    case isometry_class::identity: return "identity";
    case isometry_class::elliptic: return "elliptic";
    case isometry_class::parabolic: return "parabolic";
    case isometry_class::loxodromic: return "loxodromic";
  }
  return "?";
}

/// Trace classification with tolerance `tol` on |tr| - 2.
inline isometry_class classify(const mobius& m, double tol = 1e-9) {
  const complex tr = m.trace();
  if (std::abs(tr.imag()) > tol) {
    return isometry_class::loxodromic;
  }
  const double abs_tr = std::abs(tr.real());
  if (std::abs(abs_tr - 2.0) <= tol) {
    const bool diagonal_unit = std::abs(m.b()) <= tol && std::abs(m.c()) <= tol
                               && std::abs(m.a() - m.d()) <= tol;
    return diagonal_unit ? isometry_class::identity : isometry_class::parabolic;
  }
  return abs_tr > 2.0 ? isometry_class::loxodromic : isometry_class::elliptic;
}

/// A point of the boundary sphere C u {oo} (the real line u {oo} for H2).
struct boundary_point {
  bool at_infinity = true;
  complex value{0.0, 0.0};

  static boundary_point infinity() { return {}; }
  static boundary_point finite(complex v) { return {false, v}; }
};

/// |m(p) - p| measured projectively: at oo this is |c|, otherwise
/// |c p^2 + (d - a) p - b|.
inline double fixed_point_defect(const mobius& m, const boundary_point& p) {
  if (p.at_infinity) {
    return std::abs(m.c());
  }
  const complex v = p.value;
  return std::abs(m.c() * v * v + (m.d() - m.a()) * v - m.b());
}

}  // namespace zonal

#endif  // ZONAL_HYPERBOLIC_HPP
