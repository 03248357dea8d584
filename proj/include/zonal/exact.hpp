#ifndef ZONAL_EXACT_HPP
#define ZONAL_EXACT_HPP

#include <cstdint>
#include <string>

#include "zonal/error.hpp"

namespace zonal {

/// Unsigned 128-bit integer with overflow reporting instead of wrap-around.
///
/// Used for exact combinatorial counts and continued-fraction continuants.
class exact_uint {
 public:
  using raw_type = unsigned __int128;

  constexpr exact_uint() = default;
  constexpr exact_uint(std::uint64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr exact_uint from_raw(raw_type v) {
    exact_uint r;
    r.value_ = v;
    return r;
  }

  constexpr raw_type raw() const { return value_; }

  bool fits_u64() const { return value_ <= UINT64_MAX; }

  std::uint64_t to_u64() const {
    if (!fits_u64()) {
      throw overflow_domain_error("exact integer does not fit in 64 bits: " + to_string());
    }
    return static_cast<std::uint64_t>(value_);
  }

  double to_double() const { return static_cast<double>(value_); }

  std::string to_string() const {
    if (value_ == 0) {
      return "0";
    }
    std::string s;
    raw_type v = value_;
    while (v != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  }

  friend exact_uint operator+(exact_uint a, exact_uint b) {
    raw_type r;
    if (__builtin_add_overflow(a.value_, b.value_, &r)) {
      throw overflow_domain_error("exact integer overflow in addition (limit 2^128)");
    }
    return from_raw(r);
  }

  friend exact_uint operator-(exact_uint a, exact_uint b) {
    if (b.value_ > a.value_) {
      throw overflow_domain_error("exact integer underflow in subtraction");
    }
    return from_raw(a.value_ - b.value_);
  }

  friend exact_uint operator*(exact_uint a, exact_uint b) {
    raw_type r;
    if (__builtin_mul_overflow(a.value_, b.value_, &r)) {
      throw overflow_domain_error("exact integer overflow in multiplication (limit 2^128)");
    }
    return from_raw(r);
  }

  exact_uint& operator+=(exact_uint o) { return *this = *this + o; }
  exact_uint& operator-=(exact_uint o) { return *this = *this - o; }
  exact_uint& operator*=(exact_uint o) { return *this = *this * o; }

  friend constexpr bool operator==(exact_uint a, exact_uint b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(exact_uint a, exact_uint b) { return a.value_ <=> b.value_; }

 private:
  raw_type value_ = 0;
};

/// Binomial coefficient C(n, k), exact; throws on overflow.
inline exact_uint binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  exact_uint result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step
    exact_uint num = result * exact_uint(n - k + i);
    result = exact_uint::from_raw(num.raw() / i);
  }
  return result;
}

}  // namespace zonal

#endif  // ZONAL_EXACT_HPP
