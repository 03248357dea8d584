#ifndef ZONAL_COMPENSATED_HPP
#define ZONAL_COMPENSATED_HPP

#include <cmath>

namespace zonal {

/// Neumaier's variant of Kahan summation.
///
/// Must not be compiled with -ffast-math or -fassociative-math.
class compensated_sum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      correction_ += (sum_ - t) + x;
    } else {
      correction_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void add(const compensated_sum& other) {
    add(other.sum_);
    add(other.correction_);
  }

  compensated_sum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace zonal

#endif  // ZONAL_COMPENSATED_HPP
