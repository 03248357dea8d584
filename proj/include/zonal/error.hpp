#ifndef ZONAL_ERROR_HPP
#define ZONAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zonal {

/// Base class for every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a precondition (bad argument, non-normal word, model mismatch).
class usage_error : public error {
 public:
  using error::error;
};

/// Input data failed validation (configuration, presentation, parameter ranges).
class validation_error : public error {
 public:
  using error::error;
};

/// The critical exponent does not satisfy delta > r_max / 2.
class beardon_violation : public validation_error {
 public:
  beardon_violation(double delta, int r_max)
      : validation_error("Beardon bound violated: delta = " + std::to_string(delta)
                         + " must exceed r_max / 2 = " + std::to_string(r_max / 2.0)),
        delta_(delta),
        r_max_(r_max) {}

  double delta() const noexcept { return delta_; }
  int r_max() const noexcept { return r_max_; }

 private:
  double delta_;
  int r_max_;
};

/// A floating-point or exact-integer computation left its representable range.
///
/// `word_length()` is -1 when the failing computation is not tied to a word.
class overflow_domain_error : public error {
 public:
  explicit overflow_domain_error(const std::string& what, int word_length = -1)
      : error(word_length < 0 ? what
                              : what + " (word length " + std::to_string(word_length) + ")"),
        word_length_(word_length) {}

  int word_length() const noexcept { return word_length_; }

 private:
  int word_length_;
};

/// An estimator did not have enough data points to produce a result.
class insufficient_data_error : public error {
 public:
  using error::error;
};

}  // namespace zonal

#endif  // ZONAL_ERROR_HPP
