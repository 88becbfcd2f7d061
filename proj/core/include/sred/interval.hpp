#pragma once

// Outward-rounded interval arithmetic on MPFR endpoints.
//
// Every operation returns an interval that contains the exact result for all
// points of the operands. Decisions that need a sign call is_positive() /
// is_negative(); an interval that still contains zero means "undecided at
// this precision" and the caller escalates.

#include <mpfr.h>

#include <string>

#include "sred/exact.hpp"

namespace sred {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;
inline constexpr Precision kMaxPrecision = 8192;

/// Working precision used when callers do not pass one explicitly.
Precision working_precision();
void set_working_precision(Precision bits);

/// Thrown when a decision is still undecided at kMaxPrecision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Interval {
 public:
  explicit Interval(Precision prec = kDefaultPrecision);
  Interval(const Rat& q, Precision prec);
  Interval(const Int& z, Precision prec);
  Interval(long z, Precision prec);
  static Interval from_double(double x, Precision prec);
  static Interval pi(Precision prec);
  /// Hull of [a, b] (a <= b required).
  static Interval from_bounds(double a, double b, Precision prec);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  Precision precision() const { return mpfr_get_prec(lo_); }

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid() const;
  double width() const;
  /// Point interval at the (rounded) midpoint.
  Interval midpoint() const;
  /// Point interval at the upper end.
  Interval upper_point() const;

  bool is_positive() const;
  bool is_negative() const;
  bool contains_zero() const { return !is_positive() && !is_negative(); }
  /// Width at most `relative` * max(1, |x|).
  bool is_tight(double relative) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  Interval square() const;
  Interval abs() const;
  Interval sqrt() const;
  Interval log() const;
  Interval exp() const;
  /// Enlarges the interval by `r` (r >= 0, given as an interval; its upper end is used).
  Interval inflate(const Interval& r) const;
  /// Smallest interval containing both operands.
  Interval hull(const Interval& other) const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  std::string str() const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Rectangle in C with interval components.
struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexInterval scaled(const Interval& s) const { return {re * s, im * s}; }
  Interval abs_squared() const { return re.square() + im.square(); }
  Interval abs() const { return abs_squared().sqrt(); }
};

}  // namespace sred
