#include "sred/interval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace sred {

namespace {

std::atomic<Precision> g_working_precision{kDefaultPrecision};

void init_pair(mpfr_ptr lo, mpfr_ptr hi, Precision prec) {
  mpfr_init2(lo, prec);
  mpfr_init2(hi, prec);
}

Precision max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Precision working_precision() { return g_working_precision.load(); }

void set_working_precision(Precision bits) {
  if (bits < 64) throw DomainError("working precision must be at least 64 bits");
  g_working_precision.store(bits);
}

Interval::Interval(Precision prec) {
  init_pair(lo_, hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rat& q, Precision prec) {
  init_pair(lo_, hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Int& z, Precision prec) {
  init_pair(lo_, hi_, prec);
  mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(long z, Precision prec) {
  init_pair(lo_, hi_, prec);
  mpfr_set_si(lo_, z, MPFR_RNDD);
  mpfr_set_si(hi_, z, MPFR_RNDU);
}

Interval Interval::from_double(double x, Precision prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, x, MPFR_RNDD);
  mpfr_set_d(r.hi_, x, MPFR_RNDU);
  return r;
}

Interval Interval::pi(Precision prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(double a, double b, Precision prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, a, MPFR_RNDD);
  mpfr_set_d(r.hi_, b, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) {
  init_pair(lo_, hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  mpfr_set_prec(lo_, other.precision());
  mpfr_set_prec(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

Interval Interval::midpoint() const {
  Interval r(precision());
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

Interval Interval::upper_point() const {
  Interval r(precision());
  mpfr_set(r.lo_, hi_, MPFR_RNDU);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::is_tight(double relative) const {
  double scale = std::max({1.0, std::fabs(lower()), std::fabs(upper())});
  return width() <= relative * scale;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& b) {
  Precision p = max_prec(*this, b);
  if (p > precision()) {
    mpfr_prec_round(lo_, p, MPFR_RNDD);
    mpfr_prec_round(hi_, p, MPFR_RNDU);
  }
  mpfr_add(lo_, lo_, b.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, b.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& b) {
  Precision p = max_prec(*this, b);
  if (p > precision()) {
    mpfr_prec_round(lo_, p, MPFR_RNDD);
    mpfr_prec_round(hi_, p, MPFR_RNDU);
  }
  mpfr_sub(lo_, lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, b.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& b) {
  Precision p = max_prec(*this, b);
  mpfr_t t;
  mpfr_init2(t, p);
  Interval r(p);
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  mpfr_srcptr as[2] = {lo_, hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    }
  mpfr_clear(t);
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator/=(const Interval& b) {
  if (b.contains_zero()) throw PrecisionExhausted("interval division by an interval containing zero");
  Precision p = max_prec(*this, b);
  mpfr_t t;
  mpfr_init2(t, p);
  Interval r(p);
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  mpfr_srcptr as[2] = {lo_, hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    }
  mpfr_clear(t);
  *this = std::move(r);
  return *this;
}

Interval Interval::square() const {
  Interval a = abs();
  Interval r(precision());
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw DomainError("sqrt of a negative interval");
  Interval r(precision());
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (!is_positive()) throw PrecisionExhausted("log of an interval not bounded away from zero");
  Interval r(precision());
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision());
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::inflate(const Interval& radius) const {
  Interval r = *this;
  mpfr_sub(r.lo_, r.lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, radius.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& other) const {
  Interval r(max_prec(*this, other));
  mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '[' << lower() << ", " << upper() << ']';
  return os.str();
}

}  // namespace sred
