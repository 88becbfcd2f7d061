#pragma once

// Number fields, their elements, and the archimedean algebra F_R.
//
// A field is Q[x]/(p) for a monic irreducible integer polynomial p together
// with a Z-basis b_1 = 1, ..., b_n of an order (the ring of integers for
// quadratic fields, the power basis by default otherwise). Elements are exact
// rational coordinate vectors on that basis. Infinite places are ordered with
// the real places first (descending roots), followed by one representative of
// each complex-conjugate pair (positive imaginary part).

#include <complex>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sred/exact.hpp"
#include "sred/interval.hpp"

namespace sred {

struct FieldElement {
  std::vector<Rat> coords;

  FieldElement() = default;
  explicit FieldElement(std::vector<Rat> c) : coords(std::move(c)) {}

  std::size_t dimension() const { return coords.size(); }
  bool is_zero() const;
  bool is_rational() const;  // only the coefficient of b_1 may be nonzero

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(const Rat& s, FieldElement a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class LogVector;

/// Element of F_R: one value per infinite place (complex places counted once,
/// with degree 2).
class ArchVector {
 public:
  ArchVector() = default;
  ArchVector(std::vector<std::complex<double>> entries, std::vector<int> degrees);
  static ArchVector positive(const std::vector<double>& values, std::vector<int> degrees);
  static ArchVector uniform(double value, std::vector<int> degrees);

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::complex<double>>& entries() const { return entries_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::complex<double> operator[](std::size_t i) const { return entries_[i]; }

  /// Sum over places of deg(sigma) * |entry|^2.
  double squared_norm() const;
  double norm() const;
  std::vector<double> magnitudes() const;
  bool is_positive_real() const;

  ArchVector operator*(const ArchVector& o) const;
  ArchVector reciprocal() const;
  /// Logarithms of the magnitudes.
  LogVector log() const;

 private:
  std::vector<std::complex<double>> entries_;
  std::vector<int> degrees_;
};

class LogVector {
 public:
  LogVector() = default;
  LogVector(std::vector<double> entries, std::vector<int> degrees);

  std::size_t size() const { return entries_.size(); }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<int>& degrees() const { return degrees_; }
  double operator[](std::size_t i) const { return entries_[i]; }

  double squared_norm() const;
  double norm() const;
  /// Sum of deg(sigma) * entry; zero on the trace-zero hyperplane.
  double weighted_sum() const;
  double max_entry() const;
  double dot(const LogVector& o) const;  // degree-weighted

  LogVector operator+(const LogVector& o) const;
  LogVector operator-(const LogVector& o) const;
  LogVector operator*(double s) const;
  ArchVector exp() const;

 private:
  std::vector<double> entries_;
  std::vector<int> degrees_;
};

class NumberField {
 public:
  /// Builds Q[x]/(p). `min_poly` lists c0..cn (monic, so cn = 1). Rows of
  /// `integral_basis` are the basis elements on the power basis 1, x, ..., x^{n-1}.
  static NumberField create(std::vector<Int> min_poly,
                            std::optional<QMatrix> integral_basis = std::nullopt);

  int degree() const;
  int r1() const;
  int r2() const;
  int num_places() const { return r1() + r2(); }
  int place_degree(int place) const { return place < r1() ? 1 : 2; }
  std::vector<int> place_degrees() const;
  bool is_totally_real() const { return r2() == 0; }
  bool is_quadratic() const { return degree() == 2; }
  bool is_real_quadratic() const { return degree() == 2 && r2() == 0; }
  /// Squarefree d with F = Q(sqrt d), for quadratic fields.
  std::optional<Int> quadratic_radicand() const;

  const std::vector<Int>& min_poly() const;
  const QMatrix& basis() const;  // rows on the power basis
  const Int& discriminant() const;
  const QMatrix& trace_form() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_rational(const Rat& q) const;
  FieldElement element(std::vector<Rat> coords) const;
  FieldElement from_power_basis(const std::vector<Rat>& coords) const;
  std::vector<Rat> to_power_basis(const FieldElement& x) const;
  /// The i-th basis element b_{i+1}.
  FieldElement basis_element(int i) const;

  FieldElement multiply(const FieldElement& a, const FieldElement& b) const;
  FieldElement inverse(const FieldElement& a) const;
  FieldElement power(const FieldElement& a, long k) const;
  FieldElement divide(const FieldElement& a, const FieldElement& b) const {
    return multiply(a, inverse(b));
  }
  /// Column j holds the coordinates of a * b_j.
  QMatrix multiplication_matrix(const FieldElement& a) const;
  /// Nontrivial automorphism of a quadratic field.
  FieldElement conjugate(const FieldElement& a) const;

  Rat norm(const FieldElement& a) const;
  Rat trace(const FieldElement& a) const;
  /// True when every coordinate is an integer (membership in the order).
  bool is_integral(const FieldElement& a) const;

  /// Certified enclosures of the roots of p, one per place, at `prec` bits.
  std::shared_ptr<const std::vector<ComplexInterval>> roots(Precision prec) const;
  ComplexInterval embed_at(const FieldElement& x, int place, Precision prec) const;
  std::vector<ComplexInterval> embed_certified(const FieldElement& x, Precision prec) const;

  /// Sign of sigma(x) at a real place; exact zero test, escalates until decided.
  int sign_at(const FieldElement& x, int place) const;
  /// Sign of |sigma(a)| - |sigma(b)|. Exact at real places and for quadratic
  /// fields; elsewhere escalates to kTiePrecision and reports 0 if undecided.
  int compare_abs_at(const FieldElement& a, const FieldElement& b, int place) const;
  /// log |sigma(x)| for x != 0, certified to `prec` bits.
  Interval log_abs_at(const FieldElement& x, int place, Precision prec) const;

  /// (2/pi)^r2 * sqrt|disc|.
  Interval partial(Precision prec) const;

  friend bool operator==(const NumberField& a, const NumberField& b) { return a.d_ == b.d_; }

 private:
  struct Data;
  explicit NumberField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Precision at which an undecidable comparison is declared a tie.
inline constexpr Precision kTiePrecision = 1024;

/// (2/pi)^{r2} sqrt|Delta_F|.
double partial_f(const NumberField& F);

/// Signed embedding (sigma(x))_sigma.
ArchVector embed(const NumberField& F, const FieldElement& x);

/// Exact (N(x), Tr(x)).
std::pair<Rat, Rat> norm_trace(const NumberField& F, const FieldElement& x);

}  // namespace sred
