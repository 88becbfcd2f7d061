#pragma once

// Ideal lattices uL under the degree-weighted Minkowski metric.
//
// A GramMatrix remembers where it came from (a basis of field elements and a
// per-place weight vector) so that any length comparison can be redone at a
// higher precision. When the form is rational (totally real field or
// quadratic field, with equal weights) the exact matrix is kept as well and
// comparisons are exact.

#include <cstdint>
#include <optional>
#include <vector>

#include "sred/exact.hpp"
#include "sred/ideals.hpp"
#include "sred/interval.hpp"
#include "sred/numfield.hpp"

namespace sred {

using IntervalMatrix = std::vector<std::vector<Interval>>;
using Coeffs = std::vector<Int>;

struct LatticeSource {
  NumberField field;
  std::vector<FieldElement> basis;
  std::vector<double> weights;  // u_sigma, one per place
};

class GramMatrix {
 public:
  /// A Gram matrix given directly by rational entries.
  static GramMatrix from_rational(QMatrix g);
  /// Gram matrix of the lattice u * (Z b_1 + ... + Z b_n).
  static GramMatrix from_elements(const NumberField& F, std::vector<FieldElement> basis,
                                  std::vector<double> weights);

  std::size_t dim() const { return dim_; }
  const std::optional<QMatrix>& exact() const { return exact_; }
  const std::optional<LatticeSource>& source() const { return source_; }
  bool is_exact() const { return exact_.has_value(); }

  /// Entries enclosed at `prec` bits.
  IntervalMatrix certified(Precision prec) const;
  /// Double approximation (cached).
  const std::vector<std::vector<double>>& approx() const { return approx_; }

  /// Gram matrix of the basis B * U (columns of U are new basis vectors).
  GramMatrix transformed(const ZMatrix& U) const;

  /// Enclosure of c^T G c.
  Interval form(const Coeffs& c, Precision prec) const;
  std::optional<Rat> exact_form(const Coeffs& c) const;
  double approx_form(const Coeffs& c) const;

  /// Sign of |a|^2 - |b|^2; exact when possible, else certified up to
  /// kTiePrecision, where an undecided comparison counts as a tie.
  int compare(const Coeffs& a, const Coeffs& b) const;
  /// Sign of |c|^2 - t, same protocol.
  int compare_to(const Coeffs& c, const Rat& t) const;

  /// Element of F for a coefficient vector (requires a source).
  FieldElement element(const Coeffs& c) const;

  /// Enclosure of det(G).
  Interval determinant(Precision prec) const;

 private:
  GramMatrix() = default;
  void fill_approx();

  std::size_t dim_ = 0;
  std::optional<QMatrix> exact_;
  std::optional<LatticeSource> source_;
  std::vector<std::vector<double>> approx_;
};

/// Gram matrix of u L for a module L in F.
GramMatrix gram_of(const ZModule& L, const ArchVector& u);
/// Gram matrix of L with u = 1.
GramMatrix gram_of(const ZModule& L);

struct LllResult {
  ZMatrix transform;  // unimodular; columns are the reduced basis on the input basis
  GramMatrix reduced;
};

inline constexpr double kLllDelta = 0.99;

/// LLL with delta = 0.99, run in exact rationals on the Gram matrix (or on a
/// rational approximation of it when the form is irrational).
LllResult lll_reduce(const GramMatrix& G);

struct ShortVector {
  Coeffs coeffs;  // on the input basis
  std::optional<FieldElement> element;
  double length = 0;
};

/// A vector of length lambda_1. Ties: smallest coefficient vector in
/// lexicographic order after making the leading nonzero entry positive.
ShortVector shortest_vector(const GramMatrix& G);

/// Integer vectors x with (x - c)^T G (x - c) <= radius_sq, G given in floating
/// point (positive definite). Throws LimitExceeded beyond `limit` points.
std::vector<std::vector<std::int64_t>> fincke_pohst(const std::vector<std::vector<double>>& G,
                                                     double radius_sq,
                                                     const std::vector<double>& center,
                                                     std::size_t limit);

inline constexpr std::size_t kEnumerationLimit = 2'000'000;

/// Nonzero coefficient vectors with |c|^2 <= radius_sq (approximately; the
/// radius is inflated slightly so that nothing on the boundary is lost).
std::vector<Coeffs> enumerate_ellipsoid(const GramMatrix& G, double radius_sq);

/// Nonzero g in L with u_sigma |sigma(g)| < bounds_sigma (<= when !strict).
std::vector<FieldElement> enumerate_box(const ZModule& L, const ArchVector& u,
                                        const std::vector<double>& bounds, bool strict);

/// Nonzero g in L with |sigma(g)| < |sigma(f)| at every place.
std::vector<FieldElement> box_below(const ZModule& L, const FieldElement& f);

/// True when no nonzero g in L is strictly smaller than f at every place.
bool is_minimal(const ZModule& L, const FieldElement& f);

/// Minimal f in I with u_sigma |sigma(f)| <= partial_F^{1/n}, by descent from
/// the smallest element of the closed box. (I, u) must have degree 0.
FieldElement minimal_element_bounded(const FractionalIdeal& I, const ArchVector& u);

/// Picks the element with the smallest |u f| among candidates; ties broken on
/// the coefficient vectors in L as in shortest_vector.
FieldElement smallest_in(const ZModule& L, const ArchVector& u, const std::vector<FieldElement>& candidates);

/// Positive leading entry.
Coeffs sign_normalized(Coeffs c);

}  // namespace sred
