#pragma once

// Full-rank Z-modules in a number field, stored as (den, HNF) on the integral
// basis, and the fractional ideals among them.

#include <cstddef>
#include <optional>
#include <vector>

#include "sred/exact.hpp"
#include "sred/numfield.hpp"

namespace sred {

/// Full-rank Z-submodule of F: columns of hnf / den are a Z-basis, written on
/// the integral basis of F.
class ZModule {
 public:
  /// Z-span of the given elements (must span F over Q).
  static ZModule span(const NumberField& F, const std::vector<FieldElement>& gens);
  /// Columns of `cols` are coordinate vectors on the integral basis.
  static ZModule from_columns(const NumberField& F, const QMatrix& cols);

  const NumberField& field() const { return field_; }
  int degree() const { return field_.degree(); }
  const Int& den() const { return den_; }
  const ZMatrix& hnf() const { return hnf_; }

  std::vector<FieldElement> basis() const;
  FieldElement basis_vector(int j) const;
  /// Basis matrix (columns) over Q.
  QMatrix basis_matrix() const;

  /// Integer coordinates of x on basis(), or nullopt when x is not in the module.
  std::optional<std::vector<Int>> coordinates(const FieldElement& x) const;
  bool contains(const FieldElement& x) const { return coordinates(x).has_value(); }
  FieldElement combination(const std::vector<Int>& coeffs) const;

  /// [O_F : M] taken as a signed index: det(hnf) / den^n.
  Rat index() const;

  /// The module intersected with Q is (h / den) Z with h the first pivot.
  Rat rational_generator() const;

  /// Module multiplied by a nonzero scalar of F.
  ZModule scaled(const FieldElement& f) const;

  friend bool operator==(const ZModule& a, const ZModule& b) {
    return a.field_ == b.field_ && a.den_ == b.den_ && a.hnf_ == b.hnf_;
  }
  /// Orders by (den, hnf entries row-major).
  friend bool lex_less(const ZModule& a, const ZModule& b);

 protected:
  ZModule(NumberField F, Int den, ZMatrix hnf);

 private:
  NumberField field_;
  Int den_;
  ZMatrix hnf_;
};

/// Z-lattice with no O_F-module requirement.
class PlainLattice : public ZModule {
 public:
  explicit PlainLattice(ZModule m) : ZModule(std::move(m)) {}
  static PlainLattice span(const NumberField& F, const std::vector<FieldElement>& gens) {
    return PlainLattice(ZModule::span(F, gens));
  }
};

class FractionalIdeal : public ZModule {
 public:
  /// Throws DomainError when `m` is not closed under multiplication by O_F.
  explicit FractionalIdeal(ZModule m);

  static FractionalIdeal unit(const NumberField& F);
  static FractionalIdeal principal(const NumberField& F, const FieldElement& f);

  Rat norm() const { return index(); }
  bool is_integral() const;

  FractionalIdeal operator*(const FractionalIdeal& o) const;
  FractionalIdeal inverse() const;
  /// f * I.
  FractionalIdeal times(const FieldElement& f) const;
  /// Image under the nontrivial automorphism of a quadratic field.
  FractionalIdeal conjugate() const;
};

/// True when the Z-module is closed under multiplication by every b_i.
bool is_closed_under_order(const ZModule& m);

/// Smallest O_F-module containing the generators.
FractionalIdeal ideal_from_generators(const NumberField& F, const std::vector<FieldElement>& gens);

inline FractionalIdeal multiply(const FractionalIdeal& a, const FractionalIdeal& b) { return a * b; }
inline FractionalIdeal invert(const FractionalIdeal& a) { return a.inverse(); }
inline Rat ideal_norm(const FractionalIdeal& a) { return a.norm(); }
inline bool contains(const ZModule& m, const FieldElement& x) { return m.contains(x); }

/// 1 in M and M intersect Q = Z. Also returns m with M intersect Q = (1/m) Z
/// (0 when 1 is not in M).
bool one_is_primitive(const ZModule& m);
Int rational_index(const ZModule& m);

inline constexpr std::size_t kMaxEnumeratedCandidates = 5'000'000;

/// All integral ideals of norm <= bound, sorted by (norm, hnf). Throws
/// LimitExceeded when the HNF candidate count would exceed
/// kMaxEnumeratedCandidates.
std::vector<FractionalIdeal> enumerate_integral_ideals(const NumberField& F, const Rat& bound);
std::vector<FractionalIdeal> enumerate_integral_ideals(const NumberField& F, double bound);

}  // namespace sred
