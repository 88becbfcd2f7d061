#pragma once

// Arakelov divisors (I, u), the strongly C-reduced test and the reduction
// algorithm.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sred/ideals.hpp"
#include "sred/lattice.hpp"
#include "sred/numfield.hpp"

namespace sred {

/// The constant C >= 1, held through its exact square.
class ReductionConstant {
 public:
  /// Accepts "2", "1.5", "3/2", "sqrt(2)", "sqrt(3/2)", "2^(1/2)".
  static ReductionConstant parse(const std::string& text);
  static ReductionConstant from_square(Rat c_squared);
  /// The double is taken as an exact binary rational.
  static ReductionConstant from_double(double c);

  const Rat& squared() const { return c2_; }
  double value() const;
  double log_value() const;
  const std::string& text() const { return text_; }

 private:
  ReductionConstant(Rat c2, std::string text);
  Rat c2_;
  std::string text_;
};

class ArakelovDivisor {
 public:
  ArakelovDivisor(FractionalIdeal ideal, ArchVector u);

  const FractionalIdeal& ideal() const { return ideal_; }
  const ArchVector& u() const { return u_; }
  const NumberField& field() const { return ideal_.field(); }

  /// -log N(I) - sum deg(sigma) log u_sigma.
  double degree() const;
  LogVector log_u() const { return u_.log(); }

 private:
  FractionalIdeal ideal_;
  ArchVector u_;
};

/// d(I): u_sigma = N(I)^{-1/n}.
ArakelovDivisor divisor_d(const FractionalIdeal& I);
/// (f^{-1} O_F, |f|).
ArakelovDivisor principal_divisor(const NumberField& F, const FieldElement& f);
ArakelovDivisor add(const ArakelovDivisor& a, const ArakelovDivisor& b);
ArakelovDivisor negate(const ArakelovDivisor& a);
inline double degree(const ArakelovDivisor& d) { return d.degree(); }

inline constexpr double kDegreeTolerance = 1e-9;

struct CovolumeCheck {
  double from_gram = 0;     // sqrt(det G) for the lattice uI
  double from_formula = 0;  // sqrt|disc| e^{-deg D}
  double relative_error() const { return std::abs(from_gram - from_formula) / from_formula; }
};

CovolumeCheck covolume_check(const ArakelovDivisor& D);

struct ReducedCertificate {
  bool reduced = false;
  bool contains_one = false;
  /// m with L intersect Q = (1/m) Z (0 when 1 is not in L).
  Int rational_index;
  ShortVector shortest;
  /// Sign of C^2 * lambda_1^2 - n.
  int margin_sign = 0;
  std::string reason;
};

/// 1 in L primitive and lambda_1(L) >= sqrt(n)/C, for the plain lattice L
/// with u = 1. Equality counts as reduced.
ReducedCertificate check_strongly_c_reduced(const ZModule& L, const ReductionConstant& C);
bool is_strongly_c_reduced(const ZModule& L, const ReductionConstant& C);

/// 1 in L and 1 minimal in L.
bool is_reduced_usual(const ZModule& L);

struct LllJump {
  FieldElement b1;
  FractionalIdeal J;  // b1^{-1} I
  bool primitive = false;
  std::optional<ArakelovDivisor> divisor;  // d(J) when 1 is primitive in J
  std::string diagnostic;
};

LllJump lll_jump(const FractionalIdeal& I);

/// 2^{(n-1)/2} sqrt(n), squared.
Rat lll_jump_constant_squared(int n);

struct ReductionStep {
  FieldElement divided_by;
  FractionalIdeal ideal;  // ideal after the division
  double length = 0;      // |f_j| in the lattice it was taken from
};

struct ReductionTrace {
  FieldElement first;     // minimal element f of I
  FractionalIdeal first_ideal;  // J_1 = f^{-1} I
  std::vector<ReductionStep> steps;
  std::size_t k = 0;
  FieldElement accumulated;  // f * f_1 * ... * f_k
  ArchVector v;              // D - D' = (O_F, v) up to principal divisors
  LogVector log_v;
  bool distance_guaranteed = false;
  double distance_bound = std::numeric_limits<double>::infinity();
  double step_bound = std::numeric_limits<double>::infinity();
};

struct ReductionResult {
  ArakelovDivisor reduced;
  ReductionTrace trace;
};

/// Reduces a degree-0 divisor to a strongly C-reduced d(J) on the same
/// component of Pic^0.
ReductionResult reduce(const ArakelovDivisor& D, const ReductionConstant& C);

/// Bound on |D - D'|_Pic for the given C (infinite for C = 1).
double reduction_distance_bound(const NumberField& F, const ReductionConstant& C);
/// log partial_F / (n log C), infinite for C = 1.
double reduction_step_bound(const NumberField& F, const ReductionConstant& C);

}  // namespace sred
