#pragma once

// Enumeration of all strongly C-reduced divisors d(I) of a field, their
// components in Pic^0, positions on the circles of a real quadratic field, and
// checks of the separation and counting bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sred/arakelov.hpp"
#include "sred/ideals.hpp"
#include "sred/units.hpp"

namespace sred {

struct CensusEntry {
  FractionalIdeal ideal;    // I, with d(I) strongly C-reduced
  FractionalIdeal inverse;  // I^{-1}, integral
  Int inverse_norm;
  bool usual_reduced = false;
  double lambda1 = 0;
  std::optional<int> class_tag;   // 0 is the principal class
  std::optional<int> narrow_tag;  // 0 is the narrow class of O_F
  // I = generator * (class representative); the representative is O_F for the
  // principal class, else the first census entry of the class.
  std::optional<FieldElement> generator;
  std::optional<double> position;  // in [0, circle_length)
  std::optional<double> angle;     // 2 pi position / circle_length
};

struct SredCensus {
  NumberField field;
  ReductionConstant C;
  Int bound;  // floor of a certified upper bound of C^n partial_F
  std::vector<CensusEntry> entries;
  std::optional<double> circle_length;  // sqrt(2) R for real quadratic fields

  std::size_t size() const { return entries.size(); }
  std::size_t usual_reduced_count() const;
  std::size_t count_in_class(int tag) const;
};

inline constexpr std::size_t kMaxCensusIdeals = 1'000'000;

/// Floor of a certified upper bound for C^n partial_F.
Int census_bound(const NumberField& F, const ReductionConstant& C);

/// All I = J^{-1}, J integral with N(J) <= C^n partial_F, such that d(I) is
/// strongly C-reduced. Ordered by N(J) then HNF. Throws LimitExceeded when
/// the bound admits too many ideals.
SredCensus enumerate_sred(const NumberField& F, const ReductionConstant& C);

/// Tags ideal classes and narrow classes and records generators against the
/// class representatives. Quadratic fields always; other fields when `units`
/// has full rank, leaving undecided entries untagged.
void classify_components(SredCensus& census, const UnitLattice& units, const PrincipalCycle* cycle = nullptr);

/// Positions (log v_1 - log v_2)/sqrt 2 modulo sqrt(2) R for every tagged
/// entry of a real quadratic census. Needs classify_components first.
void cycle_positions(SredCensus& census, const UnitLattice& units);

/// True when the multiset of positions is invariant under p -> -p mod length.
bool positions_symmetric(std::vector<double> positions, double length, double tolerance);

/// Class number by classifying integral ideals up to the Minkowski bound.
/// Empty when some ideal cannot be decided.
std::optional<int> class_number(const NumberField& F, const UnitLattice& units, const PrincipalCycle* cycle = nullptr);
/// h * 2^{r1} / #(sign image of the units).
std::optional<int> narrow_class_number(const NumberField& F, const UnitLattice& units,
                                       const PrincipalCycle* cycle = nullptr);

/// log(1 + k / (2 C^2)) for k = sqrt 3 (the gate) or k = 3.
double separation_delta(const ReductionConstant& C, bool sqrt3 = true);

struct SeparationReport {
  double delta = 0;      // sqrt 3 constant
  double delta_alt = 0;  // 3 constant
  std::size_t pairs = 0;
  std::size_t violations = 0;
  std::size_t alt_violations = 0;
  std::optional<double> min_gap;
  bool ok() const { return violations == 0; }
};

inline constexpr double kSeparationTolerance = 1e-9;

/// Oriented distances between all pairs of entries in the same narrow class.
SeparationReport verify_separation(const SredCensus& census, const UnitLattice& units,
                                   const PrincipalCycle* cycle = nullptr);

struct CountReport {
  std::size_t sred = 0;
  std::size_t ball = 0;  // most entries in one closed radius-1 ball of Pic^0
  int class_number = 0;
  int narrow_class_number = 0;
  double oriented_volume = 0;  // h+ sqrt(2) R+
  double sred_bound = 0;       // sqrt 3 constant
  double sred_bound_alt = 0;   // 3 constant
  double ball_bound = 0;
  double ball_bound_alt = 0;
  bool ok() const { return sred <= sred_bound && ball <= ball_bound; }
  bool alt_ok() const { return sred <= sred_bound_alt && ball <= ball_bound_alt; }
};

/// Real quadratic only; needs cycle_positions first.
CountReport verify_counts(const SredCensus& census, const UnitLattice& units, const PrincipalCycle* cycle = nullptr);

/// Most of `positions` inside one closed arc of the given length on a circle.
std::size_t max_in_arc(std::vector<double> positions, double circle, double arc);

/// Random degree-0 divisors (I, u): I or I^{-1} for an integral ideal of norm
/// at most `max_norm`, and log u = -(1/n) log N(I) plus a trace-zero vector
/// with entries up to `spread`. Deterministic for a given seed.
std::vector<ArakelovDivisor> sample_divisors(const NumberField& F, std::size_t count, std::uint64_t seed,
                                             long max_norm = 30, double spread = 4.0);

struct ReductionReport {
  std::size_t runs = 0;
  std::size_t distance_violations = 0;
  std::size_t step_violations = 0;
  std::size_t certificate_failures = 0;
  double max_distance = 0;
  double distance_bound = 0;  // infinite for C = 1
  double step_bound = 0;
  std::size_t max_steps = 0;
  bool ok() const { return distance_violations == 0 && step_violations == 0 && certificate_failures == 0; }
};

/// Reduces every divisor and checks the certificate of the result, the Pic
/// distance bound and the step bound.
ReductionReport verify_reduction(const std::vector<ArakelovDivisor>& divisors, const ReductionConstant& C,
                                 const UnitLattice& units, const PrincipalCycle* cycle = nullptr);

}  // namespace sred
