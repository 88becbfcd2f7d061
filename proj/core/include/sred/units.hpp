#pragma once

// Unit lattices, the principal cycle of a real quadratic field, principality
// tests, and distances on Pic^0 and its oriented version.

#include <optional>
#include <vector>

#include "sred/arakelov.hpp"
#include "sred/ideals.hpp"
#include "sred/numfield.hpp"

namespace sred {

struct UnitLattice {
  NumberField field;
  std::vector<FieldElement> generators;  // independent units modulo torsion
  std::vector<LogVector> logs;
  std::vector<FieldElement> positive_generators;  // totally positive units, a basis modulo torsion
  std::vector<LogVector> positive_logs;
  std::vector<FieldElement> torsion;  // all roots of unity in O_F

  int rank() const { return static_cast<int>(generators.size()); }
  /// |det| of the log matrix with one place removed (1 for rank 0).
  double regulator() const;
  double positive_regulator() const;
  /// Number of distinct sign vectors of units at the real places.
  int sign_image_size() const;
};

/// Units of a quadratic field: the fundamental unit from the continued
/// fraction of the generator of O_F, and the totally positive generator.
UnitLattice quadratic_units(const NumberField& F);

/// Unit lattice from user-supplied independent units.
UnitLattice units_from_generators(const NumberField& F, std::vector<FieldElement> units);

/// Quadratic units when F is quadratic, else the supplied units (rank 0 fields
/// need none).
UnitLattice units_for(const NumberField& F, const std::optional<std::vector<FieldElement>>& supplied);

/// Roots of unity in O_F.
std::vector<FieldElement> roots_of_unity(const NumberField& F);

/// Fundamental unit > 1 of a real quadratic field by continued fractions.
FieldElement quadratic_fundamental_unit(const NumberField& F);

/// The next minimum of a reduced ideal R of a real quadratic field: the
/// element mu of R with |sigma_2(mu)| < 1 < |sigma_1(mu)| and |sigma_1(mu)|
/// minimal, signed so that sigma_1(mu) > 0.
FieldElement neighbor(const FractionalIdeal& R);

/// R_0 = O_F, R_{j+1} = mu_j^{-1} R_j, until the walk returns to O_F.
struct PrincipalCycle {
  std::vector<FractionalIdeal> ideals;
  std::vector<FieldElement> steps;     // mu_j
  std::vector<FieldElement> prefixes;  // mu_0 ... mu_{j-1}; R_j = prefix_j^{-1} O_F
  FieldElement unit;                   // product over the whole period

  std::optional<std::size_t> find(const FractionalIdeal& R) const;
};

inline constexpr std::size_t kMaxCycleLength = 200'000;

PrincipalCycle principal_cycle(const NumberField& F);

enum class Principality { principal, not_principal, undecided };

struct GeneratorSearch {
  Principality status = Principality::undecided;
  std::optional<FieldElement> generator;  // A = g O_F
};

/// Decides whether A is principal and finds a generator. Real quadratic fields
/// walk the principal cycle; other fields enumerate elements of A up to the
/// radius implied by the unit lattice. `cycle` may be passed to reuse a
/// precomputed walk.
GeneratorSearch find_generator(const FractionalIdeal& A, const UnitLattice& units,
                               const PrincipalCycle* cycle = nullptr);

/// A unit eta (possibly -1 times units) with eta * g totally positive, if any.
std::optional<FieldElement> totally_positive_associate(const FieldElement& g, const UnitLattice& units);

/// Minimum over the unit lattice (given by logs) of |t + lambda|.
double closest_distance(const LogVector& t, const std::vector<LogVector>& lattice);

/// |D1 - D2|_Pic, empty when the ideal classes differ.
std::optional<double> pic_distance(const ArakelovDivisor& a, const ArakelovDivisor& b, const UnitLattice& units,
                                   const PrincipalCycle* cycle = nullptr);

/// Distance in the oriented class group (totally positive units only), empty
/// when the narrow classes differ.
std::optional<double> oriented_distance(const ArakelovDivisor& a, const ArakelovDivisor& b,
                                        const UnitLattice& units, const PrincipalCycle* cycle = nullptr);

/// |log v|_Pic for a divisor (O_F, v).
double pic_norm(const LogVector& log_v, const UnitLattice& units);

}  // namespace sred
