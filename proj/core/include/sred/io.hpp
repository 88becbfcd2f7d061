#pragma once

// JSON input specs for fields, ideals and divisors, and the JSON / CSV / SVG
// renderings used by the command line tool. Element coordinates are always on
// the integral basis; rationals are written as numbers, "p/q" strings or
// [p, q] pairs.

#include <optional>
#include <string>
#include <vector>

#include "sred/arakelov.hpp"
#include "sred/ideals.hpp"
#include "sred/numfield.hpp"
#include "sred/survey.hpp"
#include "sred/units.hpp"

namespace sred {

/// Malformed input file or spec.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  NumberField field;
  std::optional<std::vector<FieldElement>> units;
};

/// {"min_poly": [c0, ..., cn], "integral_basis": [[[num, den], ...], ...],
///  "units": [[...], ...]}; the last two are optional.
FieldSpec parse_field_spec(const std::string& json_text);
FieldSpec load_field_spec(const std::string& path);

struct ModuleSpec {
  ZModule module;
  bool plain = false;                   // {"plain": true}: a Z-lattice only
  std::optional<FractionalIdeal> ideal;  // set unless plain
};

/// {"den": m, "hnf": [[...], ...]} (rows of the matrix whose columns span the
/// module, scaled by 1/m) or {"gens": [[...], ...]}; "plain" optional.
ModuleSpec parse_module_spec(const NumberField& F, const std::string& json_text);

/// {"ideal": <ideal spec>, "u": [...]} or {"ideal": ..., "log_u": [...]} or
/// {"ideal": ..., "d_of_ideal": true}. A missing ideal means O_F.
ArakelovDivisor parse_divisor_spec(const NumberField& F, const std::string& json_text);

/// The argument itself when it starts with '{', else the contents of the file.
std::string read_spec_argument(const std::string& argument);

/// Shortest round-trip decimal form.
std::string format_double(double x);
/// "a+b*sqrt(d)" for quadratic fields, else the coordinate list.
std::string element_string(const NumberField& F, const FieldElement& x);

std::string info_json(const FieldSpec& spec, const std::optional<UnitLattice>& units,
                      std::optional<int> class_number = std::nullopt,
                      std::optional<int> narrow_class_number = std::nullopt);
std::string certificate_json(const ZModule& L, const ReductionConstant& C, const ReducedCertificate& cert);
std::string reduction_json(const ArakelovDivisor& D, const ReductionConstant& C, const ReductionResult& r,
                           std::optional<double> distance);
std::string census_json(const SredCensus& census);
std::string census_csv(const SredCensus& census);
std::string cycle_csv(const SredCensus& census);
/// Circle with one tick per principal-class entry, D0 = d(O_F) at the top.
std::string cycle_svg(const SredCensus& census);

}  // namespace sred
