// Command line front end: sred <info|check|reduce|census|cycle|verify> ...
//
// Exit codes: 0 success or affirmative answer, 1 negative answer, 2 usage or
// input error, 3 internal limit (census refused, enumeration too large),
// 4 unexpected internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sred/arakelov.hpp"
#include "sred/interval.hpp"
#include "sred/io.hpp"
#include "sred/survey.hpp"
#include "sred/units.hpp"

using namespace sred;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInternal = 4;

struct RunConfig {
  std::string field;
  std::string C = "sqrt(2)";
  long precision = 128;
  std::string format;
  std::uint64_t seed = 1;
  std::string out;
  std::string ideal;
  std::string divisor;
  std::size_t samples = 100;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + cfg.out + "'");
  f << text;
}

std::optional<UnitLattice> units_if_available(const FieldSpec& spec) {
  if (spec.field.is_quadratic()) return quadratic_units(spec.field);
  if (spec.units || spec.field.num_places() == 1) return units_from_generators(spec.field, spec.units.value_or(std::vector<FieldElement>{}));
  return std::nullopt;
}

UnitLattice require_units(const FieldSpec& spec) {
  auto u = units_if_available(spec);
  if (!u) throw DomainError("this command needs units; add \"units\" to the field file");
  return *u;
}

int cmd_info(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  auto units = units_if_available(spec);
  std::optional<int> h, hp;
  if (units && spec.field.is_quadratic()) {
    h = class_number(spec.field, *units);
    hp = narrow_class_number(spec.field, *units);
  }
  emit(cfg, info_json(spec, units, h, hp));
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  auto C = ReductionConstant::parse(cfg.C);
  ModuleSpec m = parse_module_spec(spec.field, read_spec_argument(cfg.ideal));
  ReducedCertificate cert = check_strongly_c_reduced(m.module, C);
  emit(cfg, certificate_json(m.module, C, cert));
  return cert.reduced ? 0 : kExitNegative;
}

int cmd_reduce(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  auto C = ReductionConstant::parse(cfg.C);
  ArakelovDivisor D = parse_divisor_spec(spec.field, read_spec_argument(cfg.divisor));
  ReductionResult r = reduce(D, C);
  std::optional<double> distance;
  if (auto units = units_if_available(spec); units && units->rank() == spec.field.num_places() - 1)
    distance = pic_distance(D, r.reduced, *units);
  emit(cfg, reduction_json(D, C, r, distance));
  return 0;
}

SredCensus full_census(const FieldSpec& spec, const ReductionConstant& C) {
  SredCensus census = enumerate_sred(spec.field, C);
  if (auto units = units_if_available(spec)) {
    classify_components(census, *units);
    if (spec.field.is_real_quadratic()) cycle_positions(census, *units);
  }
  return census;
}

int cmd_census(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  auto C = ReductionConstant::parse(cfg.C);
  SredCensus census = full_census(spec, C);
  emit(cfg, cfg.format == "csv" ? census_csv(census) : census_json(census));
  return 0;
}

int cmd_cycle(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  if (!spec.field.is_real_quadratic()) throw DomainError("cycle plots need a real quadratic field");
  auto C = ReductionConstant::parse(cfg.C);
  SredCensus census = full_census(spec, C);
  emit(cfg, cfg.format == "csv" ? cycle_csv(census) : cycle_svg(census));
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  FieldSpec spec = load_field_spec(cfg.field);
  auto C = ReductionConstant::parse(cfg.C);
  UnitLattice units = require_units(spec);
  const NumberField& F = spec.field;
  std::optional<PrincipalCycle> cycle;
  if (F.is_real_quadratic()) cycle = principal_cycle(F);
  const PrincipalCycle* cyc = cycle ? &*cycle : nullptr;

  SredCensus census = enumerate_sred(F, C);
  classify_components(census, units, cyc);
  bool ok = true;
  std::string report = "{\n";
  auto line = [&](const std::string& key, const std::string& value, bool last = false) {
    report += "  \"" + key + "\": " + value + (last ? "\n" : ",\n");
  };
  line("C", "\"" + C.text() + "\"");
  line("census_size", std::to_string(census.size()));
  line("usual_reduced", std::to_string(census.usual_reduced_count()));

  std::size_t norm_violations = 0;
  for (const auto& e : census.entries)
    if (e.inverse_norm > census.bound) ++norm_violations;
  line("norm_bound", census.bound.get_str());
  line("norm_bound_violations", std::to_string(norm_violations));
  ok = ok && norm_violations == 0;

  if (F.is_real_quadratic()) {
    cycle_positions(census, units);
    std::vector<double> ps;
    for (const auto& e : census.entries)
      if (e.class_tag == 0 && e.position) ps.push_back(*e.position);
    bool sym = positions_symmetric(ps, *census.circle_length, 1e-9);
    line("principal_positions_symmetric", sym ? "true" : "false");
    ok = ok && sym;
    CountReport cr = verify_counts(census, units, cyc);
    line("class_number", std::to_string(cr.class_number));
    line("narrow_class_number", std::to_string(cr.narrow_class_number));
    line("sred_bound", format_double(cr.sred_bound));
    line("sred_bound_constant_3", format_double(cr.sred_bound_alt));
    line("ball_count", std::to_string(cr.ball));
    line("ball_bound", format_double(cr.ball_bound));
    line("ball_bound_constant_3", format_double(cr.ball_bound_alt));
    line("counts_ok", cr.ok() ? "true" : "false");
    ok = ok && cr.ok();
  }
  if (units.rank() == F.num_places() - 1) {
    SeparationReport sr = verify_separation(census, units, cyc);
    line("separation_delta", format_double(sr.delta));
    line("separation_delta_constant_3", format_double(sr.delta_alt));
    line("separation_pairs", std::to_string(sr.pairs));
    line("separation_min_gap", sr.min_gap ? format_double(*sr.min_gap) : "null");
    line("separation_violations", std::to_string(sr.violations));
    line("separation_violations_constant_3", std::to_string(sr.alt_violations));
    ok = ok && sr.ok();
    ReductionReport rr = verify_reduction(sample_divisors(F, cfg.samples, cfg.seed), C, units, cyc);
    line("reduction_runs", std::to_string(rr.runs));
    line("reduction_max_distance", format_double(rr.max_distance));
    line("reduction_distance_bound", std::isfinite(rr.distance_bound) ? format_double(rr.distance_bound) : "null");
    line("reduction_distance_violations", std::to_string(rr.distance_violations));
    line("reduction_step_violations", std::to_string(rr.step_violations));
    line("reduction_certificate_failures", std::to_string(rr.certificate_failures));
    ok = ok && rr.ok();
  }
  line("ok", ok ? "true" : "false", true);
  report += "}\n";
  emit(cfg, report);
  return ok ? 0 : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strongly C-reduced Arakelov divisors of number fields"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool with_c) {
    sub->add_option("--field", cfg.field, "field file (JSON)")->required();
    if (with_c) sub->add_option("--C", cfg.C, "reduction constant C >= 1, e.g. 2, 3/2, sqrt(2)");
    sub->add_option("--out", cfg.out, "write the output here instead of stdout");
    sub->add_option("--precision", cfg.precision, "working precision in bits")->check(CLI::Range(64L, 8192L));
    sub->add_option("--seed", cfg.seed, "seed for randomized runs");
  };

  auto* info = app.add_subcommand("info", "field invariants, units and regulator");
  common(info, false);
  auto* check = app.add_subcommand("check", "is the ideal or lattice strongly C-reduced");
  common(check, true);
  check->add_option("--ideal", cfg.ideal, "ideal spec: JSON text or file")->required();
  auto* red = app.add_subcommand("reduce", "reduce a degree-0 divisor");
  common(red, true);
  red->add_option("--divisor", cfg.divisor, "divisor spec: JSON text or file")->required();
  auto* census = app.add_subcommand("census", "all strongly C-reduced divisors");
  common(census, true);
  census->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* cycle = app.add_subcommand("cycle", "positions on the principal circle");
  common(cycle, true);
  cycle->add_option("--format", cfg.format, "svg or csv")->check(CLI::IsMember({"svg", "csv"}));
  auto* verify = app.add_subcommand("verify", "check the finiteness, distance, separation and counting bounds");
  common(verify, true);
  verify->add_option("--samples", cfg.samples, "random divisors for the reduction check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    set_working_precision(static_cast<Precision>(cfg.precision));
    if (*info) return cmd_info(cfg);
    if (*check) return cmd_check(cfg);
    if (*red) return cmd_reduce(cfg);
    if (*census) return cmd_census(cfg);
    if (*cycle) return cmd_cycle(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
