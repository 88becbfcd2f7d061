#include "sred/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace sred {

std::size_t SredCensus::usual_reduced_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CensusEntry& e) { return e.usual_reduced; }));
}

std::size_t SredCensus::count_in_class(int tag) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [&](const CensusEntry& e) { return e.class_tag == tag; }));
}

namespace {

Int floor_upper(const Interval& x) {
  double u = x.upper();
  if (!std::isfinite(u) || u > 1e18) throw LimitExceeded("norm bound too large");
  return Int(static_cast<long>(std::floor(u)));
}

Interval c_to_the_n(const ReductionConstant& C, int n, Precision prec) {
  Interval c2(C.squared(), prec);
  Interval out(1L, prec);
  for (int i = 0; i + 1 < n; i += 2) out *= c2;
  if (n % 2 == 1) out *= c2.sqrt();
  return out;
}

// Runs body(i) for i in [0, count) on a few threads.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (count < 64 || threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = count;
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::optional<PrincipalCycle> maybe_cycle(const NumberField& F, const PrincipalCycle* cycle) {
  if (cycle || !F.is_real_quadratic()) return std::nullopt;
  return principal_cycle(F);
}

bool can_classify(const NumberField& F, const UnitLattice& units) {
  return F.is_quadratic() || units.rank() == F.num_places() - 1;
}

struct ClassSorter {
  const UnitLattice& units;
  const PrincipalCycle* cycle;
  std::vector<FractionalIdeal> reps;

  ClassSorter(const NumberField& F, const UnitLattice& u, const PrincipalCycle* c)
      : units(u), cycle(c), reps{FractionalIdeal::unit(F)} {}

  // Tag of the class of I and a generator of I / rep; empty when undecided.
  std::optional<std::pair<int, FieldElement>> tag(const FractionalIdeal& I) {
    for (std::size_t t = 0; t < reps.size(); ++t) {
      GeneratorSearch s = find_generator(I * reps[t].inverse(), units, cycle);
      if (s.status == Principality::undecided) return std::nullopt;
      if (s.status == Principality::principal) return std::make_pair(static_cast<int>(t), *s.generator);
    }
    reps.push_back(I);
    return std::make_pair(static_cast<int>(reps.size() - 1), I.field().one());
  }
};

}  // namespace

Int census_bound(const NumberField& F, const ReductionConstant& C) {
  Precision prec = kDefaultPrecision;
  return floor_upper(c_to_the_n(C, F.degree(), prec) * F.partial(prec));
}

SredCensus enumerate_sred(const NumberField& F, const ReductionConstant& C) {
  const Int bound = census_bound(F, C);
  std::vector<FractionalIdeal> ideals;
  try {
    ideals = enumerate_integral_ideals(F, Rat(bound));
  } catch (const LimitExceeded&) {
    throw LimitExceeded("census refused: norm bound " + bound.get_str() + " is too large");
  }
  if (ideals.size() > kMaxCensusIdeals)
    throw LimitExceeded("census refused: norm bound " + bound.get_str() + " gives " +
                        std::to_string(ideals.size()) + " ideals");

  std::vector<std::optional<CensusEntry>> found(ideals.size());
  parallel_for(ideals.size(), [&](std::size_t i) {
    const FractionalIdeal& J = ideals[i];
    FractionalIdeal I = J.inverse();
    ReducedCertificate cert = check_strongly_c_reduced(I, C);
    if (!cert.reduced) return;
    CensusEntry e{I, J, J.norm().get_num(), is_reduced_usual(I), cert.shortest.length, {}, {}, {}, {}, {}};
    found[i] = std::move(e);
  });

  SredCensus census{F, C, bound, {}, std::nullopt};
  for (auto& e : found)
    if (e) census.entries.push_back(std::move(*e));
  return census;
}

void classify_components(SredCensus& census, const UnitLattice& units, const PrincipalCycle* cycle) {
  const NumberField& F = census.field;
  if (!can_classify(F, units)) return;
  auto local = maybe_cycle(F, cycle);
  if (local) cycle = &*local;

  ClassSorter classes(F, units, cycle);
  // Narrow representatives per ideal class.
  std::vector<std::pair<int, FractionalIdeal>> narrow_reps{{0, FractionalIdeal::unit(F)}};
  for (auto& e : census.entries) {
    auto t = classes.tag(e.ideal);
    if (!t) continue;
    e.class_tag = t->first;
    e.generator = t->second;
    bool placed = false;
    for (std::size_t k = 0; k < narrow_reps.size() && !placed; ++k) {
      if (narrow_reps[k].first != t->first) continue;
      GeneratorSearch s = find_generator(e.ideal * narrow_reps[k].second.inverse(), units, cycle);
      if (s.status != Principality::principal) continue;
      if (totally_positive_associate(*s.generator, units)) {
        e.narrow_tag = static_cast<int>(k);
        placed = true;
      }
    }
    if (!placed) {
      narrow_reps.emplace_back(t->first, e.ideal);
      e.narrow_tag = static_cast<int>(narrow_reps.size() - 1);
    }
  }
}

void cycle_positions(SredCensus& census, const UnitLattice& units) {
  const NumberField& F = census.field;
  if (!F.is_real_quadratic()) throw DomainError("cycle positions need a real quadratic field");
  if (units.rank() != 1) throw DomainError("cycle positions need the fundamental unit");
  const double length = std::numbers::sqrt2 * units.regulator();
  census.circle_length = length;
  for (auto& e : census.entries) {
    if (!e.generator) continue;
    double l1 = F.log_abs_at(*e.generator, 0, kDefaultPrecision).mid();
    double l2 = F.log_abs_at(*e.generator, 1, kDefaultPrecision).mid();
    double p = std::fmod((l1 - l2) / std::numbers::sqrt2, length);
    if (p < 0) p += length;
    if (p >= length) p -= length;
    e.position = p;
    e.angle = 2 * std::numbers::pi * p / length;
  }
}

bool positions_symmetric(std::vector<double> positions, double length, double tolerance) {
  auto circular = [&](double a, double b) {
    double d = std::fmod(std::fabs(a - b), length);
    return std::min(d, length - d);
  };
  std::vector<bool> used(positions.size(), false);
  for (double p : positions) {
    double q = std::fmod(length - p, length);
    bool matched = false;
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (!used[j] && circular(positions[j], q) <= tolerance) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::optional<int> class_number(const NumberField& F, const UnitLattice& units, const PrincipalCycle* cycle) {
  if (!can_classify(F, units)) return std::nullopt;
  auto local = maybe_cycle(F, cycle);
  if (local) cycle = &*local;
  const int n = F.degree();
  Precision prec = kDefaultPrecision;
  // n!/n^n (4/pi)^{r2} sqrt|disc|
  Interval m(1L, prec);
  for (int i = 1; i <= n; ++i) m *= Interval(static_cast<long>(i), prec) / Interval(static_cast<long>(n), prec);
  for (int i = 0; i < F.r2(); ++i) m *= Interval(4L, prec) / Interval::pi(prec);
  m *= Interval(Int(abs(F.discriminant())), prec).sqrt();
  ClassSorter classes(F, units, cycle);
  for (const auto& J : enumerate_integral_ideals(F, Rat(floor_upper(m))))
    if (!classes.tag(J)) return std::nullopt;
  return static_cast<int>(classes.reps.size());
}

std::optional<int> narrow_class_number(const NumberField& F, const UnitLattice& units, const PrincipalCycle* cycle) {
  auto h = class_number(F, units, cycle);
  if (!h) return std::nullopt;
  return *h * (1 << F.r1()) / units.sign_image_size();
}

double separation_delta(const ReductionConstant& C, bool sqrt3) {
  const double k = sqrt3 ? std::sqrt(3.0) : 3.0;
  return std::log1p(k / (2 * C.squared().get_d()));
}

SeparationReport verify_separation(const SredCensus& census, const UnitLattice& units, const PrincipalCycle* cycle) {
  const NumberField& F = census.field;
  auto local = maybe_cycle(F, cycle);
  if (local) cycle = &*local;
  SeparationReport r;
  r.delta = separation_delta(census.C, true);
  r.delta_alt = separation_delta(census.C, false);
  const auto& es = census.entries;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!es[i].narrow_tag) continue;
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (es[j].narrow_tag != es[i].narrow_tag) continue;
      auto d = oriented_distance(divisor_d(es[i].ideal), divisor_d(es[j].ideal), units, cycle);
      if (!d) throw std::logic_error("entries tagged with the same narrow class are not comparable");
      ++r.pairs;
      r.min_gap = r.min_gap ? std::min(*r.min_gap, *d) : *d;
      if (*d < r.delta - kSeparationTolerance) ++r.violations;
      if (*d < r.delta_alt - kSeparationTolerance) ++r.alt_violations;
    }
  }
  return r;
}

std::size_t max_in_arc(std::vector<double> positions, double circle, double arc) {
  if (positions.empty()) return 0;
  if (arc >= circle) return positions.size();
  std::sort(positions.begin(), positions.end());
  const std::size_t m = positions.size();
  for (std::size_t i = 0; i < m; ++i) positions.push_back(positions[i] + circle);
  std::size_t best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < m; ++i) {
    j = std::max(j, i);
    while (j < i + m && positions[j] <= positions[i] + arc + 1e-12) ++j;
    best = std::max(best, j - i);
  }
  return best;
}

CountReport verify_counts(const SredCensus& census, const UnitLattice& units, const PrincipalCycle* cycle) {
  const NumberField& F = census.field;
  if (!F.is_real_quadratic() || !census.circle_length) throw DomainError("volume unavailable for this census");
  const int n = F.degree();
  CountReport r;
  r.sred = census.size();
  auto h = class_number(F, units, cycle);
  if (!h) throw DomainError("class number undecided");
  r.class_number = *h;
  r.narrow_class_number = *h * (1 << F.r1()) / units.sign_image_size();
  r.oriented_volume = r.narrow_class_number * std::numbers::sqrt2 * units.positive_regulator();

  std::map<int, std::vector<double>> by_class;
  for (const auto& e : census.entries)
    if (e.class_tag && e.position) by_class[*e.class_tag].push_back(*e.position);
  for (auto& [tag, ps] : by_class) r.ball = std::max(r.ball, max_in_arc(ps, *census.circle_length, 2.0));

  for (bool sqrt3 : {true, false}) {
    double delta = separation_delta(census.C, sqrt3);
    double sred_bound = std::pow(2.0, n) * std::pow(delta, -n / 2.0) * r.oriented_volume;
    double ball_bound = std::pow(0.5 * delta, -n);
    (sqrt3 ? r.sred_bound : r.sred_bound_alt) = sred_bound;
    (sqrt3 ? r.ball_bound : r.ball_bound_alt) = ball_bound;
  }
  return r;
}

std::vector<ArakelovDivisor> sample_divisors(const NumberField& F, std::size_t count, std::uint64_t seed,
                                             long max_norm, double spread) {
  const auto pool = enumerate_integral_ideals(F, Rat(max_norm));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> coord(-spread, spread);
  const int n = F.degree();
  const auto degs = F.place_degrees();
  std::vector<ArakelovDivisor> out;
  for (std::size_t i = 0; i < count; ++i) {
    FractionalIdeal I = pool[pick(rng)];
    if (rng() & 1) I = I.inverse();
    std::vector<double> x(degs.size());
    double weighted = 0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      x[p] = coord(rng);
      weighted += degs[p] * x[p];
    }
    const double shift = -log_abs(I.norm()) / n - weighted / n;
    std::vector<double> u;
    for (double v : x) u.push_back(std::exp(v + shift));
    out.emplace_back(I, ArchVector::positive(u, degs));
  }
  return out;
}

ReductionReport verify_reduction(const std::vector<ArakelovDivisor>& divisors, const ReductionConstant& C,
                                 const UnitLattice& units, const PrincipalCycle* cycle) {
  ReductionReport r;
  if (divisors.empty()) return r;
  const NumberField& F = divisors.front().field();
  auto local = maybe_cycle(F, cycle);
  if (local) cycle = &*local;
  r.distance_bound = reduction_distance_bound(F, C);
  r.step_bound = reduction_step_bound(F, C);
  for (const auto& D : divisors) {
    ReductionResult res = reduce(D, C);
    ++r.runs;
    r.max_steps = std::max(r.max_steps, res.trace.k);
    if (!is_strongly_c_reduced(res.reduced.ideal(), C)) ++r.certificate_failures;
    if (std::isfinite(r.step_bound) && !(static_cast<double>(res.trace.k) < r.step_bound)) ++r.step_violations;
    auto d = pic_distance(D, res.reduced, units, cycle);
    if (!d) {
      ++r.distance_violations;  // must stay on the same component
      continue;
    }
    r.max_distance = std::max(r.max_distance, *d);
    if (std::isfinite(r.distance_bound) && !(*d < r.distance_bound)) ++r.distance_violations;
  }
  return r;
}

}  // namespace sred
