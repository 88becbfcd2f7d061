#include "sred/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sred/lattice.hpp"

namespace sred {

namespace {

LogVector log_embedding(const NumberField& F, const FieldElement& x) {
  std::vector<double> l;
  for (int p = 0; p < F.num_places(); ++p) l.push_back(F.log_abs_at(x, p, kDefaultPrecision).mid());
  return LogVector(std::move(l), F.place_degrees());
}

// Sign bits (1 = negative) at the real places.
std::vector<int> sign_bits(const NumberField& F, const FieldElement& x) {
  std::vector<int> s;
  for (int p = 0; p < F.r1(); ++p) s.push_back(F.sign_at(x, p) < 0 ? 1 : 0);
  return s;
}

double det_double(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    if (m[piv][k] == 0) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

double regulator_of(const std::vector<LogVector>& logs) {
  if (logs.empty()) return 1.0;
  const std::size_t r = logs.size();
  std::vector<std::vector<double>> m(r, std::vector<double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = logs[i].degrees()[j] * logs[i][j];
  return std::fabs(det_double(m));
}

// Totally positive subgroup: exponent vectors k with sum k_i s(eps_i) equal to
// 0 or to the sign vector of -1.
void fill_positive(UnitLattice& U) {
  const NumberField& F = U.field;
  const int r = U.rank();
  U.positive_generators.clear();
  U.positive_logs.clear();
  if (r == 0) return;
  if (F.r1() == 0) {
    U.positive_generators = U.generators;
    U.positive_logs = U.logs;
    return;
  }
  if (r > 20) throw LimitExceeded("too many unit generators");
  std::vector<std::vector<int>> signs;
  for (const auto& e : U.generators) signs.push_back(sign_bits(F, e));
  const int r1 = F.r1();
  std::vector<std::vector<Int>> cols;
  for (int i = 0; i < r; ++i) {
    std::vector<Int> c(r, Int(0));
    c[i] = 2;
    cols.push_back(c);
  }
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> s(r1, 0);
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i))
        for (int p = 0; p < r1; ++p) s[p] ^= signs[i][p];
    bool all_zero = std::all_of(s.begin(), s.end(), [](int b) { return b == 0; });
    bool all_one = std::all_of(s.begin(), s.end(), [](int b) { return b == 1; });
    if (!all_zero && !all_one) continue;
    std::vector<Int> c(r, Int(0));
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) c[i] = 1;
    cols.push_back(c);
  }
  ZMatrix m(static_cast<std::size_t>(r), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  ZMatrix h = hermite_normal_form(m);
  for (int j = 0; j < r; ++j) {
    FieldElement x = F.one();
    for (int i = 0; i < r; ++i)
      if (h(i, j) != 0) x = F.multiply(x, F.power(U.generators[i], h(i, j).get_si()));
    if (F.sign_at(x, 0) < 0) x = -x;
    for (int p = 0; p < r1; ++p)
      if (F.sign_at(x, p) < 0) throw std::logic_error("totally positive unit construction failed");
    U.positive_generators.push_back(x);
    U.positive_logs.push_back(log_embedding(F, x));
  }
}

double wrap_angle(double a) {
  const double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

}  // namespace

double UnitLattice::regulator() const { return regulator_of(logs); }
double UnitLattice::positive_regulator() const { return regulator_of(positive_logs); }

int UnitLattice::sign_image_size() const {
  const int r1 = field.r1();
  if (r1 == 0) return 1;
  std::vector<std::vector<int>> vecs;
  vecs.push_back(std::vector<int>(r1, 1));  // -1
  for (const auto& e : generators) vecs.push_back(sign_bits(field, e));
  // F2 rank by elimination.
  int rank = 0;
  for (int col = 0; col < r1 && rank < static_cast<int>(vecs.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(vecs.size()); ++i)
      if (vecs[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(vecs[piv], vecs[rank]);
    for (int i = 0; i < static_cast<int>(vecs.size()); ++i)
      if (i != rank && vecs[i][col])
        for (int c = 0; c < r1; ++c) vecs[i][c] ^= vecs[rank][c];
    ++rank;
  }
  return 1 << rank;
}

std::vector<FieldElement> roots_of_unity(const NumberField& F) {
  const int n = F.degree();
  FractionalIdeal O = FractionalIdeal::unit(F);
  GramMatrix G = gram_of(O);
  std::vector<FieldElement> out;
  for (const auto& c : enumerate_ellipsoid(G, static_cast<double>(n))) {
    if (G.compare_to(c, Rat(n)) != 0) continue;
    FieldElement x = O.combination(c);
    FieldElement p = x;
    for (int k = 1; k <= 1000; ++k) {
      if (p == F.one()) {
        out.push_back(x);
        break;
      }
      p = F.multiply(p, x);
    }
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) { return a.coords < b.coords; });
  return out;
}

FieldElement quadratic_fundamental_unit(const NumberField& F) {
  if (!F.is_real_quadratic()) throw DomainError("fundamental unit by continued fractions needs a real quadratic field");
  const Int d = *F.quadratic_radicand();
  const Int b = F.min_poly()[1];
  const Int disc0 = b * b - 4 * F.min_poly()[0];
  const Int f = sqrt(disc0 / d);
  FieldElement sqrt_d = F.from_power_basis({Rat(b) / Rat(f), Rat(2) / Rat(f)});
  const bool one_mod_four = d % 4 == 1;
  FieldElement omega = one_mod_four ? Rat(1, 2) * (F.one() + sqrt_d) : sqrt_d;
  const Int trace_omega = one_mod_four ? 1 : 0;

  Int P = one_mod_four ? 1 : 0, Q = one_mod_four ? 2 : 1;
  const Int s = sqrt(d);
  Int p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  for (int iter = 0; iter < 1'000'000; ++iter) {
    if (Q <= 0) throw std::logic_error("continued fraction left the reduced range");
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
    Int p = a * p1 + p2, q = a * q1 + q2;
    Int norm = one_mod_four ? Int(p * p - p * q - q * q * ((d - 1) / 4)) : Int(p * p - d * q * q);
    if (q > 0 && (norm == 1 || norm == -1)) {
      FieldElement eps = Rat(Int(p - q * trace_omega)) * F.one() + Rat(q) * omega;
      // Normalize to eps > 1 at the first place.
      if (F.compare_abs_at(eps, F.one(), 0) < 0) eps = F.conjugate(eps);
      if (F.sign_at(eps, 0) < 0) eps = -eps;
      return eps;
    }
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    Int Pn = a * Q - P;
    Int Qn = (d - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
  }
  throw LimitExceeded("continued fraction period too long");
}

UnitLattice quadratic_units(const NumberField& F) {
  if (!F.is_quadratic()) throw DomainError("units must be supplied for non-quadratic fields");
  UnitLattice U{F, {}, {}, {}, {}, roots_of_unity(F)};
  if (F.is_real_quadratic()) {
    FieldElement eps = quadratic_fundamental_unit(F);
    U.generators.push_back(eps);
    U.logs.push_back(log_embedding(F, eps));
    fill_positive(U);
  }
  return U;
}

UnitLattice units_from_generators(const NumberField& F, std::vector<FieldElement> units) {
  UnitLattice U{F, {}, {}, {}, {}, roots_of_unity(F)};
  for (auto& e : units) {
    if (!F.is_integral(e) || (F.norm(e) != 1 && F.norm(e) != -1)) throw DomainError("supplied element is not a unit");
    U.logs.push_back(log_embedding(F, e));
    U.generators.push_back(std::move(e));
  }
  if (U.rank() > F.num_places() - 1) throw DomainError("more units supplied than the unit rank");
  if (U.rank() > 0 && U.regulator() < 1e-9) throw DomainError("supplied units are dependent");
  fill_positive(U);
  return U;
}

UnitLattice units_for(const NumberField& F, const std::optional<std::vector<FieldElement>>& supplied) {
  if (F.is_quadratic()) return quadratic_units(F);
  return units_from_generators(F, supplied.value_or(std::vector<FieldElement>{}));
}

// ---------------------------------------------------------------------------
// Infrastructure

FieldElement neighbor(const FractionalIdeal& R) {
  const NumberField& F = R.field();
  if (!F.is_real_quadratic()) throw DomainError("neighbor needs a real quadratic field");
  // Minkowski: the open box |s1| < X, |s2| < 1 with X > covolume holds a
  // nonzero point, and none of them has |s1| <= 1 when 1 is minimal.
  double covol = std::sqrt(std::fabs(F.discriminant().get_d())) * R.norm().get_d();
  double X = covol + 1;
  auto box = enumerate_box(R, ArchVector::uniform(1.0, F.place_degrees()), {X, 1.0}, true);
  const FieldElement one = F.one();
  std::optional<FieldElement> best;
  for (const auto& g : box) {
    if (F.compare_abs_at(g, one, 0) <= 0) continue;
    if (!best || F.compare_abs_at(g, *best, 0) < 0) best = g;
  }
  if (!best) throw std::logic_error("no neighbor found; the ideal is not reduced");
  if (F.sign_at(*best, 0) < 0) best = -*best;
  return *best;
}

std::optional<std::size_t> PrincipalCycle::find(const FractionalIdeal& R) const {
  for (std::size_t i = 0; i < ideals.size(); ++i)
    if (ideals[i] == R) return i;
  return std::nullopt;
}

PrincipalCycle principal_cycle(const NumberField& F) {
  PrincipalCycle c{{}, {}, {}, F.one()};
  const FractionalIdeal O = FractionalIdeal::unit(F);
  FractionalIdeal R = O;
  FieldElement prefix = F.one();
  for (;;) {
    FieldElement mu = neighbor(R);
    c.ideals.push_back(R);
    c.steps.push_back(mu);
    c.prefixes.push_back(prefix);
    prefix = F.multiply(prefix, mu);
    R = R.times(F.inverse(mu));
    if (R == O) break;
    if (c.ideals.size() > kMaxCycleLength) throw LimitExceeded("principal cycle too long");
  }
  c.unit = prefix;
  return c;
}

GeneratorSearch find_generator(const FractionalIdeal& A, const UnitLattice& units, const PrincipalCycle* cycle) {
  const NumberField& F = A.field();
  GeneratorSearch out;
  if (F.is_real_quadratic()) {
    std::optional<PrincipalCycle> local;
    if (!cycle) {
      local = principal_cycle(F);
      cycle = &*local;
    }
    FieldElement a = minimal_element_bounded(A, divisor_d(A).u());
    FractionalIdeal R = A.times(F.inverse(a));
    auto idx = cycle->find(R);
    if (!idx) {
      out.status = Principality::not_principal;
      return out;
    }
    out.status = Principality::principal;
    out.generator = F.divide(a, cycle->prefixes[*idx]);
    return out;
  }

  if (units.rank() < F.num_places() - 1) return out;  // undecided without a full unit lattice
  double rho = 0;
  for (const auto& l : units.logs) {
    double m = 0;
    for (std::size_t p = 0; p < l.size(); ++p) m = std::max(m, std::fabs(l[p]));
    rho += 0.5 * m;
  }
  const int n = F.degree();
  double scale = std::exp(-log_abs(A.norm()) / n);
  GramMatrix G = gram_of(A, ArchVector::uniform(scale, F.place_degrees()));
  std::vector<FieldElement> gens;
  const Rat target = A.norm();
  for (const auto& c : enumerate_ellipsoid(G, n * std::exp(2 * rho))) {
    FieldElement x = A.combination(c);
    Rat N = F.norm(x);
    if (N == target || N == -target) gens.push_back(std::move(x));
  }
  if (gens.empty()) {
    out.status = Principality::not_principal;
    return out;
  }
  out.status = Principality::principal;
  out.generator = smallest_in(A, ArchVector::uniform(scale, F.place_degrees()), gens);
  return out;
}

std::optional<FieldElement> totally_positive_associate(const FieldElement& g, const UnitLattice& units) {
  const NumberField& F = units.field;
  if (F.r1() == 0) return F.one();
  const int r = units.rank();
  if (r > 20) throw LimitExceeded("too many unit generators");
  auto target = sign_bits(F, g);
  std::vector<std::vector<int>> signs;
  for (const auto& e : units.generators) signs.push_back(sign_bits(F, e));
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    std::vector<int> s = target;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i))
        for (int p = 0; p < F.r1(); ++p) s[p] ^= signs[i][p];
    bool zero = std::all_of(s.begin(), s.end(), [](int b) { return b == 0; });
    bool ones = std::all_of(s.begin(), s.end(), [](int b) { return b == 1; });
    if (!zero && !ones) continue;
    FieldElement eta = F.one();
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) eta = F.multiply(eta, units.generators[i]);
    if (ones) eta = -eta;
    return eta;
  }
  return std::nullopt;
}

namespace {

struct CvpSetup {
  std::vector<std::vector<double>> gram;
  std::vector<double> center;
  double babai_value = 0;
};

LogVector shifted(const LogVector& t, const std::vector<LogVector>& lattice, const std::vector<std::int64_t>& k) {
  LogVector v = t;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (k[i] != 0) v = v + lattice[i] * static_cast<double>(k[i]);
  return v;
}

CvpSetup cvp_setup(const LogVector& t, const std::vector<LogVector>& lattice) {
  const std::size_t r = lattice.size();
  CvpSetup s;
  s.gram.assign(r, std::vector<double>(r));
  std::vector<double> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) s.gram[i][j] = lattice[i].dot(lattice[j]);
    rhs[i] = -lattice[i].dot(t);
  }
  // Solve gram * c = rhs by Gaussian elimination.
  auto a = s.gram;
  s.center = rhs;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < r; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    std::swap(a[piv], a[k]);
    std::swap(s.center[piv], s.center[k]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k) continue;
      double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < r; ++j) a[i][j] -= f * a[k][j];
      s.center[i] -= f * s.center[k];
    }
  }
  for (std::size_t k = 0; k < r; ++k) s.center[k] /= a[k][k];
  std::vector<std::int64_t> k0(r);
  for (std::size_t i = 0; i < r; ++i) k0[i] = static_cast<std::int64_t>(std::llround(s.center[i]));
  s.babai_value = shifted(t, lattice, k0).squared_norm();
  return s;
}

}  // namespace

double closest_distance(const LogVector& t, const std::vector<LogVector>& lattice) {
  if (lattice.empty()) return t.norm();
  CvpSetup s = cvp_setup(t, lattice);
  auto pts = fincke_pohst(s.gram, s.babai_value * (1 + 1e-9) + 1e-12, s.center, kEnumerationLimit);
  double best = s.babai_value;
  for (const auto& k : pts) best = std::min(best, shifted(t, lattice, k).squared_norm());
  return std::sqrt(best);
}

double pic_norm(const LogVector& log_v, const UnitLattice& units) { return closest_distance(log_v, units.logs); }

namespace {

FieldElement require_generator(const GeneratorSearch& s) {
  if (s.status == Principality::undecided)
    throw DomainError("principality undecided: the unit group must be supplied for this field");
  return *s.generator;
}

}  // namespace

std::optional<double> pic_distance(const ArakelovDivisor& a, const ArakelovDivisor& b, const UnitLattice& units,
                                   const PrincipalCycle* cycle) {
  const NumberField& F = a.field();
  if (units.rank() < F.num_places() - 1) throw DomainError("unit group unavailable for this field");
  GeneratorSearch s = find_generator(a.ideal() * b.ideal().inverse(), units, cycle);
  if (s.status == Principality::not_principal) return std::nullopt;
  FieldElement g = require_generator(s);
  LogVector t = a.log_u() - b.log_u() + log_embedding(F, g);
  return closest_distance(t, units.logs);
}

std::optional<double> oriented_distance(const ArakelovDivisor& a, const ArakelovDivisor& b,
                                        const UnitLattice& units, const PrincipalCycle* cycle) {
  const NumberField& F = a.field();
  if (units.rank() < F.num_places() - 1) throw DomainError("unit group unavailable for this field");
  GeneratorSearch s = find_generator(a.ideal() * b.ideal().inverse(), units, cycle);
  if (s.status == Principality::not_principal) return std::nullopt;
  FieldElement g = require_generator(s);
  auto eta = totally_positive_associate(g, units);
  if (!eta) return std::nullopt;
  g = F.multiply(*eta, g);
  LogVector t = a.log_u() - b.log_u() + log_embedding(F, g);
  if (F.r2() == 0) return closest_distance(t, units.positive_logs);

  // Complex places also carry the argument of the principal logarithm.
  auto args_of = [&](const FieldElement& x) {
    std::vector<double> out;
    for (int p = F.r1(); p < F.num_places(); ++p) {
      ComplexInterval z = F.embed_at(x, p, kDefaultPrecision);
      out.push_back(std::atan2(z.im.mid(), z.re.mid()));
    }
    return out;
  };
  const auto& lat = units.positive_logs;
  std::vector<std::vector<double>> unit_args;
  for (const auto& e : units.positive_generators) unit_args.push_back(args_of(e));
  std::vector<std::vector<double>> torsion_args;
  for (const auto& z : units.torsion) torsion_args.push_back(args_of(z));
  const auto base_args = args_of(g);
  auto full_value = [&](const std::vector<std::int64_t>& k) {
    LogVector v = lat.empty() ? t : shifted(t, lat, k);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& za : torsion_args) {
      double total = 0;
      for (int p = 0; p < F.num_places(); ++p) {
        double x = v[p] * v[p];
        if (p >= F.r1()) {
          const std::size_t c = static_cast<std::size_t>(p - F.r1());
          double arg = base_args[c] + za[c];
          for (std::size_t i = 0; i < lat.size(); ++i) arg += static_cast<double>(k[i]) * unit_args[i][c];
          arg = wrap_angle(arg);
          x += arg * arg;
        }
        total += F.place_degree(p) * x;
      }
      best = std::min(best, total);
    }
    return best;
  };
  if (lat.empty()) return std::sqrt(full_value({}));
  CvpSetup cs = cvp_setup(t, lat);
  std::vector<std::int64_t> k0(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) k0[i] = static_cast<std::int64_t>(std::llround(cs.center[i]));
  double best = full_value(k0);
  for (const auto& k : fincke_pohst(cs.gram, best * (1 + 1e-9) + 1e-12, cs.center, kEnumerationLimit))
    best = std::min(best, full_value(k));
  return std::sqrt(best);
}

}  // namespace sred
