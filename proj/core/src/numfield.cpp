#include "sred/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace sred {

// ---------------------------------------------------------------------------
// FieldElement

bool FieldElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) return false;
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (o.coords.size() != coords.size()) throw DomainError("field element dimension mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  if (o.coords.size() != coords.size()) throw DomainError("field element dimension mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

// ---------------------------------------------------------------------------
// ArchVector / LogVector

ArchVector::ArchVector(std::vector<std::complex<double>> entries, std::vector<int> degrees)
    : entries_(std::move(entries)), degrees_(std::move(degrees)) {
  if (entries_.size() != degrees_.size()) throw DomainError("ArchVector: entries/degrees mismatch");
}

ArchVector ArchVector::positive(const std::vector<double>& values, std::vector<int> degrees) {
  std::vector<std::complex<double>> e;
  for (double v : values) {
    if (!(v > 0)) throw DomainError("ArchVector: entries must be positive");
    e.emplace_back(v, 0.0);
  }
  return ArchVector(std::move(e), std::move(degrees));
}

ArchVector ArchVector::uniform(double value, std::vector<int> degrees) {
  std::vector<double> v(degrees.size(), value);
  return positive(v, std::move(degrees));
}

double ArchVector::squared_norm() const {
  double s = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) s += degrees_[i] * std::norm(entries_[i]);
  return s;
}

double ArchVector::norm() const { return std::sqrt(squared_norm()); }

std::vector<double> ArchVector::magnitudes() const {
  std::vector<double> m;
  for (auto e : entries_) m.push_back(std::abs(e));
  return m;
}

bool ArchVector::is_positive_real() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](std::complex<double> e) { return e.imag() == 0 && e.real() > 0; });
}

ArchVector ArchVector::operator*(const ArchVector& o) const {
  if (o.size() != size()) throw DomainError("ArchVector size mismatch");
  std::vector<std::complex<double>> e(size());
  for (std::size_t i = 0; i < size(); ++i) e[i] = entries_[i] * o.entries_[i];
  return ArchVector(std::move(e), degrees_);
}

ArchVector ArchVector::reciprocal() const {
  std::vector<std::complex<double>> e(size());
  for (std::size_t i = 0; i < size(); ++i) e[i] = 1.0 / entries_[i];
  return ArchVector(std::move(e), degrees_);
}

LogVector ArchVector::log() const {
  std::vector<double> l;
  for (auto e : entries_) l.push_back(std::log(std::abs(e)));
  return LogVector(std::move(l), degrees_);
}

LogVector::LogVector(std::vector<double> entries, std::vector<int> degrees)
    : entries_(std::move(entries)), degrees_(std::move(degrees)) {
  if (entries_.size() != degrees_.size()) throw DomainError("LogVector: entries/degrees mismatch");
}

double LogVector::squared_norm() const { return dot(*this); }
double LogVector::norm() const { return std::sqrt(squared_norm()); }

double LogVector::weighted_sum() const {
  double s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += degrees_[i] * entries_[i];
  return s;
}

double LogVector::max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }

double LogVector::dot(const LogVector& o) const {
  double s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += degrees_[i] * entries_[i] * o.entries_[i];
  return s;
}

LogVector LogVector::operator+(const LogVector& o) const {
  std::vector<double> e(size());
  for (std::size_t i = 0; i < size(); ++i) e[i] = entries_[i] + o.entries_[i];
  return LogVector(std::move(e), degrees_);
}

LogVector LogVector::operator-(const LogVector& o) const {
  std::vector<double> e(size());
  for (std::size_t i = 0; i < size(); ++i) e[i] = entries_[i] - o.entries_[i];
  return LogVector(std::move(e), degrees_);
}

LogVector LogVector::operator*(double s) const {
  std::vector<double> e(entries_);
  for (auto& x : e) x *= s;
  return LogVector(std::move(e), degrees_);
}

ArchVector LogVector::exp() const {
  std::vector<double> e;
  for (double x : entries_) e.push_back(std::exp(x));
  return ArchVector::positive(e, degrees_);
}

// ---------------------------------------------------------------------------
// Polynomial helpers (coefficients low to high).

namespace {

using QPoly = std::vector<Rat>;
using CLD = std::complex<long double>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    Rat lead = a.back() / m.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= lead * m[i];
    trim(a);
  }
  return a;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
  return d;
}

// Durand-Kerner on a monic integer polynomial.
std::vector<CLD> approximate_roots(const std::vector<Int>& poly) {
  const int n = static_cast<int>(poly.size()) - 1;
  std::vector<long double> c(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) c[i] = static_cast<long double>(poly[i].get_d());
  long double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(c[i]));
  auto eval = [&](CLD z) {
    CLD v = 1;
    for (int i = n - 1; i >= 0; --i) v = v * z + c[i];
    return v;
  };
  auto eval_d = [&](CLD z) {
    CLD v = static_cast<long double>(n);
    for (int i = n - 1; i >= 1; --i) v = v * z + c[i] * static_cast<long double>(i);
    return v;
  };
  std::vector<CLD> z(n);
  const CLD seed(0.4L, 0.9L);
  CLD w = 1;
  for (int k = 0; k < n; ++k) {
    w *= seed;
    z[k] = w * (bound / 2);
  }
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (int k = 0; k < n; ++k) {
      CLD den = 1;
      for (int j = 0; j < n; ++j)
        if (j != k) den *= (z[k] - z[j]);
      CLD step = eval(z[k]) / den;
      z[k] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (change < 1e-18L) break;
  }
  for (auto& r : z)
    for (int i = 0; i < 4; ++i) {
      CLD d = eval_d(r);
      if (std::abs(d) == 0) break;
      r -= eval(r) / d;
    }
  return z;
}

// Exact division test: does the monic integer polynomial `f` divide `p`?
bool divides(const std::vector<Int>& f, const std::vector<Int>& p) {
  QPoly a(p.begin(), p.end()), m(f.begin(), f.end());
  return poly_mod(a, m).empty();
}

void check_irreducible(const std::vector<Int>& poly) {
  const int n = static_cast<int>(poly.size()) - 1;
  QPoly p(poly.begin(), poly.end());
  if (poly_gcd(p, derivative(p)).size() > 1) throw DomainError("polynomial is reducible (repeated factor)");
  if (n > 16) throw DomainError("degree too large for the irreducibility test (max 16)");
  auto roots = approximate_roots(poly);
  // Any monic factor over Z of degree k <= n/2 is a product of k roots.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int k = __builtin_popcount(mask);
    if (k > n / 2) continue;
    if (k * 2 == n && !(mask & 1u)) continue;
    std::vector<CLD> f{CLD(1)};
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<CLD> g(f.size() + 1, CLD(0));
      for (std::size_t j = 0; j < f.size(); ++j) {
        g[j + 1] += f[j];
        g[j] -= roots[i] * f[j];
      }
      f = std::move(g);
    }
    // f[j] is the coefficient of x^j.
    std::vector<Int> cand(f.size());
    bool near_integer = true;
    for (std::size_t j = 0; j < f.size(); ++j) {
      long double re = f[j].real(), im = f[j].imag();
      long double rounded = std::nearbyint(re);
      long double tol = 1e-6L * std::max(1.0L, std::fabs(re));
      if (std::fabs(im) > tol || std::fabs(re - rounded) > tol) {
        near_integer = false;
        break;
      }
      cand[j] = Int(std::to_string(static_cast<long long>(rounded)));
    }
    if (near_integer && divides(cand, poly)) throw DomainError("polynomial is reducible over Q");
  }
}

Int squarefree_part(Int d) {
  Int sign = d < 0 ? -1 : 1;
  d = abs(d);
  Int result = 1;
  for (Int p = 2; p * p <= d; ++p) {
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    if (e % 2) result *= p;
  }
  return sign * result * d;
}

struct PlaceData {
  std::vector<ComplexInterval> roots;
  // images[place][i] = sigma_place(b_i)
  std::vector<std::vector<ComplexInterval>> images;
};

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

struct NumberField::Data {
  std::vector<Int> poly;
  int n = 0;
  int r1 = 0;
  int r2 = 0;
  QMatrix basis;
  QMatrix basis_inv;
  std::vector<std::vector<FieldElement>> table;  // table[i][j] = b_i * b_j
  std::vector<Rat> basis_traces;
  QMatrix trace_form;
  Int disc;
  std::optional<Int> radicand;
  std::vector<CLD> approx;  // one approximate root per place, in place order

  mutable std::mutex mu;
  mutable std::map<Precision, std::shared_ptr<const PlaceData>> cache;

  std::shared_ptr<const PlaceData> places(Precision prec) const;
};

namespace {

ComplexInterval horner(const std::vector<Int>& poly, const ComplexInterval& z, Precision prec,
                       bool derivative_only) {
  const int n = static_cast<int>(poly.size()) - 1;
  ComplexInterval v{Interval(prec), Interval(prec)};
  for (int i = n; i >= (derivative_only ? 1 : 0); --i) {
    Int coeff = derivative_only ? poly[i] * i : poly[i];
    v = v * z;
    v.re += Interval(coeff, prec);
  }
  return v;
}

ComplexInterval point(CLD z, Precision prec) {
  return {Interval::from_double(static_cast<double>(z.real()), prec),
          Interval::from_double(static_cast<double>(z.imag()), prec)};
}

// Refines approximate roots by Newton steps and certifies isolating disks of
// radius n|p(z)|/|p'(z)|; each disk then holds exactly one root.
std::optional<std::vector<ComplexInterval>> certify_roots(const std::vector<Int>& poly,
                                                          const std::vector<CLD>& approx,
                                                          int r1, Precision prec) {
  const int n = static_cast<int>(poly.size()) - 1;
  const Precision work = prec + 32;
  int iterations = 4;
  for (Precision p = 48; p < work; p *= 2) ++iterations;

  std::vector<ComplexInterval> centers;
  std::vector<Interval> radii;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    const bool real = static_cast<int>(k) < r1;
    ComplexInterval z = point(approx[k], work);
    if (real) z.im = Interval(work);
    for (int it = 0; it < iterations; ++it) {
      ComplexInterval pz = horner(poly, z, work, false);
      ComplexInterval dz = horner(poly, z, work, true);
      Interval den = dz.abs_squared();
      if (den.contains_zero()) return std::nullopt;
      // step = p/p' = p * conj(p') / |p'|^2
      Interval sre = (pz.re * dz.re + pz.im * dz.im) / den;
      Interval sim = (pz.im * dz.re - pz.re * dz.im) / den;
      z.re = (z.re - sre).midpoint();
      z.im = real ? Interval(work) : (z.im - sim).midpoint();
    }
    ComplexInterval pz = horner(poly, z, work, false);
    ComplexInterval dz = horner(poly, z, work, true);
    Interval dabs = dz.abs();
    if (dabs.contains_zero()) return std::nullopt;
    Interval radius = (Interval(static_cast<long>(n), work) * pz.abs() / dabs).upper_point();
    centers.push_back(z);
    radii.push_back(radius);
  }

  // All n disks (including conjugates of the complex ones) must be disjoint.
  std::vector<ComplexInterval> all_c = centers;
  std::vector<Interval> all_r = radii;
  for (std::size_t k = static_cast<std::size_t>(r1); k < centers.size(); ++k) {
    all_c.push_back({centers[k].re, -centers[k].im});
    all_r.push_back(radii[k]);
  }
  if (static_cast<int>(all_c.size()) != n) return std::nullopt;
  for (std::size_t i = 0; i < all_c.size(); ++i)
    for (std::size_t j = i + 1; j < all_c.size(); ++j) {
      Interval gap = (all_c[i] - all_c[j]).abs() - all_r[i] - all_r[j];
      if (!gap.is_positive()) return std::nullopt;
    }

  std::vector<ComplexInterval> out;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const bool real = static_cast<int>(k) < r1;
    Interval re = centers[k].re.inflate(radii[k]);
    Interval im = real ? Interval(work) : centers[k].im.inflate(radii[k]);
    out.push_back({re, im});
  }
  return out;
}

}  // namespace

std::shared_ptr<const PlaceData> NumberField::Data::places(Precision prec) const {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(prec);
  if (it != cache.end()) return it->second;

  std::optional<std::vector<ComplexInterval>> roots;
  for (Precision p = prec; p <= kMaxPrecision * 2 && !roots; p *= 2)
    roots = certify_roots(poly, approx, r1, p);
  if (!roots) throw PrecisionExhausted("could not isolate the roots of the defining polynomial");

  auto data = std::make_shared<PlaceData>();
  data->roots = *roots;
  const std::size_t places = data->roots.size();
  data->images.assign(places, {});
  for (std::size_t s = 0; s < places; ++s) {
    const ComplexInterval& theta = data->roots[s];
    std::vector<ComplexInterval> powers;
    ComplexInterval pw{Interval(1L, prec), Interval(prec)};
    for (int k = 0; k < n; ++k) {
      powers.push_back(pw);
      pw = pw * theta;
    }
    for (int i = 0; i < n; ++i) {
      ComplexInterval acc{Interval(prec), Interval(prec)};
      for (int k = 0; k < n; ++k) {
        if (basis(i, k) == 0) continue;
        acc = acc + powers[k].scaled(Interval(basis(i, k), prec));
      }
      data->images[s].push_back(acc);
    }
  }
  cache.emplace(prec, data);
  return data;
}

NumberField NumberField::create(std::vector<Int> min_poly, std::optional<QMatrix> integral_basis) {
  if (min_poly.size() < 3) throw DomainError("defining polynomial must have degree >= 2");
  if (min_poly.back() != 1) throw DomainError("defining polynomial must be monic");
  check_irreducible(min_poly);

  auto d = std::make_shared<Data>();
  d->poly = std::move(min_poly);
  const int n = static_cast<int>(d->poly.size()) - 1;
  d->n = n;

  if (n == 2) {
    const Int& c = d->poly[0];
    const Int& b = d->poly[1];
    Int disc0 = b * b - 4 * c;
    Int sq = squarefree_part(disc0);
    d->radicand = sq;
    if (!integral_basis) {
      // sqrt(sq) = (2 theta + b) / f with disc0 = f^2 sq.
      Int f2 = disc0 / sq;
      Int f = sqrt(f2);
      QMatrix B(2, 2, Rat(0));
      B(0, 0) = 1;
      Int m4 = sq % 4;
      if (m4 < 0) m4 += 4;
      if (m4 == 1) {
        B(1, 0) = Rat(f + b, 2 * f);
        B(1, 1) = Rat(1, f);
      } else {
        B(1, 0) = Rat(b, f);
        B(1, 1) = Rat(2, f);
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) B(i, j).canonicalize();
      integral_basis = B;
    }
  }
  if (!integral_basis) integral_basis = QMatrix::identity(static_cast<std::size_t>(n));

  QMatrix& B = *integral_basis;
  if (static_cast<int>(B.rows()) != n || static_cast<int>(B.cols()) != n)
    throw DomainError("integral basis must be n x n");
  for (int k = 0; k < n; ++k)
    if (B(0, k) != (k == 0 ? 1 : 0)) throw DomainError("integral basis must start with b_1 = 1");
  auto inv = sred::inverse(B);
  if (!inv) throw DomainError("integral basis has zero determinant");
  d->basis = B;
  d->basis_inv = *inv;

  QPoly modulus(d->poly.begin(), d->poly.end());
  d->table.assign(n, std::vector<FieldElement>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QPoly a(n), b(n);
      for (int k = 0; k < n; ++k) {
        a[k] = B(i, k);
        b[k] = B(j, k);
      }
      QPoly prod = poly_mod(poly_mul(a, b), modulus);
      prod.resize(n, Rat(0));
      std::vector<Rat> coords(n, Rat(0));
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k) coords[c] += prod[k] * d->basis_inv(k, c);
      for (const auto& x : coords)
        if (x.get_den() != 1) throw DomainError("integral basis does not span a ring");
      d->table[i][j] = FieldElement(std::move(coords));
    }

  // Traces of basis elements from the multiplication matrices.
  d->basis_traces.assign(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d->basis_traces[i] += d->table[i][j].coords[j];
  d->trace_form = QMatrix(n, n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) d->trace_form(i, j) += d->table[i][j].coords[k] * d->basis_traces[k];
  Rat disc = determinant(d->trace_form);
  d->disc = disc.get_num();

  // Signature and place ordering from approximate roots.
  auto approx = approximate_roots(d->poly);
  std::vector<CLD> reals, complexes;
  for (auto z : approx) {
    long double scale = std::max(1.0L, std::abs(z));
    if (std::fabs(z.imag()) <= 1e-9L * scale)
      reals.emplace_back(z.real(), 0);
    else if (z.imag() > 0)
      complexes.push_back(z);
  }
  if (reals.size() + 2 * complexes.size() != static_cast<std::size_t>(n))
    throw PrecisionExhausted("root approximation failed to separate real and complex roots");
  std::sort(reals.begin(), reals.end(), [](CLD a, CLD b) { return a.real() > b.real(); });
  std::sort(complexes.begin(), complexes.end(), [](CLD a, CLD b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  d->r1 = static_cast<int>(reals.size());
  d->r2 = static_cast<int>(complexes.size());
  d->approx = reals;
  d->approx.insert(d->approx.end(), complexes.begin(), complexes.end());

  NumberField F(d);
  (void)F.roots(kDefaultPrecision);  // certify isolation up front
  return F;
}

int NumberField::degree() const { return d_->n; }
int NumberField::r1() const { return d_->r1; }
int NumberField::r2() const { return d_->r2; }

std::vector<int> NumberField::place_degrees() const {
  std::vector<int> degs;
  for (int i = 0; i < num_places(); ++i) degs.push_back(place_degree(i));
  return degs;
}

std::optional<Int> NumberField::quadratic_radicand() const { return d_->radicand; }
const std::vector<Int>& NumberField::min_poly() const { return d_->poly; }
const QMatrix& NumberField::basis() const { return d_->basis; }
const Int& NumberField::discriminant() const { return d_->disc; }
const QMatrix& NumberField::trace_form() const { return d_->trace_form; }

FieldElement NumberField::zero() const { return FieldElement(std::vector<Rat>(d_->n, Rat(0))); }

FieldElement NumberField::one() const { return from_rational(Rat(1)); }

FieldElement NumberField::from_rational(const Rat& q) const {
  FieldElement x = zero();
  x.coords[0] = q;
  return x;
}

FieldElement NumberField::element(std::vector<Rat> coords) const {
  if (static_cast<int>(coords.size()) != d_->n) throw DomainError("element has wrong number of coordinates");
  for (auto& c : coords) c.canonicalize();
  return FieldElement(std::move(coords));
}

FieldElement NumberField::basis_element(int i) const {
  FieldElement x = zero();
  x.coords.at(static_cast<std::size_t>(i)) = 1;
  return x;
}

FieldElement NumberField::from_power_basis(const std::vector<Rat>& p) const {
  const int n = d_->n;
  if (static_cast<int>(p.size()) != n) throw DomainError("power-basis vector has wrong length");
  std::vector<Rat> coords(n, Rat(0));
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) coords[c] += p[k] * d_->basis_inv(k, c);
  return FieldElement(std::move(coords));
}

std::vector<Rat> NumberField::to_power_basis(const FieldElement& x) const {
  const int n = d_->n;
  std::vector<Rat> p(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) p[k] += x.coords[i] * d_->basis(i, k);
  return p;
}

FieldElement NumberField::multiply(const FieldElement& a, const FieldElement& b) const {
  const int n = d_->n;
  FieldElement r = zero();
  for (int i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coords[j] == 0) continue;
      Rat s = a.coords[i] * b.coords[j];
      const auto& t = d_->table[i][j].coords;
      for (int k = 0; k < n; ++k)
        if (t[k] != 0) r.coords[k] += s * t[k];
    }
  }
  return r;
}

QMatrix NumberField::multiplication_matrix(const FieldElement& a) const {
  const int n = d_->n;
  QMatrix m(n, n, Rat(0));
  for (int j = 0; j < n; ++j) {
    FieldElement col = multiply(a, basis_element(j));
    m.set_column(j, col.coords);
  }
  return m;
}

FieldElement NumberField::inverse(const FieldElement& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  auto x = solve(multiplication_matrix(a), one().coords);
  if (!x) throw DomainError("inverse of zero");
  return FieldElement(std::move(*x));
}

FieldElement NumberField::power(const FieldElement& a, long k) const {
  FieldElement base = k < 0 ? inverse(a) : a;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  FieldElement r = one();
  while (e) {
    if (e & 1) r = multiply(r, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return r;
}

FieldElement NumberField::conjugate(const FieldElement& a) const {
  if (d_->n != 2) throw DomainError("conjugate is defined for quadratic fields only");
  auto p = to_power_basis(a);
  // theta -> -b - theta
  std::vector<Rat> q{p[0] - Rat(d_->poly[1]) * p[1], -p[1]};
  return from_power_basis(q);
}

Rat NumberField::norm(const FieldElement& a) const { return determinant(multiplication_matrix(a)); }

Rat NumberField::trace(const FieldElement& a) const {
  Rat t = 0;
  for (int i = 0; i < d_->n; ++i) t += a.coords[i] * d_->basis_traces[i];
  return t;
}

bool NumberField::is_integral(const FieldElement& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(), [](const Rat& c) { return c.get_den() == 1; });
}

std::shared_ptr<const std::vector<ComplexInterval>> NumberField::roots(Precision prec) const {
  auto p = d_->places(prec);
  return std::shared_ptr<const std::vector<ComplexInterval>>(p, &p->roots);
}

ComplexInterval NumberField::embed_at(const FieldElement& x, int place, Precision prec) const {
  auto data = d_->places(prec);
  const auto& img = data->images.at(static_cast<std::size_t>(place));
  const bool real = place < d_->r1;
  Interval re(prec), im(prec);
  for (int i = 0; i < d_->n; ++i) {
    if (x.coords[i] == 0) continue;
    Interval c(x.coords[i], prec);
    re += c * img[i].re;
    if (!real) im += c * img[i].im;
  }
  return {re, im};
}

std::vector<ComplexInterval> NumberField::embed_certified(const FieldElement& x, Precision prec) const {
  std::vector<ComplexInterval> out;
  for (int s = 0; s < num_places(); ++s) out.push_back(embed_at(x, s, prec));
  return out;
}

int NumberField::sign_at(const FieldElement& x, int place) const {
  if (place >= d_->r1) throw DomainError("sign_at requires a real place");
  if (x.is_zero()) return 0;
  for (Precision p = working_precision(); p <= kMaxPrecision; p *= 2) {
    Interval v = embed_at(x, place, p).re;
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  throw PrecisionExhausted("sign of a nonzero element undecided at maximum precision");
}

int NumberField::compare_abs_at(const FieldElement& a, const FieldElement& b, int place) const {
  if (place < d_->r1) {
    FieldElement h = multiply(a, a) - multiply(b, b);
    return sign_at(h, place);
  }
  if (d_->n == 2) {
    // |sigma(x)|^2 = N(x) in an imaginary quadratic field.
    Rat diff = norm(a) - norm(b);
    return diff > 0 ? 1 : (diff < 0 ? -1 : 0);
  }
  for (Precision p = working_precision(); p <= kTiePrecision; p *= 2) {
    Interval diff = embed_at(a, place, p).abs_squared() - embed_at(b, place, p).abs_squared();
    if (diff.is_positive()) return 1;
    if (diff.is_negative()) return -1;
  }
  return 0;
}

Interval NumberField::log_abs_at(const FieldElement& x, int place, Precision prec) const {
  if (x.is_zero()) throw DomainError("log of zero");
  for (Precision p = prec; p <= kMaxPrecision; p *= 2) {
    Interval a = embed_at(x, place, p).abs();
    if (a.is_positive() && a.is_tight(std::ldexp(1.0, -static_cast<int>(prec) / 2))) return a.log();
  }
  throw PrecisionExhausted("log |sigma(x)| undecided at maximum precision");
}

Interval NumberField::partial(Precision prec) const {
  Interval v = Interval(Int(abs(d_->disc)), prec).sqrt();
  for (int i = 0; i < d_->r2; ++i) v = v * Interval(2L, prec) / Interval::pi(prec);
  return v;
}

double partial_f(const NumberField& F) { return F.partial(kDefaultPrecision).mid(); }

ArchVector embed(const NumberField& F, const FieldElement& x) {
  std::vector<std::complex<double>> e;
  for (int s = 0; s < F.num_places(); ++s) {
    ComplexInterval v = F.embed_at(x, s, working_precision());
    e.emplace_back(v.re.mid(), v.im.mid());
  }
  return ArchVector(std::move(e), F.place_degrees());
}

std::pair<Rat, Rat> norm_trace(const NumberField& F, const FieldElement& x) {
  return {F.norm(x), F.trace(x)};
}

}  // namespace sred
