#include "sred/ideals.hpp"

#include <algorithm>
#include <functional>

namespace sred {

ZModule::ZModule(NumberField F, Int den, ZMatrix hnf)
    : field_(std::move(F)), den_(std::move(den)), hnf_(std::move(hnf)) {}

ZModule ZModule::from_columns(const NumberField& F, const QMatrix& cols) {
  const std::size_t n = static_cast<std::size_t>(F.degree());
  if (cols.rows() != n) throw DomainError("module generators have the wrong dimension");
  Int den = 1;
  for (std::size_t i = 0; i < cols.rows(); ++i)
    for (std::size_t j = 0; j < cols.cols(); ++j) {
      Int d = cols(i, j).get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  ZMatrix z(cols.rows(), cols.cols());
  for (std::size_t i = 0; i < cols.rows(); ++i)
    for (std::size_t j = 0; j < cols.cols(); ++j) {
      Rat v = cols(i, j) * den;
      z(i, j) = v.get_num();
    }
  ZMatrix h = hermite_normal_form(z);
  Int g = den;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h(i, j).get_mpz_t());
  if (g != 1) {
    den /= g;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) /= g;
  }
  return ZModule(F, den, std::move(h));
}

ZModule ZModule::span(const NumberField& F, const std::vector<FieldElement>& gens) {
  const std::size_t n = static_cast<std::size_t>(F.degree());
  if (gens.empty()) throw DomainError("module needs at least one generator");
  QMatrix cols(n, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].dimension() != n) throw DomainError("generator has the wrong dimension");
    cols.set_column(j, gens[j].coords);
  }
  return from_columns(F, cols);
}

std::vector<FieldElement> ZModule::basis() const {
  std::vector<FieldElement> b;
  for (int j = 0; j < degree(); ++j) b.push_back(basis_vector(j));
  return b;
}

FieldElement ZModule::basis_vector(int j) const {
  std::vector<Rat> c(static_cast<std::size_t>(degree()));
  for (int i = 0; i < degree(); ++i) {
    c[i] = Rat(hnf_(i, j), den_);
    c[i].canonicalize();
  }
  return FieldElement(std::move(c));
}

QMatrix ZModule::basis_matrix() const {
  QMatrix m = to_rational(hnf_);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) /= den_;
      m(i, j).canonicalize();
    }
  return m;
}

std::optional<std::vector<Int>> ZModule::coordinates(const FieldElement& x) const {
  const int n = degree();
  if (static_cast<int>(x.dimension()) != n) throw DomainError("element has the wrong dimension");
  // Back substitution on the upper-triangular hnf against den * x.
  std::vector<Rat> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = x.coords[i] * den_;
  std::vector<Int> c(n);
  for (int i = n - 1; i >= 0; --i) {
    Rat v = rhs[i];
    for (int j = i + 1; j < n; ++j) v -= Rat(hnf_(i, j) * c[j]);
    v /= Rat(hnf_(i, i));
    v.canonicalize();
    if (v.get_den() != 1) return std::nullopt;
    c[i] = v.get_num();
  }
  return c;
}

FieldElement ZModule::combination(const std::vector<Int>& coeffs) const {
  const int n = degree();
  std::vector<Rat> c(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    Int s = 0;
    for (int j = i; j < n; ++j) s += hnf_(i, j) * coeffs.at(j);
    c[i] = Rat(s, den_);
    c[i].canonicalize();
  }
  return FieldElement(std::move(c));
}

Rat ZModule::index() const {
  Int num = 1;
  for (int i = 0; i < degree(); ++i) num *= hnf_(i, i);
  Int d = 1;
  for (int i = 0; i < degree(); ++i) d *= den_;
  Rat r(num, d);
  r.canonicalize();
  return r;
}

Rat ZModule::rational_generator() const {
  Rat r(hnf_(0, 0), den_);
  r.canonicalize();
  return r;
}

ZModule ZModule::scaled(const FieldElement& f) const {
  if (f.is_zero()) throw DomainError("cannot scale a module by zero");
  std::vector<FieldElement> gens;
  for (const auto& b : basis()) gens.push_back(field_.multiply(f, b));
  return span(field_, gens);
}

bool lex_less(const ZModule& a, const ZModule& b) {
  if (a.den_ != b.den_) return a.den_ < b.den_;
  const std::size_t n = a.hnf_.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.hnf_(i, j) != b.hnf_(i, j)) return a.hnf_(i, j) < b.hnf_(i, j);
  return false;
}

bool is_closed_under_order(const ZModule& m) {
  const NumberField& F = m.field();
  auto basis = m.basis();
  for (int i = 1; i < F.degree(); ++i) {
    FieldElement bi = F.basis_element(i);
    for (const auto& v : basis)
      if (!m.contains(F.multiply(bi, v))) return false;
  }
  return true;
}

FractionalIdeal::FractionalIdeal(ZModule m) : ZModule(std::move(m)) {
  if (!is_closed_under_order(*this)) throw DomainError("module is not closed under the order");
}

FractionalIdeal FractionalIdeal::unit(const NumberField& F) {
  return FractionalIdeal(ZModule::from_columns(F, QMatrix::identity(static_cast<std::size_t>(F.degree()))));
}

FractionalIdeal FractionalIdeal::principal(const NumberField& F, const FieldElement& f) {
  return ideal_from_generators(F, {f});
}

bool FractionalIdeal::is_integral() const { return den() == 1; }

FractionalIdeal FractionalIdeal::operator*(const FractionalIdeal& o) const {
  if (!(field() == o.field())) throw DomainError("ideals from different fields");
  std::vector<FieldElement> gens;
  auto a = basis(), b = o.basis();
  for (const auto& x : a)
    for (const auto& y : b) gens.push_back(field().multiply(x, y));
  return FractionalIdeal(span(field(), gens));
}

namespace {

// Trace dual {x : Tr(x L) in Z} of the lattice with basis columns M.
QMatrix dual_basis(const NumberField& F, const QMatrix& M) {
  QMatrix t = M.transposed() * F.trace_form();
  auto inv = inverse(t);
  if (!inv) throw DomainError("degenerate lattice");
  return *inv;
}

}  // namespace

FractionalIdeal FractionalIdeal::inverse() const {
  const NumberField& F = field();
  const std::size_t n = static_cast<std::size_t>(F.degree());
  ZModule codifferent = from_columns(F, dual_basis(F, QMatrix::identity(n)));
  std::vector<FieldElement> gens;
  for (const auto& x : basis())
    for (const auto& y : codifferent.basis()) gens.push_back(F.multiply(x, y));
  ZModule prod = span(F, gens);
  return FractionalIdeal(from_columns(F, dual_basis(F, prod.basis_matrix())));
}

FractionalIdeal FractionalIdeal::times(const FieldElement& f) const { return FractionalIdeal(scaled(f)); }

FractionalIdeal FractionalIdeal::conjugate() const {
  std::vector<FieldElement> gens;
  for (const auto& b : basis()) gens.push_back(field().conjugate(b));
  return FractionalIdeal(span(field(), gens));
}

FractionalIdeal ideal_from_generators(const NumberField& F, const std::vector<FieldElement>& gens) {
  std::vector<FieldElement> all;
  for (const auto& g : gens)
    for (int i = 0; i < F.degree(); ++i) all.push_back(F.multiply(g, F.basis_element(i)));
  bool nonzero = std::any_of(gens.begin(), gens.end(), [](const FieldElement& g) { return !g.is_zero(); });
  if (!nonzero) throw DomainError("all generators are zero");
  return FractionalIdeal(ZModule::span(F, all));
}

Int rational_index(const ZModule& m) {
  // M intersect Q = (h / den) Z; 1 lies in it iff h divides den.
  const Int& h = m.hnf()(0, 0);
  if (m.den() % h != 0) return 0;
  return m.den() / h;
}

bool one_is_primitive(const ZModule& m) { return rational_index(m) == 1; }

std::vector<FractionalIdeal> enumerate_integral_ideals(const NumberField& F, const Rat& bound) {
  if (bound < 1) return {};
  const int n = F.degree();
  const Int limit = floor_rat(bound);

  // Pivot tuples (h_00, ..., h_{n-1,n-1}) with product <= limit and every
  // h_ii dividing h_00 (h_00 b_i lies in the ideal).
  std::vector<std::vector<Int>> tuples;
  std::size_t candidates = 0;
  std::vector<Int> cur(n);
  std::function<void(int, Int)> rec = [&](int i, Int prod) {
    if (i == n) {
      Int count = 1;
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < n - 1 - r; ++k) count *= cur[r];
      candidates += count.get_ui();
      if (candidates > kMaxEnumeratedCandidates)
        throw LimitExceeded("ideal enumeration bound too large: " + limit.get_str() + " exceeds the candidate limit");
      tuples.push_back(cur);
      return;
    }
    for (Int p = 1; prod * p <= limit; ++p) {
      if (i > 0 && cur[0] % p != 0) continue;
      cur[i] = p;
      rec(i + 1, prod * p);
    }
  };
  rec(0, Int(1));

  std::vector<FractionalIdeal> out;
  for (const auto& piv : tuples) {
    // Free entries: rows r < column c, each in [0, piv[r]).
    std::vector<std::pair<int, int>> slots;
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < c; ++r) slots.emplace_back(r, c);
    ZMatrix h(n, n, Int(0));
    for (int i = 0; i < n; ++i) h(i, i) = piv[i];
    std::function<void(std::size_t)> fill = [&](std::size_t s) {
      if (s == slots.size()) {
        QMatrix cols = to_rational(h);
        ZModule m = ZModule::from_columns(F, cols);
        if (is_closed_under_order(m)) out.emplace_back(std::move(m));
        return;
      }
      auto [r, c] = slots[s];
      for (Int v = 0; v < piv[r]; ++v) {
        h(r, c) = v;
        fill(s + 1);
      }
      h(r, c) = 0;
    };
    fill(0);
  }
  std::sort(out.begin(), out.end(), [](const FractionalIdeal& a, const FractionalIdeal& b) {
    Rat na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    return lex_less(a, b);
  });
  return out;
}

std::vector<FractionalIdeal> enumerate_integral_ideals(const NumberField& F, double bound) {
  if (!(bound >= 1)) return {};
  return enumerate_integral_ideals(F, Rat(bound));
}

}  // namespace sred
