#include "sred/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace sred {

namespace {

bool is_zero_vec(const Coeffs& c) {
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

Coeffs negated(Coeffs c) {
  for (auto& x : c) x = -x;
  return c;
}

// Tie-break order on sign-normalized vectors.
bool tie_less(const Coeffs& a, const Coeffs& b) {
  Coeffs na = sign_normalized(a), nb = sign_normalized(b);
  return std::lexicographical_compare(na.begin(), na.end(), nb.begin(), nb.end());
}

}  // namespace

Coeffs sign_normalized(Coeffs c) {
  for (const auto& x : c) {
    if (x == 0) continue;
    if (x < 0) return negated(std::move(c));
    break;
  }
  return c;
}

// ---------------------------------------------------------------------------
// GramMatrix

GramMatrix GramMatrix::from_rational(QMatrix g) {
  if (g.rows() != g.cols()) throw DomainError("Gram matrix must be square");
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g(i, j) != g(j, i)) throw DomainError("Gram matrix must be symmetric");
  GramMatrix G;
  G.dim_ = g.rows();
  G.exact_ = std::move(g);
  G.fill_approx();
  return G;
}

GramMatrix GramMatrix::from_elements(const NumberField& F, std::vector<FieldElement> basis,
                                     std::vector<double> weights) {
  if (static_cast<int>(weights.size()) != F.num_places()) throw DomainError("one weight per place expected");
  for (double w : weights)
    if (!(w > 0) || !std::isfinite(w)) throw DomainError("weights must be positive and finite");
  GramMatrix G;
  G.dim_ = basis.size();
  const bool uniform = std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights[0]; });
  if (uniform && (F.is_totally_real() || F.is_quadratic())) {
    Rat w2 = Rat(weights[0]) * Rat(weights[0]);
    QMatrix e(G.dim_, G.dim_);
    for (std::size_t i = 0; i < G.dim_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        FieldElement other = F.is_totally_real() ? basis[j] : F.conjugate(basis[j]);
        e(i, j) = w2 * F.trace(F.multiply(basis[i], other));
        e(j, i) = e(i, j);
      }
    G.exact_ = std::move(e);
  }
  G.source_ = LatticeSource{F, std::move(basis), std::move(weights)};
  G.fill_approx();
  return G;
}

void GramMatrix::fill_approx() {
  IntervalMatrix c = certified(kDefaultPrecision);
  approx_.assign(dim_, std::vector<double>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) approx_[i][j] = c[i][j].mid();
}

IntervalMatrix GramMatrix::certified(Precision prec) const {
  IntervalMatrix m(dim_, std::vector<Interval>(dim_, Interval(prec)));
  if (exact_) {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m[i][j] = Interval((*exact_)(i, j), prec);
    return m;
  }
  const LatticeSource& s = *source_;
  const NumberField& F = s.field;
  std::vector<std::vector<ComplexInterval>> emb;
  for (const auto& b : s.basis) emb.push_back(F.embed_certified(b, prec));
  for (int p = 0; p < F.num_places(); ++p) {
    Interval w = Interval(Rat(s.weights[p]), prec).square();
    if (F.place_degree(p) == 2) w *= Interval(2L, prec);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const auto& a = emb[i][p];
        const auto& b = emb[j][p];
        Interval re = a.re * b.re + a.im * b.im;
        m[i][j] += w * re;
      }
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < i; ++j) m[j][i] = m[i][j];
  return m;
}

GramMatrix GramMatrix::transformed(const ZMatrix& U) const {
  if (U.rows() != dim_) throw DomainError("transform has the wrong size");
  GramMatrix G;
  G.dim_ = U.cols();
  if (exact_) {
    QMatrix q = to_rational(U);
    G.exact_ = q.transposed() * (*exact_) * q;
  }
  if (source_) {
    LatticeSource s = *source_;
    std::vector<FieldElement> nb;
    for (std::size_t j = 0; j < U.cols(); ++j) {
      FieldElement x = s.field.zero();
      for (std::size_t i = 0; i < dim_; ++i)
        if (U(i, j) != 0) x += Rat(U(i, j)) * source_->basis[i];
      nb.push_back(std::move(x));
    }
    s.basis = std::move(nb);
    G.source_ = std::move(s);
  }
  G.fill_approx();
  return G;
}

FieldElement GramMatrix::element(const Coeffs& c) const {
  if (!source_) throw DomainError("Gram matrix has no field source");
  FieldElement x = source_->field.zero();
  for (std::size_t i = 0; i < dim_; ++i)
    if (c[i] != 0) x += Rat(c[i]) * source_->basis[i];
  return x;
}

std::optional<Rat> GramMatrix::exact_form(const Coeffs& c) const {
  if (!exact_) return std::nullopt;
  Rat s = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (c[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < dim_; ++j)
      if (c[j] != 0) row += (*exact_)(i, j) * c[j];
    s += row * c[i];
  }
  return s;
}

Interval GramMatrix::form(const Coeffs& c, Precision prec) const {
  if (exact_) return Interval(*exact_form(c), prec);
  const LatticeSource& s = *source_;
  FieldElement x = element(c);
  Interval total(prec);
  for (int p = 0; p < s.field.num_places(); ++p) {
    Interval w = Interval(Rat(s.weights[p]), prec).square();
    if (s.field.place_degree(p) == 2) w *= Interval(2L, prec);
    total += w * s.field.embed_at(x, p, prec).abs_squared();
  }
  return total;
}

double GramMatrix::approx_form(const Coeffs& c) const {
  double s = 0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += approx_[i][j] * c[i].get_d() * c[j].get_d();
  return s;
}

int GramMatrix::compare(const Coeffs& a, const Coeffs& b) const {
  if (a == b || a == negated(b)) return 0;
  if (exact_) {
    Rat d = *exact_form(a) - *exact_form(b);
    return sgn(d);
  }
  for (Precision p = working_precision(); p <= kTiePrecision; p *= 2) {
    Interval d = form(a, p) - form(b, p);
    if (d.is_positive()) return 1;
    if (d.is_negative()) return -1;
  }
  return 0;
}

int GramMatrix::compare_to(const Coeffs& c, const Rat& t) const {
  if (exact_) return sgn(*exact_form(c) - t);
  for (Precision p = working_precision(); p <= kTiePrecision; p *= 2) {
    Interval d = form(c, p) - Interval(t, p);
    if (d.is_positive()) return 1;
    if (d.is_negative()) return -1;
  }
  return 0;
}

Interval GramMatrix::determinant(Precision prec) const {
  if (exact_) return Interval(sred::determinant(*exact_), prec);
  IntervalMatrix m = certified(prec);
  Interval det(1L, prec);
  for (std::size_t k = 0; k < dim_; ++k) {
    det *= m[k][k];
    for (std::size_t i = k + 1; i < dim_; ++i) {
      Interval f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < dim_; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

GramMatrix gram_of(const ZModule& L, const ArchVector& u) {
  if (static_cast<int>(u.size()) != L.field().num_places()) throw DomainError("u has the wrong number of places");
  if (!u.is_positive_real()) throw DomainError("u must be strictly positive");
  return GramMatrix::from_elements(L.field(), L.basis(), u.magnitudes());
}

GramMatrix gram_of(const ZModule& L) {
  return gram_of(L, ArchVector::uniform(1.0, L.field().place_degrees()));
}

// ---------------------------------------------------------------------------
// LLL

LllResult lll_reduce(const GramMatrix& G) {
  const std::size_t n = G.dim();
  QMatrix g(n, n);
  if (G.exact()) {
    g = *G.exact();
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = Rat(G.approx()[std::min(i, j)][std::max(i, j)]);
  }
  ZMatrix U = ZMatrix::identity(n);
  const Rat delta(99, 100);

  auto col_op = [&](std::size_t k, std::size_t j, const Int& q) {
    // b_k -= q b_j
    for (std::size_t i = 0; i < n; ++i) U(i, k) -= q * U(i, j);
    for (std::size_t i = 0; i < n; ++i) g(i, k) -= q * g(i, j);
    for (std::size_t i = 0; i < n; ++i) g(k, i) -= q * g(j, i);
  };
  auto swap_op = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) std::swap(U(i, a), U(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(g(a, i), g(b, i));
  };

  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
  std::vector<Rat> B(n);
  auto gram_schmidt = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = g(i, j);
        for (std::size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * B[l];
        mu[i][j] = s / B[j];
      }
      Rat s = g(i, i);
      for (std::size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * B[l];
      if (s <= 0) throw DomainError("Gram matrix is not positive definite");
      B[i] = s;
    }
  };

  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1'000'000) throw LimitExceeded("LLL did not terminate");
    gram_schmidt();
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = round_rat(mu[k][jj]);
      if (q == 0) continue;
      col_op(k, jj, q);
      for (std::size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
      mu[k][jj] -= q;
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      swap_op(k, k - 1);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return LllResult{U, G.transformed(U)};
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::vector<std::int64_t>> fincke_pohst(const std::vector<std::vector<double>>& G,
                                                     double radius_sq,
                                                     const std::vector<double>& center,
                                                     std::size_t limit) {
  using LD = long double;
  const std::size_t n = G.size();
  std::vector<std::vector<LD>> q(n, std::vector<LD>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = G[i][j];
  for (std::size_t i = 0; i < n; ++i) {
    if (!(q[i][i] > 0)) throw DomainError("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(n, 0);
  std::function<void(std::size_t, LD)> rec = [&](std::size_t level, LD remaining) {
    const std::size_t i = level - 1;
    LD s = 0;
    for (std::size_t j = i + 1; j < n; ++j) s += q[i][j] * (static_cast<LD>(x[j]) - center[j]);
    LD c = static_cast<LD>(center[i]) - s;
    LD r = std::sqrt(std::max<LD>(remaining, 0) / q[i][i]);
    LD lo = std::ceil(c - r), hi = std::floor(c + r);
    if (hi - lo > 1e12L) throw LimitExceeded("enumeration interval too wide");
    for (LD v = lo; v <= hi; v += 1) {
      LD t = q[i][i] * (v - c) * (v - c);
      if (t > remaining) continue;
      x[i] = static_cast<std::int64_t>(v);
      if (i == 0) {
        out.push_back(x);
        if (out.size() > limit) throw LimitExceeded("enumeration produced too many lattice points");
      } else {
        rec(i, remaining - t);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(n, static_cast<LD>(radius_sq));
  return out;
}

namespace {

Coeffs to_input_basis(const ZMatrix& U, const std::vector<std::int64_t>& x) {
  Coeffs c(U.rows(), Int(0));
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j)
      if (x[j] != 0) c[i] += U(i, j) * Int(static_cast<long>(x[j]));
  return c;
}

constexpr double kRadiusSlack = 1e-9;

}  // namespace

std::vector<Coeffs> enumerate_ellipsoid(const GramMatrix& G, double radius_sq) {
  LllResult red = lll_reduce(G);
  double r = radius_sq * (1 + kRadiusSlack) + 1e-300;
  auto pts = fincke_pohst(red.reduced.approx(), r, std::vector<double>(G.dim(), 0.0), kEnumerationLimit);
  std::vector<Coeffs> out;
  for (const auto& x : pts) {
    Coeffs c = to_input_basis(red.transform, x);
    if (!is_zero_vec(c)) out.push_back(std::move(c));
  }
  return out;
}

ShortVector shortest_vector(const GramMatrix& G) {
  const std::size_t n = G.dim();
  LllResult red = lll_reduce(G);
  double r = red.reduced.approx()[0][0] * (1 + kRadiusSlack) + 1e-300;
  auto pts = fincke_pohst(red.reduced.approx(), r, std::vector<double>(n, 0.0), kEnumerationLimit);

  std::vector<std::pair<double, Coeffs>> cands;
  double best_approx = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    Coeffs c = to_input_basis(red.transform, x);
    if (is_zero_vec(c)) continue;
    c = sign_normalized(std::move(c));
    if (std::find_if(cands.begin(), cands.end(), [&](const auto& e) { return e.second == c; }) != cands.end())
      continue;
    double a = G.approx_form(c);
    best_approx = std::min(best_approx, a);
    cands.emplace_back(a, std::move(c));
  }
  if (cands.empty()) throw std::logic_error("shortest_vector: enumeration returned no vector");

  const Coeffs* best = nullptr;
  for (const auto& [a, c] : cands) {
    if (a > best_approx * (1 + 1e-7) + 1e-300) continue;
    if (!best) {
      best = &c;
      continue;
    }
    int cmp = G.compare(c, *best);
    if (cmp < 0 || (cmp == 0 && tie_less(c, *best))) best = &c;
  }
  ShortVector sv;
  sv.coeffs = *best;
  if (G.source()) sv.element = G.element(sv.coeffs);
  if (auto e = G.exact_form(sv.coeffs))
    sv.length = std::sqrt(e->get_d());
  else
    sv.length = std::sqrt(G.form(sv.coeffs, kDefaultPrecision).mid());
  return sv;
}

// ---------------------------------------------------------------------------
// Boxes and minimality

std::vector<FieldElement> enumerate_box(const ZModule& L, const ArchVector& u,
                                        const std::vector<double>& bounds, bool strict) {
  const NumberField& F = L.field();
  const int places = F.num_places();
  if (static_cast<int>(bounds.size()) != places || static_cast<int>(u.size()) != places)
    throw DomainError("one bound per place expected");
  auto mags = u.magnitudes();
  std::vector<double> w(places);
  for (int p = 0; p < places; ++p) {
    if (!(bounds[p] > 0)) throw DomainError("box bounds must be positive");
    w[p] = mags[p] / bounds[p];
  }
  GramMatrix G = GramMatrix::from_elements(F, L.basis(), w);
  std::vector<FieldElement> out;
  for (const auto& c : enumerate_ellipsoid(G, static_cast<double>(F.degree()))) {
    FieldElement g = L.combination(c);
    bool keep = true;
    for (int p = 0; p < places && keep; ++p) {
      int sign = 0;
      for (Precision prec = working_precision(); prec <= kTiePrecision; prec *= 2) {
        Interval d = Interval(Rat(mags[p]), prec) * F.embed_at(g, p, prec).abs() - Interval(Rat(bounds[p]), prec);
        if (d.is_positive()) {
          sign = 1;
          break;
        }
        if (d.is_negative()) {
          sign = -1;
          break;
        }
      }
      keep = strict ? sign < 0 : sign <= 0;
    }
    if (keep) out.push_back(std::move(g));
  }
  return out;
}

std::vector<FieldElement> box_below(const ZModule& L, const FieldElement& f) {
  const NumberField& F = L.field();
  if (f.is_zero()) throw DomainError("box around zero is empty");
  std::vector<double> w;
  for (int p = 0; p < F.num_places(); ++p) {
    ComplexInterval z = F.embed_at(f, p, kDefaultPrecision);
    w.push_back(1.0 / z.abs().mid());
  }
  GramMatrix G = GramMatrix::from_elements(F, L.basis(), w);
  std::vector<FieldElement> out;
  for (const auto& c : enumerate_ellipsoid(G, static_cast<double>(F.degree()))) {
    FieldElement g = L.combination(c);
    bool below = true;
    for (int p = 0; p < F.num_places() && below; ++p) below = F.compare_abs_at(g, f, p) < 0;
    if (below) out.push_back(std::move(g));
  }
  return out;
}

bool is_minimal(const ZModule& L, const FieldElement& f) {
  if (f.is_zero()) throw DomainError("zero is never minimal");
  if (!L.contains(f)) throw DomainError("element is not in the lattice");
  return box_below(L, f).empty();
}

FieldElement smallest_in(const ZModule& L, const ArchVector& u, const std::vector<FieldElement>& candidates) {
  if (candidates.empty()) throw DomainError("no candidates");
  GramMatrix G = gram_of(L, u);
  std::vector<Coeffs> cs;
  for (const auto& g : candidates) {
    auto c = L.coordinates(g);
    if (!c) throw DomainError("candidate is not in the lattice");
    cs.push_back(*c);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    int cmp = G.compare(cs[i], cs[best]);
    if (cmp < 0 || (cmp == 0 && tie_less(cs[i], cs[best]))) best = i;
  }
  return L.combination(sign_normalized(cs[best]));
}

FieldElement minimal_element_bounded(const FractionalIdeal& I, const ArchVector& u) {
  const NumberField& F = I.field();
  const int n = F.degree();
  double deg = -log_abs(I.norm());
  auto mags = u.magnitudes();
  for (int p = 0; p < F.num_places(); ++p) deg -= F.place_degree(p) * std::log(mags[p]);
  if (std::fabs(deg) > 1e-9) throw DomainError("divisor must have degree zero");

  double b = std::pow(partial_f(F), 1.0 / n);
  auto box = enumerate_box(I, u, std::vector<double>(F.num_places(), b), false);
  if (box.empty()) throw std::logic_error("Minkowski box is empty");
  FieldElement f = smallest_in(I, u, box);
  for (;;) {
    auto below = box_below(I, f);
    if (below.empty()) return f;
    f = smallest_in(I, u, below);
  }
}

}  // namespace sred
