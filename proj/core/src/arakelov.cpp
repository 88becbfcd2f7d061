#include "sred/arakelov.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sred {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Exact value of "3", "-2", "3/2", "1.25".
Rat parse_rational(const std::string& s) {
  if (s.empty()) throw DomainError("empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat a = parse_rational(s.substr(0, slash));
    Rat b = parse_rational(s.substr(slash + 1));
    if (b == 0) throw DomainError("division by zero in '" + s + "'");
    return a / b;
  }
  auto dot = s.find('.');
  std::string digits = s;
  Int scale = 1;
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    digits = s.substr(0, dot) + frac;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  }
  if (digits.empty() || digits == "-" || digits == "+") throw DomainError("malformed number '" + s + "'");
  std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  for (std::size_t i = start; i < digits.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw DomainError("malformed number '" + s + "'");
  if (digits[0] == '+') digits.erase(0, 1);
  Rat r(Int(digits), scale);
  r.canonicalize();
  return r;
}

}  // namespace

ReductionConstant::ReductionConstant(Rat c2, std::string text) : c2_(std::move(c2)), text_(std::move(text)) {
  c2_.canonicalize();
  if (c2_ < 1) throw DomainError("C must be at least 1 (got " + text_ + ")");
}

ReductionConstant ReductionConstant::parse(const std::string& raw) {
  std::string s = strip(raw);
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower.rfind("sqrt(", 0) == 0 && lower.back() == ')')
    return ReductionConstant(parse_rational(s.substr(5, s.size() - 6)), raw);
  if (lower.size() > 6 && lower.substr(lower.size() - 6) == "^(1/2)") {
    std::string base = s.substr(0, s.size() - 6);
    if (base.size() >= 2 && base.front() == '(' && base.back() == ')') base = base.substr(1, base.size() - 2);
    return ReductionConstant(parse_rational(base), raw);
  }
  Rat c = parse_rational(s);
  if (c < 0) throw DomainError("C must be positive");
  return ReductionConstant(c * c, raw);
}

ReductionConstant ReductionConstant::from_square(Rat c_squared) {
  std::string t = "sqrt(" + c_squared.get_str() + ")";
  return ReductionConstant(std::move(c_squared), t);
}

ReductionConstant ReductionConstant::from_double(double c) {
  if (!(c > 0)) throw DomainError("C must be positive");
  Rat q(c);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return ReductionConstant(q * q, buf);
}

double ReductionConstant::value() const { return std::sqrt(c2_.get_d()); }
double ReductionConstant::log_value() const { return 0.5 * log_abs(c2_); }

// ---------------------------------------------------------------------------

ArakelovDivisor::ArakelovDivisor(FractionalIdeal ideal, ArchVector u) : ideal_(std::move(ideal)), u_(std::move(u)) {
  if (static_cast<int>(u_.size()) != ideal_.field().num_places()) throw DomainError("u needs one entry per place");
  if (!u_.is_positive_real()) throw DomainError("u must be positive");
}

double ArakelovDivisor::degree() const {
  double d = -log_abs(ideal_.norm());
  auto m = u_.magnitudes();
  for (std::size_t i = 0; i < m.size(); ++i) d -= u_.degrees()[i] * std::log(m[i]);
  return d;
}

ArakelovDivisor divisor_d(const FractionalIdeal& I) {
  const NumberField& F = I.field();
  double value = std::exp(-log_abs(I.norm()) / F.degree());
  return ArakelovDivisor(I, ArchVector::uniform(value, F.place_degrees()));
}

ArakelovDivisor principal_divisor(const NumberField& F, const FieldElement& f) {
  if (f.is_zero()) throw DomainError("principal divisor of zero");
  FractionalIdeal I = FractionalIdeal::principal(F, F.inverse(f));
  return ArakelovDivisor(I, ArchVector::positive(embed(F, f).magnitudes(), F.place_degrees()));
}

ArakelovDivisor add(const ArakelovDivisor& a, const ArakelovDivisor& b) {
  return ArakelovDivisor(a.ideal() * b.ideal(), a.u() * b.u());
}

ArakelovDivisor negate(const ArakelovDivisor& a) { return ArakelovDivisor(a.ideal().inverse(), a.u().reciprocal()); }

CovolumeCheck covolume_check(const ArakelovDivisor& D) {
  const NumberField& F = D.field();
  CovolumeCheck c;
  c.from_gram = gram_of(D.ideal(), D.u()).determinant(kDefaultPrecision).sqrt().mid();
  c.from_formula = std::sqrt(std::fabs(F.discriminant().get_d())) * std::exp(-D.degree());
  return c;
}

// ---------------------------------------------------------------------------

ReducedCertificate check_strongly_c_reduced(const ZModule& L, const ReductionConstant& C) {
  ReducedCertificate cert;
  const int n = L.degree();
  cert.rational_index = rational_index(L);
  cert.contains_one = cert.rational_index != 0;
  GramMatrix G = gram_of(L);
  cert.shortest = shortest_vector(G);
  cert.margin_sign = G.compare_to(cert.shortest.coeffs, Rat(n) / C.squared());
  if (!cert.contains_one) {
    cert.reason = "1 is not in the lattice";
  } else if (cert.rational_index != 1) {
    cert.reason = "1 is divisible by " + cert.rational_index.get_str() + " in the lattice";
  } else if (cert.margin_sign < 0) {
    cert.reason = "shortest vector is shorter than sqrt(n)/C";
  } else {
    cert.reduced = true;
    cert.reason = cert.margin_sign == 0 ? "reduced (boundary equality)" : "reduced";
  }
  return cert;
}

bool is_strongly_c_reduced(const ZModule& L, const ReductionConstant& C) {
  return check_strongly_c_reduced(L, C).reduced;
}

bool is_reduced_usual(const ZModule& L) {
  const FieldElement one = L.field().one();
  return L.contains(one) && is_minimal(L, one);
}

Rat lll_jump_constant_squared(int n) {
  // (2^{(n-1)/2} sqrt n)^2 = 2^{n-1} n
  Int p = 1;
  for (int i = 1; i < n; ++i) p *= 2;
  return Rat(p * n);
}

LllJump lll_jump(const FractionalIdeal& I) {
  const NumberField& F = I.field();
  LllResult red = lll_reduce(gram_of(I));
  Coeffs first = red.transform.column(0);
  FieldElement b1 = I.combination(first);
  FractionalIdeal J = I.times(F.inverse(b1));
  LllJump out{b1, J, one_is_primitive(J), std::nullopt, {}};
  if (out.primitive)
    out.divisor = divisor_d(J);
  else
    out.diagnostic = "1 is not primitive in b1^{-1} I (rational index " + rational_index(J).get_str() + ")";
  return out;
}

// ---------------------------------------------------------------------------

double reduction_distance_bound(const NumberField& F, const ReductionConstant& C) {
  const int n = F.degree();
  const double log_partial = std::log(partial_f(F));
  if (C.squared() >= n) return log_partial;
  if (C.squared() == 1) return std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(n)) / (2 * C.log_value()) * log_partial;
}

double reduction_step_bound(const NumberField& F, const ReductionConstant& C) {
  if (C.squared() == 1) return std::numeric_limits<double>::infinity();
  return std::log(partial_f(F)) / (F.degree() * C.log_value());
}

ReductionResult reduce(const ArakelovDivisor& D, const ReductionConstant& C) {
  const NumberField& F = D.field();
  const int n = F.degree();
  if (std::fabs(D.degree()) > kDegreeTolerance) throw DomainError("reduce needs a divisor of degree 0");

  FieldElement f = minimal_element_bounded(D.ideal(), D.u());
  FractionalIdeal J = D.ideal().times(F.inverse(f));
  ReductionTrace trace{f, J, {}, 0, f, {}, {}, false,
                       reduction_distance_bound(F, C), reduction_step_bound(F, C)};
  trace.distance_guaranteed = std::isfinite(trace.distance_bound);

  const Rat threshold = Rat(n) / C.squared();
  const std::size_t cap = static_cast<std::size_t>(std::ceil(10 * partial_f(F)));
  for (;;) {
    GramMatrix G = gram_of(J);
    ShortVector sv = shortest_vector(G);
    if (G.compare_to(sv.coeffs, threshold) >= 0) break;
    if (trace.steps.size() >= cap) throw std::logic_error("reduction exceeded its iteration cap");
    const FieldElement& fj = *sv.element;
    J = J.times(F.inverse(fj));
    trace.accumulated = F.multiply(trace.accumulated, fj);
    trace.steps.push_back({fj, J, sv.length});
  }
  trace.k = trace.steps.size();

  const double log_norm_j = log_abs(J.norm()) / n;
  auto mags = D.u().magnitudes();
  std::vector<double> logs;
  for (int p = 0; p < F.num_places(); ++p)
    logs.push_back(std::log(mags[p]) + log_norm_j + F.log_abs_at(trace.accumulated, p, kDefaultPrecision).mid());
  trace.log_v = LogVector(logs, F.place_degrees());
  trace.v = trace.log_v.exp();
  return ReductionResult{divisor_d(J), std::move(trace)};
}

}  // namespace sred
