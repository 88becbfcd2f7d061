#include "sred/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace sred {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Int to_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<long>());
  if (v.is_string()) {
    Int z;
    if (z.set_str(v.get<std::string>(), 10) != 0) throw ParseError("not an integer: " + v.dump());
    return z;
  }
  throw ParseError("expected an integer, got " + v.dump());
}

Rat to_rat(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw ParseError("rational pairs need two entries: " + v.dump());
    Int d = to_int(v[1]);
    if (d == 0) throw ParseError("zero denominator in " + v.dump());
    Rat q(to_int(v[0]), d);
    q.canonicalize();
    return q;
  }
  if (v.is_number_integer()) return Rat(to_int(v));
  if (v.is_number_float()) return Rat(v.get<double>());
  if (v.is_string()) {
    Rat q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw ParseError("not a rational: " + v.dump());
    if (q.get_den() == 0) throw ParseError("zero denominator in " + v.dump());
    q.canonicalize();
    return q;
  }
  throw ParseError("expected a rational, got " + v.dump());
}

FieldElement to_element(const NumberField& F, const json& v) {
  if (!v.is_array() || static_cast<int>(v.size()) != F.degree())
    throw ParseError("elements need " + std::to_string(F.degree()) + " coordinates: " + v.dump());
  std::vector<Rat> c;
  for (const auto& x : v) c.push_back(to_rat(x));
  return F.element(std::move(c));
}

json int_json(const Int& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json rat_json(const Rat& q) {
  if (q.get_den() == 1) return int_json(q.get_num());
  return json(q.get_str());
}

json element_json(const NumberField& F, const FieldElement& x) {
  json c = json::array();
  for (const auto& q : x.coords) c.push_back(rat_json(q));
  json out;
  out["coords"] = c;
  out["text"] = element_string(F, x);
  return out;
}

json module_json(const ZModule& M) {
  json rows = json::array();
  const ZMatrix& h = M.hnf();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < h.cols(); ++j) row.push_back(int_json(h(i, j)));
    rows.push_back(row);
  }
  json out;
  out["den"] = int_json(M.den());
  out["hnf"] = rows;
  return out;
}

json double_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string hnf_text(const ZModule& M) {
  std::string s;
  const ZMatrix& h = M.hnf();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j) s += ' ';
      s += h(i, j).get_str();
    }
  }
  return s;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

struct CyclePoint {
  std::size_t index;
  double position;
  double angle;
  bool usual;
};

std::vector<CyclePoint> principal_points(const SredCensus& census) {
  std::vector<CyclePoint> pts;
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    const auto& e = census.entries[i];
    if (e.class_tag == 0 && e.position) pts.push_back({i, *e.position, *e.angle, e.usual_reduced});
  }
  std::stable_sort(pts.begin(), pts.end(), [](const CyclePoint& a, const CyclePoint& b) { return a.position < b.position; });
  return pts;
}

}  // namespace

std::string read_spec_argument(const std::string& argument) {
  auto first = argument.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && argument[first] == '{') return argument;
  std::ifstream in(argument);
  if (!in) throw ParseError("cannot open '" + argument + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FieldSpec parse_field_spec(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("min_poly")) throw ParseError("field spec needs \"min_poly\"");
  std::vector<Int> poly;
  for (const auto& c : j["min_poly"]) poly.push_back(to_int(c));
  std::optional<QMatrix> basis;
  if (j.contains("integral_basis")) {
    const auto& b = j["integral_basis"];
    const std::size_t n = poly.size() - 1;
    if (!b.is_array() || b.size() != n) throw ParseError("integral_basis needs one row per basis element");
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!b[i].is_array() || b[i].size() != n) throw ParseError("integral_basis rows need n entries");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = to_rat(b[i][k]);
    }
    basis = m;
  }
  FieldSpec spec{NumberField::create(std::move(poly), basis), std::nullopt};
  if (j.contains("units")) {
    std::vector<FieldElement> us;
    for (const auto& u : j["units"]) us.push_back(to_element(spec.field, u));
    spec.units = std::move(us);
  }
  return spec;
}

FieldSpec load_field_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_field_spec(ss.str());
}

namespace {

ModuleSpec module_from_json(const NumberField& F, const json& j) {
  if (!j.is_object()) throw ParseError("ideal spec must be an object");
  const int n = F.degree();
  std::optional<ZModule> m;
  if (j.contains("hnf")) {
    Int den = j.contains("den") ? to_int(j["den"]) : Int(1);
    if (den <= 0) throw ParseError("den must be positive");
    const auto& rows = j["hnf"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError("hnf needs n rows");
    const std::size_t cols = rows[0].size();
    QMatrix q(static_cast<std::size_t>(n), cols);
    for (int i = 0; i < n; ++i) {
      if (rows[i].size() != cols) throw ParseError("hnf rows differ in length");
      for (std::size_t k = 0; k < cols; ++k) q(i, k) = Rat(to_int(rows[i][k])) / Rat(den);
    }
    m = ZModule::from_columns(F, q);
  } else if (j.contains("gens")) {
    std::vector<FieldElement> gens;
    for (const auto& g : j["gens"]) gens.push_back(to_element(F, g));
    if (gens.empty()) throw ParseError("gens must not be empty");
    bool plain = j.value("plain", false);
    if (!plain) {
      FractionalIdeal I = ideal_from_generators(F, gens);
      return ModuleSpec{I, false, I};
    }
    m = ZModule::span(F, gens);
  } else {
    throw ParseError("ideal spec needs \"hnf\" or \"gens\"");
  }
  ModuleSpec spec{*m, j.value("plain", false), std::nullopt};
  if (!spec.plain) {
    if (!is_closed_under_order(*m)) throw ParseError("the module is not an O_F-ideal; add \"plain\": true");
    spec.ideal = FractionalIdeal(*m);
  }
  return spec;
}

}  // namespace

ModuleSpec parse_module_spec(const NumberField& F, const std::string& text) {
  try {
    return module_from_json(F, parse_json(text));
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad ideal spec: ") + e.what());
  }
}

ArakelovDivisor parse_divisor_spec(const NumberField& F, const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ParseError("divisor spec must be an object");
  FractionalIdeal I = FractionalIdeal::unit(F);
  if (j.contains("ideal")) {
    std::optional<ModuleSpec> m;
    try {
      m = module_from_json(F, j["ideal"]);
    } catch (const DomainError& e) {
      throw ParseError(std::string("bad ideal spec: ") + e.what());
    }
    if (!m->ideal) throw ParseError("a divisor needs an O_F-ideal, not a plain lattice");
    I = *m->ideal;
  }
  if (j.value("d_of_ideal", false)) return divisor_d(I);
  std::vector<double> u;
  if (j.contains("u")) {
    for (const auto& x : j["u"]) u.push_back(x.get<double>());
  } else if (j.contains("log_u")) {
    for (const auto& x : j["log_u"]) u.push_back(std::exp(x.get<double>()));
  } else {
    throw ParseError("divisor spec needs \"u\", \"log_u\" or \"d_of_ideal\"");
  }
  if (static_cast<int>(u.size()) != F.num_places()) throw ParseError("u needs one entry per infinite place");
  for (double x : u)
    if (!(x > 0)) throw ParseError("u entries must be positive");
  return ArakelovDivisor(I, ArchVector::positive(u, F.place_degrees()));
}

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string element_string(const NumberField& F, const FieldElement& x) {
  if (!F.is_quadratic()) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? ", " : "") + to_string(x.coords[i]);
    return s + "]";
  }
  const Int d = *F.quadratic_radicand();
  const Int b = F.min_poly()[1];
  const Int f = sqrt(Int((b * b - 4 * F.min_poly()[0]) / d));
  // theta = (-b + f sqrt d) / 2 at the first place.
  auto r = F.to_power_basis(x);
  Rat a = r[0] - r[1] * Rat(b) / 2;
  Rat s = r[1] * Rat(f) / 2;
  a.canonicalize();
  s.canonicalize();
  std::string root = "sqrt(" + d.get_str() + ")";
  if (s == 0) return to_string(a);
  std::string coef = s == 1 ? "" : s == -1 ? "-" : to_string(s) + "*";
  if (a == 0) return coef + root;
  return to_string(a) + (s > 0 ? "+" : "") + coef + root;
}

std::string info_json(const FieldSpec& spec, const std::optional<UnitLattice>& units, std::optional<int> h,
                      std::optional<int> h_plus) {
  const NumberField& F = spec.field;
  json j;
  json poly = json::array();
  for (const auto& c : F.min_poly()) poly.push_back(int_json(c));
  j["min_poly"] = poly;
  j["degree"] = F.degree();
  j["r1"] = F.r1();
  j["r2"] = F.r2();
  j["discriminant"] = int_json(F.discriminant());
  j["partial_f"] = partial_f(F);
  j["log_partial_f"] = std::log(partial_f(F));
  if (F.is_quadratic()) j["radicand"] = int_json(*F.quadratic_radicand());
  if (units) {
    json u;
    json gens = json::array();
    for (const auto& e : units->generators) gens.push_back(element_json(F, e));
    u["rank"] = units->rank();
    u["generators"] = gens;
    if (units->rank() > 0) u["norms"] = json::array();
    for (const auto& e : units->generators) u["norms"].push_back(rat_json(F.norm(e)));
    u["regulator"] = units->regulator();
    json pos = json::array();
    for (const auto& e : units->positive_generators) pos.push_back(element_json(F, e));
    u["totally_positive_generators"] = pos;
    u["positive_regulator"] = units->positive_regulator();
    u["roots_of_unity"] = units->torsion.size();
    u["sign_image_size"] = units->sign_image_size();
    j["units"] = u;
  }
  if (h) j["class_number"] = *h;
  if (h_plus) j["narrow_class_number"] = *h_plus;
  return j.dump(2) + "\n";
}

std::string certificate_json(const ZModule& L, const ReductionConstant& C, const ReducedCertificate& cert) {
  const NumberField& F = L.field();
  json j;
  j["strongly_reduced"] = cert.reduced;
  j["C"] = C.text();
  j["C_squared"] = rat_json(C.squared());
  j["reason"] = cert.reason;
  j["module"] = module_json(L);
  j["contains_one"] = cert.contains_one;
  j["rational_index"] = int_json(cert.rational_index);
  j["lambda1"] = cert.shortest.length;
  GramMatrix G = gram_of(L);
  if (auto e = G.exact_form(cert.shortest.coeffs)) j["lambda1_squared"] = rat_json(*e);
  j["threshold_squared"] = rat_json(Rat(F.degree()) / C.squared());
  json coeffs = json::array();
  for (const auto& c : cert.shortest.coeffs) coeffs.push_back(int_json(c));
  j["shortest_coeffs"] = coeffs;
  if (cert.shortest.element) j["shortest_vector"] = element_json(F, *cert.shortest.element);
  if (!cert.reduced) {
    if (!cert.contains_one)
      j["witness"] = "1 not in lattice";
    else if (cert.rational_index != 1)
      j["witness"] = element_json(F, F.from_rational(Rat(1) / Rat(cert.rational_index)));
    else if (cert.shortest.element)
      j["witness"] = element_json(F, *cert.shortest.element);
  }
  return j.dump(2) + "\n";
}

std::string reduction_json(const ArakelovDivisor& D, const ReductionConstant& C, const ReductionResult& r,
                           std::optional<double> distance) {
  const NumberField& F = D.field();
  const auto& t = r.trace;
  json j;
  j["C"] = C.text();
  json in;
  in["ideal"] = module_json(D.ideal());
  in["u"] = double_array(D.u().magnitudes());
  in["degree"] = D.degree();
  j["input"] = in;
  json out;
  out["ideal"] = module_json(r.reduced.ideal());
  out["inverse_norm"] = rat_json(Rat(1) / r.reduced.ideal().norm());
  out["u"] = double_array(r.reduced.u().magnitudes());
  j["reduced"] = out;
  json tr;
  tr["first"] = element_json(F, t.first);
  tr["k"] = t.k;
  json steps = json::array();
  for (const auto& s : t.steps) {
    json sj;
    sj["divided_by"] = element_json(F, s.divided_by);
    sj["length"] = s.length;
    sj["ideal"] = module_json(s.ideal);
    steps.push_back(sj);
  }
  tr["steps"] = steps;
  tr["log_v"] = double_array(t.log_v.entries());
  tr["distance_guaranteed"] = t.distance_guaranteed;
  tr["distance_bound"] = finite_or_null(t.distance_bound);
  tr["step_bound"] = finite_or_null(t.step_bound);
  tr["step_bound_ok"] = !std::isfinite(t.step_bound) || static_cast<double>(t.k) < t.step_bound;
  j["trace"] = tr;
  if (distance) {
    j["pic_distance"] = *distance;
    j["distance_bound_ok"] = !t.distance_guaranteed || *distance < t.distance_bound;
  }
  return j.dump(2) + "\n";
}

std::string census_json(const SredCensus& census) {
  const NumberField& F = census.field;
  json j;
  json poly = json::array();
  for (const auto& c : F.min_poly()) poly.push_back(int_json(c));
  j["min_poly"] = poly;
  j["C"] = census.C.text();
  j["C_squared"] = rat_json(census.C.squared());
  j["norm_bound"] = int_json(census.bound);
  j["count"] = census.size();
  j["usual_reduced"] = census.usual_reduced_count();
  if (census.circle_length) j["circle_length"] = *census.circle_length;
  json es = json::array();
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    const auto& e = census.entries[i];
    json ej;
    ej["index"] = i;
    ej["ideal"] = module_json(e.ideal);
    ej["inverse_norm"] = int_json(e.inverse_norm);
    ej["usual_reduced"] = e.usual_reduced;
    ej["lambda1"] = e.lambda1;
    ej["class"] = e.class_tag ? json(*e.class_tag) : json(nullptr);
    ej["narrow_class"] = e.narrow_tag ? json(*e.narrow_tag) : json(nullptr);
    if (e.generator) ej["generator"] = element_json(F, *e.generator);
    ej["position"] = e.position ? json(*e.position) : json(nullptr);
    ej["angle"] = e.angle ? json(*e.angle) : json(nullptr);
    es.push_back(ej);
  }
  j["entries"] = es;
  return j.dump(2) + "\n";
}

std::string census_csv(const SredCensus& census) {
  std::string s = "index,den,hnf,inverse_norm,usual_reduced,lambda1,class,narrow_class,position,angle\n";
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    const auto& e = census.entries[i];
    s += std::to_string(i) + "," + e.ideal.den().get_str() + ",\"" + hnf_text(e.ideal) + "\"," +
         e.inverse_norm.get_str() + "," + (e.usual_reduced ? "1" : "0") + "," + format_double(e.lambda1) + "," +
         (e.class_tag ? std::to_string(*e.class_tag) : "") + "," +
         (e.narrow_tag ? std::to_string(*e.narrow_tag) : "") + "," + (e.position ? format_double(*e.position) : "") +
         "," + (e.angle ? format_double(*e.angle) : "") + "\n";
  }
  return s;
}

std::string cycle_csv(const SredCensus& census) {
  std::string s = "label,index,position,angle,usual_reduced\n";
  auto pts = principal_points(census);
  for (std::size_t k = 0; k < pts.size(); ++k)
    s += "D" + std::to_string(k) + "," + std::to_string(pts[k].index) + "," + format_double(pts[k].position) + "," +
         format_double(pts[k].angle) + "," + (pts[k].usual ? "1" : "0") + "\n";
  return s;
}

std::string cycle_svg(const SredCensus& census) {
  const double size = 440, cx = 220, cy = 220, r = 160;
  auto pts = principal_points(census);
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"460\" viewBox=\"0 0 440 460\">\n";
  s += "<rect width=\"440\" height=\"460\" fill=\"white\"/>\n";
  s += "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" r=\"" + fixed(r) +
       "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  s += "<line x1=\"" + fixed(cx) + "\" y1=\"" + fixed(cy - r - 30) + "\" x2=\"" + fixed(cx) + "\" y2=\"" +
       fixed(cy + r + 30) + "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double a = pts[k].angle;
    const double sx = std::sin(a), sy = -std::cos(a);
    s += "<line x1=\"" + fixed(cx + (r - 10) * sx) + "\" y1=\"" + fixed(cy + (r - 10) * sy) + "\" x2=\"" +
         fixed(cx + (r + 10) * sx) + "\" y2=\"" + fixed(cy + (r + 10) * sy) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    s += "<circle cx=\"" + fixed(cx + r * sx) + "\" cy=\"" + fixed(cy + r * sy) + "\" r=\"4\" fill=\"" +
         (pts[k].usual ? "black" : "white") + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fixed(cx + (r + 26) * sx) + "\" y=\"" + fixed(cy + (r + 26) * sy + 4) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">D" + std::to_string(k) + "</text>\n";
  }
  s += "<text x=\"" + fixed(size / 2) + "\" y=\"450\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">C = " +
       census.C.text() + ", " + std::to_string(pts.size()) + " divisors, filled = reduced</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace sred
