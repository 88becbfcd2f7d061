#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "sred/io.hpp"

using namespace sred;
using nlohmann::json;

namespace {

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(FieldSpec, Parsing) {
  auto s = parse_field_spec(R"({"min_poly": [-7, 0, 1]})");
  EXPECT_EQ(s.field.discriminant(), 28);
  EXPECT_FALSE(s.units.has_value());
  auto c = parse_field_spec(R"({"min_poly": [-2, 0, 0, 1], "units": [[-1, 1, 0]]})");
  ASSERT_TRUE(c.units.has_value());
  EXPECT_EQ(c.units->size(), 1u);
  EXPECT_EQ(c.field.norm(c.units->front()), 1);
  auto b = parse_field_spec(R"({"min_poly": [-5, 0, 1], "integral_basis": [[1, 0], ["1/2", [1, 2]]]})");
  EXPECT_EQ(b.field.discriminant(), 5);
}

TEST(FieldSpec, Errors) {
  EXPECT_THROW(parse_field_spec("not json"), ParseError);
  EXPECT_THROW(parse_field_spec(R"({"poly": [1, 0, 1]})"), ParseError);
  EXPECT_THROW(parse_field_spec(R"({"min_poly": "x^2+1"})"), ParseError);
  EXPECT_THROW(load_field_spec("/nonexistent/field.json"), ParseError);
  EXPECT_ANY_THROW(parse_field_spec(R"({"min_poly": [-4, 0, 1]})"));
}

TEST(ModuleSpec, Forms) {
  auto F = parse_field_spec(R"({"min_poly": [-7, 0, 1]})").field;
  auto plain = parse_module_spec(F, R"({"gens": [[1, 0], ["1/4", "1/4"]], "plain": true})");
  EXPECT_TRUE(plain.plain);
  EXPECT_FALSE(plain.ideal.has_value());
  EXPECT_EQ(plain.module, PlainLattice::span(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})}));

  auto ideal = parse_module_spec(F, R"({"gens": [[3, 0], [1, 1]]})");
  ASSERT_TRUE(ideal.ideal.has_value());
  EXPECT_EQ(ideal.ideal->norm(), 3);

  auto hnf = parse_module_spec(F, R"({"den": 1, "hnf": [[3, 1], [0, 1]]})");
  EXPECT_EQ(hnf.module, ideal.module);

  // Without "plain" the generators span an O_F-ideal, which contains 1/2.
  auto closure = parse_module_spec(F, R"({"gens": [[1, 0], ["1/4", "1/4"]]})");
  ASSERT_TRUE(closure.ideal.has_value());
  EXPECT_EQ(closure.ideal->norm(), Rat(1, 8));
  EXPECT_TRUE(closure.module.contains(F.from_rational(Rat(1, 2))));
  EXPECT_THROW(parse_module_spec(F, R"({"gens": [[1, 0, 0]]})"), ParseError);
  EXPECT_THROW(parse_module_spec(F, R"({"den": 0, "hnf": [[1, 0], [0, 1]]})"), ParseError);
}

TEST(DivisorSpec, Forms) {
  auto F = parse_field_spec(R"({"min_poly": [-7, 0, 1]})").field;
  auto d1 = parse_divisor_spec(F, R"({"ideal": {"gens": [[1, 0]]}, "log_u": [1, -1]})");
  EXPECT_EQ(d1.ideal(), FractionalIdeal::unit(F));
  EXPECT_NEAR(d1.u()[0].real(), std::exp(1.0), 1e-15);
  EXPECT_NEAR(d1.degree(), 0.0, 1e-15);
  auto d2 = parse_divisor_spec(F, R"({"u": [2, 0.5]})");
  EXPECT_EQ(d2.ideal(), FractionalIdeal::unit(F));
  auto d3 = parse_divisor_spec(F, R"({"ideal": {"gens": [[3, 0], [1, 1]]}, "d_of_ideal": true})");
  EXPECT_NEAR(d3.u()[0].real(), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_THROW(parse_divisor_spec(F, R"({"u": [1]})"), ParseError);
  EXPECT_THROW(parse_divisor_spec(F, R"({"u": [1, -1]})"), ParseError);
}

TEST(Format, Doubles) {
  for (double x : {0.1, 1.0 / 3, 2.7686593833135738, -1e-300, 12345.0})
    EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Format, Elements) {
  auto F = parse_field_spec(R"({"min_poly": [-7, 0, 1]})").field;
  EXPECT_EQ(element_string(F, F.element({8, 3})), "8+3*sqrt(7)");
  EXPECT_EQ(element_string(F, F.element({Rat(1, 4), Rat(-1, 4)})), "1/4-1/4*sqrt(7)");
  auto G = parse_field_spec(R"({"min_poly": [-73, 0, 1]})").field;
  EXPECT_EQ(element_string(G, G.basis_element(1)), "1/2+1/2*sqrt(73)");
}

TEST(Format, CensusOutputs) {
  auto spec = parse_field_spec(R"({"min_poly": [-73, 0, 1]})");
  auto units = quadratic_units(spec.field);
  auto census = enumerate_sred(spec.field, ReductionConstant::parse("sqrt(2)"));
  classify_components(census, units);
  cycle_positions(census, units);

  auto j = json::parse(census_json(census));
  EXPECT_EQ(j["count"], 11);
  EXPECT_EQ(j["usual_reduced"], 9);
  EXPECT_EQ(j["norm_bound"], 17);
  EXPECT_EQ(j["entries"].size(), 11u);
  for (const auto& e : j["entries"]) EXPECT_EQ(e["class"], 0);

  auto csv = census_csv(census);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  auto cyc = cycle_csv(census);
  EXPECT_EQ(std::count(cyc.begin(), cyc.end(), '\n'), 12);
  EXPECT_EQ(cyc.rfind("label,", 0), 0u);
  EXPECT_NE(cyc.find("\nD0,"), std::string::npos);

  auto svg = cycle_svg(census);
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos, true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_of(svg, "r=\"4\""), 11u);
  EXPECT_EQ(count_of(svg, "fill=\"black\" stroke"), 9u);

  auto info = json::parse(info_json(spec, units, 1, 1));
  EXPECT_EQ(info["discriminant"], 73);
  EXPECT_EQ(info["units"]["rank"], 1);
  EXPECT_NEAR(info["units"]["regulator"].get<double>(), units.regulator(), 1e-15);
}

TEST(Format, SpecArgument) {
  EXPECT_EQ(read_spec_argument(R"({"u": [1, 1]})"), R"({"u": [1, 1]})");
  const std::string path = ::testing::TempDir() + "sred_spec_arg.json";
  {
    std::ofstream f(path);
    f << R"({"gens": [[1, 0]]})";
  }
  EXPECT_EQ(read_spec_argument(path), R"({"gens": [[1, 0]]})");
  std::remove(path.c_str());
  EXPECT_THROW(read_spec_argument("/nonexistent/spec.json"), ParseError);
}
