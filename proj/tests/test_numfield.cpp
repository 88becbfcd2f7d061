#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sred/numfield.hpp"

using namespace sred;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

FieldElement random_element(const NumberField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
  std::vector<Rat> c;
  for (int i = 0; i < F.degree(); ++i) {
    Rat x(Int(num(rng)), Int(den(rng)));
    x.canonicalize();
    c.push_back(x);
  }
  return F.element(c);
}

}  // namespace

TEST(NumberField, QuadraticInvariants) {
  auto F7 = q(7);
  EXPECT_EQ(F7.degree(), 2);
  EXPECT_EQ(F7.r1(), 2);
  EXPECT_EQ(F7.r2(), 0);
  EXPECT_EQ(F7.discriminant(), 28);

  auto F73 = q(73);
  EXPECT_EQ(F73.discriminant(), 73);
  // basis 1, (1 + sqrt 73)/2
  auto w = F73.basis_element(1);
  EXPECT_EQ(F73.trace(w), 1);
  EXPECT_EQ(F73.norm(w), -18);

  auto Fi = NumberField::create({1, 0, 1});
  EXPECT_EQ(Fi.r1(), 0);
  EXPECT_EQ(Fi.r2(), 1);
  EXPECT_EQ(Fi.discriminant(), -4);
}

TEST(NumberField, HigherDegreeSignatures) {
  auto cubic = NumberField::create({-2, 0, 0, 1});
  EXPECT_EQ(cubic.r1(), 1);
  EXPECT_EQ(cubic.r2(), 1);
  EXPECT_EQ(cubic.discriminant(), -108);
  auto z5 = NumberField::create({1, 1, 1, 1, 1});
  EXPECT_EQ(z5.r1(), 0);
  EXPECT_EQ(z5.r2(), 2);
  EXPECT_EQ(z5.discriminant(), 125);
  EXPECT_EQ(z5.degree(), z5.r1() + 2 * z5.r2());
}

TEST(NumberField, RejectsBadPolynomials) {
  EXPECT_THROW(NumberField::create({-4, 0, 1}), DomainError);     // reducible
  EXPECT_THROW(NumberField::create({-7, 0, 2}), DomainError);     // not monic
  EXPECT_THROW(NumberField::create({1, 1}), DomainError);         // degree 1
}

TEST(NumberField, PartialConstant) {
  EXPECT_NEAR(partial_f(q(7)), std::sqrt(28.0), 1e-12);
  EXPECT_NEAR(partial_f(q(73)), std::sqrt(73.0), 1e-12);
  EXPECT_NEAR(partial_f(NumberField::create({1, 0, 1})), 4 / std::numbers::pi, 1e-12);
}

TEST(NumberField, Embeddings) {
  auto F = q(7);
  auto one = embed(F, F.one());
  EXPECT_NEAR(one.norm(), std::sqrt(2.0), 1e-15);
  // alpha = (1 + sqrt 7)/4
  auto alpha = F.element({Rat(1, 4), Rat(1, 4)});
  auto e = embed(F, alpha);
  EXPECT_NEAR(e[0].real(), 0.911437827766148, 1e-12);
  EXPECT_NEAR(e[1].real(), -0.411437827766148, 1e-12);
  EXPECT_NEAR(e.squared_norm(), 1.0, 1e-14);

  auto Fi = NumberField::create({1, 0, 1});
  auto i = Fi.basis_element(1);
  auto ei = embed(Fi, i);
  ASSERT_EQ(ei.size(), 1u);
  EXPECT_NEAR(ei[0].imag(), 1.0, 1e-15);
  EXPECT_NEAR(ei.squared_norm(), 2.0, 1e-14);
}

TEST(NumberField, NormTrace) {
  auto F = q(7);
  auto [n1, t1] = norm_trace(F, F.one());
  EXPECT_EQ(n1, 1);
  EXPECT_EQ(t1, 2);
  EXPECT_EQ(F.norm(F.element({8, 3})), 1);
  EXPECT_EQ(F.norm(F.element({Rat(1, 4), Rat(1, 4)})), Rat(-3, 8));
}

TEST(NumberField, EmbeddingIsMultiplicative) {
  std::mt19937_64 rng(7);
  for (auto poly : std::vector<std::vector<Int>>{{-7, 0, 1}, {1, 0, 1}, {-2, 0, 0, 1}, {1, 1, 1, 1, 1}}) {
    auto F = NumberField::create(poly);
    for (int k = 0; k < 30; ++k) {
      auto x = random_element(F, rng), y = random_element(F, rng);
      auto ex = embed(F, x), ey = embed(F, y), exy = embed(F, F.multiply(x, y));
      double a = (ex * ey).norm(), b = exy.norm();
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, b));
    }
  }
}

TEST(NumberField, NormMatchesEmbeddingsAndAmGm) {
  std::mt19937_64 rng(11);
  for (auto poly : std::vector<std::vector<Int>>{{-73, 0, 1}, {1, 0, 1}, {-2, 0, 0, 1}, {1, 1, 1, 1, 1}}) {
    auto F = NumberField::create(poly);
    const int n = F.degree();
    for (int k = 0; k < 30; ++k) {
      auto x = random_element(F, rng);
      if (x.is_zero()) continue;
      auto e = embed(F, x);
      double prod = 1;
      for (std::size_t p = 0; p < e.size(); ++p) prod *= std::pow(std::abs(e[p]), e.degrees()[p]);
      double N = std::fabs(F.norm(x).get_d());
      EXPECT_NEAR(prod, N, 1e-10 * std::max(1.0, N));
      EXPECT_LE(N, std::pow(n, -n / 2.0) * std::pow(e.norm(), n) * (1 + 1e-12));
    }
  }
}

TEST(NumberField, LogExpRoundTrip) {
  auto v = ArchVector::positive({0.25, 3.5, 7.0}, {1, 1, 2});
  auto w = v.log().exp();
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(w[i].real(), v[i].real(), 1e-14 * v[i].real());
  EXPECT_NEAR(v.squared_norm(), 0.0625 + 12.25 + 2 * 49, 1e-12);
}

TEST(NumberField, FieldOperations) {
  auto F = q(73);
  auto x = F.element({3, 2});
  auto y = F.inverse(x);
  EXPECT_EQ(F.multiply(x, y), F.one());
  EXPECT_EQ(F.power(x, 3), F.multiply(x, F.multiply(x, x)));
  EXPECT_EQ(F.multiply(x, F.conjugate(x)), F.from_rational(F.norm(x)));
}
