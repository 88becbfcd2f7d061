#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "sred/ideals.hpp"

using namespace sred;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

FractionalIdeal random_ideal(const NumberField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-9, 9);
  std::vector<FieldElement> gens;
  for (int k = 0; k < 2; ++k) {
    FieldElement g;
    do {
      g = F.element({Rat(c(rng)), Rat(c(rng))});
    } while (g.is_zero());
    gens.push_back(g);
  }
  auto I = ideal_from_generators(F, gens);
  if (rng() & 1) I = I.inverse();
  return I;
}

}  // namespace

TEST(Ideals, FromGenerators) {
  auto F = q(7);
  auto O = ideal_from_generators(F, {F.one()});
  EXPECT_EQ(O, FractionalIdeal::unit(F));
  EXPECT_EQ(O.norm(), 1);

  auto I = ideal_from_generators(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})});
  EXPECT_EQ(I.norm(), Rat(1, 8));
  EXPECT_TRUE(I.contains(F.from_rational(Rat(1, 2))));
  EXPECT_FALSE(one_is_primitive(I));
  EXPECT_EQ(rational_index(I), 2);

  auto Fi = NumberField::create({1, 0, 1});
  EXPECT_EQ(ideal_from_generators(Fi, {Fi.element({1, 1})}).norm(), 2);
  EXPECT_THROW(ideal_from_generators(F, {F.zero()}), DomainError);
}

TEST(Ideals, CanonicalFormIsIdempotent) {
  std::mt19937_64 rng(3);
  auto F = q(73);
  for (int k = 0; k < 50; ++k) {
    auto I = random_ideal(F, rng);
    EXPECT_EQ(ideal_from_generators(F, I.basis()), I);
  }
}

TEST(Ideals, Arithmetic) {
  auto Fi = NumberField::create({1, 0, 1});
  auto P = ideal_from_generators(Fi, {Fi.element({1, 1})});
  EXPECT_EQ(P * P, ideal_from_generators(Fi, {Fi.from_rational(2)}));
  EXPECT_EQ(P * FractionalIdeal::unit(Fi), P);

  std::mt19937_64 rng(5);
  for (long d : {7L, 73L, 79L, -5L}) {
    auto F = q(d);
    for (int k = 0; k < 50; ++k) {
      auto I = random_ideal(F, rng), J = random_ideal(F, rng);
      EXPECT_EQ((I * J).norm(), I.norm() * J.norm());
      EXPECT_EQ(I * I.inverse(), FractionalIdeal::unit(F));
      EXPECT_EQ(I.inverse().inverse(), I);
    }
  }
}

TEST(Ideals, Membership) {
  auto F = q(7);
  auto O = FractionalIdeal::unit(F);
  EXPECT_TRUE(contains(O, F.one()));
  EXPECT_FALSE(contains(O, F.from_rational(Rat(1, 2))));
}

TEST(Ideals, Primitivity) {
  auto F = q(7);
  EXPECT_TRUE(one_is_primitive(FractionalIdeal::unit(F)));
  auto half = FractionalIdeal::principal(F, F.from_rational(Rat(1, 2)));
  EXPECT_FALSE(one_is_primitive(half));
  auto plain = PlainLattice::span(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})});
  EXPECT_TRUE(one_is_primitive(plain));

  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    auto I = random_ideal(F, rng);
    if (!one_is_primitive(I)) continue;
    EXPECT_TRUE(I.contains(F.one()));
    for (long m = 2; m <= 50; ++m) EXPECT_FALSE(I.contains(F.from_rational(Rat(1, m))));
  }
}

TEST(Ideals, NotAnIdealIsRejected) {
  auto F = q(7);
  auto plain = PlainLattice::span(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})});
  EXPECT_FALSE(is_closed_under_order(plain));
  EXPECT_THROW(FractionalIdeal{ZModule(plain)}, DomainError);
}

TEST(Ideals, EnumerationSmall) {
  auto Fi = NumberField::create({1, 0, 1});
  auto L = enumerate_integral_ideals(Fi, Rat(5));
  ASSERT_EQ(L.size(), 5u);
  std::vector<Rat> norms;
  for (const auto& I : L) norms.push_back(I.norm());
  EXPECT_EQ(norms, (std::vector<Rat>{1, 2, 4, 5, 5}));
  EXPECT_EQ(enumerate_integral_ideals(q(7), Rat(1)).size(), 1u);
  EXPECT_TRUE(enumerate_integral_ideals(q(7), Rat(1, 2)).empty());
}

// Ideal counts per norm against the Dirichlet coefficients of the zeta function.
TEST(Ideals, EnumerationMatchesZetaCoefficients) {
  for (long d : {73L, 7L, 79L, 5L, -1L, -5L, -23L, 2L}) {
    auto F = q(d);
    const long D = F.discriminant().get_si();
    const long bound = d == 73 ? 17 : 40;
    auto L = enumerate_integral_ideals(F, Rat(bound));
    std::map<long, long> count;
    for (const auto& I : L) {
      ASSERT_TRUE(I.is_integral());
      count[I.norm().get_num().get_si()]++;
    }
    for (long m = 1; m <= bound; ++m) EXPECT_EQ(count[m], oracle::zeta_coefficient(D, m)) << "d=" << d << " m=" << m;
    for (std::size_t k = 1; k < L.size(); ++k) {
      EXPECT_TRUE(L[k - 1].norm() < L[k].norm() || (L[k - 1].norm() == L[k].norm() && lex_less(L[k - 1], L[k])));
    }
  }
}

TEST(Ideals, EnumerationCubic) {
  // x^3 - 2: Z[2^(1/3)] is maximal; 2 and 3 ramify totally, 5 = p1 p2 with norms 5, 25.
  auto F = NumberField::create({-2, 0, 0, 1});
  auto L = enumerate_integral_ideals(F, Rat(5));
  std::map<long, long> count;
  for (const auto& I : L) count[I.norm().get_num().get_si()]++;
  EXPECT_EQ(count[1], 1);
  EXPECT_EQ(count[2], 1);
  EXPECT_EQ(count[3], 1);
  EXPECT_EQ(count[4], 1);
  EXPECT_EQ(count[5], 1);
}
