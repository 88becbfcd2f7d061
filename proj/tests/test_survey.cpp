#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sred/survey.hpp"

using namespace sred;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

std::vector<std::pair<long, long>> keys(const SredCensus& c) {
  std::vector<std::pair<long, long>> out;
  for (const auto& e : c.entries) {
    const auto& H = e.inverse.hnf();
    EXPECT_EQ(H(1, 1), 1);
    out.emplace_back(H(0, 0).get_si(), H(0, 1).get_si());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Census, Bound) {
  EXPECT_EQ(census_bound(q(73), ReductionConstant::parse("sqrt(2)")), 17);
  EXPECT_EQ(census_bound(q(7), ReductionConstant::parse("2")), 21);
  EXPECT_EQ(census_bound(q(7), ReductionConstant::parse("1")), 5);
}

TEST(Census, MatchesBinaryFormOracle) {
  for (long d : {2L, 3L, 5L, 7L, 10L, 13L, 73L, 79L}) {
    auto F = q(d);
    for (const char* c : {"1", "sqrt(2)", "2"}) {
      auto C = ReductionConstant::parse(c);
      auto census = enumerate_sred(F, C);
      auto expected = oracle::quadratic_census(d, census.bound.get_si(), C.squared());
      std::vector<std::pair<long, long>> want;
      std::size_t usual = 0;
      for (const auto& e : expected) {
        want.emplace_back(e.a, e.c);
        usual += e.usual_reduced;
      }
      std::sort(want.begin(), want.end());
      EXPECT_EQ(keys(census), want) << "d=" << d << " C=" << c;
      EXPECT_EQ(census.usual_reduced_count(), usual) << "d=" << d << " C=" << c;
    }
  }
}

TEST(Census, Q73) {
  auto F = q(73);
  auto census = enumerate_sred(F, ReductionConstant::parse("sqrt(2)"));
  EXPECT_EQ(census.size(), 11u);
  EXPECT_EQ(census.usual_reduced_count(), 9u);
  EXPECT_EQ(enumerate_sred(F, ReductionConstant::parse("1")).size(), 7u);
  for (const auto& e : census.entries) {
    EXPECT_TRUE(e.inverse.is_integral());
    EXPECT_EQ(e.inverse, e.ideal.inverse());
    EXPECT_LE(e.inverse_norm, census.bound);
    EXPECT_GE(e.lambda1 * e.lambda1, 1 - 1e-12);
  }
}

TEST(Census, MonotoneInC) {
  for (long d : {7L, 73L, 79L, -5L}) {
    auto F = q(d);
    std::vector<std::string> Cs{"1", "11/10", "sqrt(2)", "2"};
    std::vector<FractionalIdeal> prev;
    for (const auto& c : Cs) {
      auto census = enumerate_sred(F, ReductionConstant::parse(c));
      for (const auto& I : prev)
        EXPECT_TRUE(std::any_of(census.entries.begin(), census.entries.end(),
                                [&](const CensusEntry& e) { return e.ideal == I; }))
            << "d=" << d << " C=" << c;
      prev.clear();
      for (const auto& e : census.entries) prev.push_back(e.ideal);
    }
  }
}

TEST(Census, ClosedUnderConjugation) {
  for (long d : {73L, 79L, 10L}) {
    auto census = enumerate_sred(q(d), ReductionConstant::parse("2"));
    for (const auto& e : census.entries) {
      auto c = e.ideal.conjugate();
      EXPECT_TRUE(std::any_of(census.entries.begin(), census.entries.end(),
                              [&](const CensusEntry& x) { return x.ideal == c; }));
    }
  }
}

TEST(Census, LimitIsEnforced) { EXPECT_THROW(enumerate_sred(q(73), ReductionConstant::parse("1000")), LimitExceeded); }

TEST(Classes, ClassNumbers) {
  struct Case {
    long d;
    int h, hplus;
  };
  for (const auto& c : std::vector<Case>{{7, 1, 2}, {73, 1, 1}, {79, 3, 6}, {10, 2, 2}, {3, 1, 2}, {2, 1, 1},
                                         {-5, 2, 2}, {-23, 3, 3}, {-1, 1, 1}}) {
    auto F = q(c.d);
    auto U = quadratic_units(F);
    EXPECT_EQ(class_number(F, U).value_or(-1), c.h) << c.d;
    EXPECT_EQ(narrow_class_number(F, U).value_or(-1), c.hplus) << c.d;
  }
}

TEST(Classes, CensusComponents) {
  auto F = q(79);
  auto U = quadratic_units(F);
  auto cyc = principal_cycle(F);
  auto census = enumerate_sred(F, ReductionConstant::parse("2"));
  classify_components(census, U, &cyc);
  std::set<int> classes, narrow;
  for (const auto& e : census.entries) {
    ASSERT_TRUE(e.class_tag && e.narrow_tag && e.generator);
    classes.insert(*e.class_tag);
    narrow.insert(*e.narrow_tag);
    if (*e.class_tag == 0) EXPECT_EQ(FractionalIdeal::principal(F, *e.generator), e.ideal);
  }
  EXPECT_EQ(classes.size(), 3u);
  EXPECT_LE(narrow.size(), 6u);
  EXPECT_GE(narrow.size(), classes.size());
  // Every class contains d(I) for some reduced I.
  for (int t : classes) EXPECT_GT(census.count_in_class(t), 0u);
}

TEST(Cycle, PositionsAreSymmetric) {
  for (long d : {7L, 73L, 79L}) {
    for (const char* c : {"sqrt(2)", "2"}) {
      auto F = q(d);
      auto U = quadratic_units(F);
      auto census = enumerate_sred(F, ReductionConstant::parse(c));
      classify_components(census, U);
      cycle_positions(census, U);
      ASSERT_TRUE(census.circle_length.has_value());
      EXPECT_NEAR(*census.circle_length, std::sqrt(2.0) * U.regulator(), 1e-12);
      std::vector<double> ps;
      for (const auto& e : census.entries) {
        ASSERT_TRUE(e.position.has_value());
        EXPECT_GE(*e.position, 0.0);
        EXPECT_LT(*e.position, *census.circle_length);
        if (e.class_tag == 0) ps.push_back(*e.position);
      }
      EXPECT_TRUE(positions_symmetric(ps, *census.circle_length, 1e-9)) << "d=" << d << " C=" << c;
      // O_F sits at 0.
      EXPECT_TRUE(std::any_of(ps.begin(), ps.end(), [](double p) { return p < 1e-12; }));
    }
  }
  EXPECT_TRUE(positions_symmetric({0, 1, 9}, 10, 1e-9));
  EXPECT_FALSE(positions_symmetric({0, 1, 8}, 10, 1e-9));
  EXPECT_TRUE(positions_symmetric({5}, 10, 1e-9));
}

TEST(Separation, DeltaValues) {
  EXPECT_NEAR(separation_delta(ReductionConstant::parse("sqrt(2)")), std::log(1 + std::sqrt(3.0) / 4), 1e-15);
  EXPECT_NEAR(separation_delta(ReductionConstant::parse("sqrt(2)"), false), std::log(1.75), 1e-15);
  EXPECT_NEAR(separation_delta(ReductionConstant::parse("2")), std::log(1 + std::sqrt(3.0) / 8), 1e-15);
}

TEST(Separation, HoldsOnSmallFields) {
  for (long d : {7L, 73L, 79L}) {
    for (const char* c : {"sqrt(2)", "2"}) {
      auto F = q(d);
      auto U = quadratic_units(F);
      auto cyc = principal_cycle(F);
      auto census = enumerate_sred(F, ReductionConstant::parse(c));
      classify_components(census, U, &cyc);
      auto r = verify_separation(census, U, &cyc);
      EXPECT_TRUE(r.ok()) << "d=" << d << " C=" << c;
      if (r.min_gap) EXPECT_GE(*r.min_gap, r.delta);
    }
  }
}

TEST(Counts, Bounds) {
  for (long d : {7L, 73L, 79L}) {
    for (const char* c : {"sqrt(2)", "2"}) {
      auto F = q(d);
      auto U = quadratic_units(F);
      auto cyc = principal_cycle(F);
      auto census = enumerate_sred(F, ReductionConstant::parse(c));
      classify_components(census, U, &cyc);
      cycle_positions(census, U);
      auto r = verify_counts(census, U, &cyc);
      EXPECT_EQ(r.sred, census.size());
      EXPECT_TRUE(r.ok()) << "d=" << d << " C=" << c << " sred=" << r.sred << "/" << r.sred_bound
                          << " ball=" << r.ball << "/" << r.ball_bound;
      EXPECT_GE(r.ball, 1u);
    }
  }
}

TEST(Counts, MaxInArc) {
  EXPECT_EQ(max_in_arc({0, 0.5, 1, 5}, 10, 1), 3u);
  EXPECT_EQ(max_in_arc({9.5, 0.2, 4}, 10, 1), 2u);  // wraps around
  EXPECT_EQ(max_in_arc({0, 1, 2}, 1.5, 2), 3u);      // arc longer than the circle
  EXPECT_EQ(max_in_arc({}, 10, 1), 0u);
}

TEST(Sampling, DegreeZeroAndDeterministic) {
  auto F = q(7);
  auto a = sample_divisors(F, 10, 42), b = sample_divisors(F, 10, 42);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].degree(), 0.0, 1e-9);
    EXPECT_EQ(a[i].ideal(), b[i].ideal());
    EXPECT_EQ(a[i].u()[0], b[i].u()[0]);
  }
}
