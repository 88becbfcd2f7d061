#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sred/lattice.hpp"

using namespace sred;

namespace {

NumberField q(long d) { return NumberField::create({-d, 0, 1}); }

QMatrix to_qmatrix(const std::vector<std::vector<Rat>>& g) {
  QMatrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = g[i][j];
  return m;
}

Rat exact_det(const QMatrix& m) { return determinant(m); }

// Hermite constants squared, gamma_n^n for n = 2, 3, 4.
Rat hermite_power(int n) {
  switch (n) {
    case 2: return Rat(4, 3);
    case 3: return Rat(2);
    default: return Rat(4);
  }
}

}  // namespace

TEST(Lattice, ShortestVectorMatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    auto g = oracle::random_gram(rng, n, 6);
    auto G = GramMatrix::from_rational(to_qmatrix(g));
    auto sv = shortest_vector(G);
    auto brute = oracle::brute_minimum(g);
    auto value = G.exact_form(sv.coeffs);
    ASSERT_TRUE(value.has_value());
    EXPECT_EQ(*value, brute.value) << "trial " << trial;
    bool zero = true;
    for (const auto& c : sv.coeffs) zero = zero && c == 0;
    EXPECT_FALSE(zero);
  }
}

TEST(Lattice, ShortestVectorTieBreak) {
  // Z^2: four vectors of length 1; the canonical one is (0, 1) or (1, 0) with
  // a positive leading entry and lexicographically smallest.
  auto G = GramMatrix::from_rational(QMatrix::identity(2));
  auto sv = shortest_vector(G);
  EXPECT_EQ(sv.coeffs, sign_normalized(sv.coeffs));
  EXPECT_DOUBLE_EQ(sv.length, 1.0);
}

TEST(Lattice, LllIsReducedAndUnimodular) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    auto g = oracle::random_gram(rng, n, 20);
    auto G = GramMatrix::from_rational(to_qmatrix(g));
    auto r = lll_reduce(G);
    Rat det = exact_det(to_rational(r.transform));
    EXPECT_TRUE(det == 1 || det == -1);
    ASSERT_TRUE(r.reduced.is_exact());
    const QMatrix& B = *r.reduced.exact();
    EXPECT_EQ(exact_det(B), exact_det(to_qmatrix(g)));
    // Gram-Schmidt from the Gram matrix.
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> bstar(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        Rat s = B(i, j);
        for (int k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = s / bstar[j];
        EXPECT_LE(abs(mu[i][j]), Rat(1, 2));
      }
      Rat s = B(i, i);
      for (int k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = s;
    }
    for (int i = 1; i < n; ++i)
      EXPECT_GE(bstar[i], (Rat(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * bstar[i - 1]);
  }
}

TEST(Lattice, GramOfIdealAndCovolume) {
  for (long d : {7L, 73L, -1L, -5L}) {
    auto F = q(d);
    auto G = gram_of(FractionalIdeal::unit(F));
    // det of the trace form on O_F is |disc|.
    auto det = G.determinant(128);
    EXPECT_NEAR(det.mid(), std::fabs(F.discriminant().get_d()), 1e-9);
    if (d > 0) {
      ASSERT_TRUE(G.is_exact());
      EXPECT_EQ(determinant(*G.exact()), Rat(F.discriminant()));
    }
  }
}

TEST(Lattice, HermiteBoundOnIdealLattices) {
  std::mt19937_64 rng(5);
  std::vector<NumberField> fields{q(7), q(73), q(-23), NumberField::create({-2, 0, 0, 1}),
                                  NumberField::create({1, 1, 1, 1, 1})};
  for (const auto& F : fields) {
    auto ideals = enumerate_integral_ideals(F, Rat(30));
    for (const auto& I : ideals) {
      auto G = gram_of(I);
      auto sv = shortest_vector(G);
      double lam2 = sv.length * sv.length;
      double det = G.determinant(128).mid();
      const int n = F.degree();
      EXPECT_LE(std::pow(lam2, n), hermite_power(n).get_d() * det * (1 + 1e-9));
      // AM-GM: every nonzero x in I has |x|^2 >= n N(I)^{2/n}.
      EXPECT_GE(lam2, n * std::pow(I.norm().get_d(), 2.0 / n) * (1 - 1e-9));
    }
  }
}

TEST(Lattice, EnumerateBoxMatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (long d : {7L, 73L, 79L}) {
    auto F = q(d);
    auto ideals = enumerate_integral_ideals(F, Rat(12));
    for (const auto& I : ideals) {
      auto inv = I.inverse();
      std::uniform_real_distribution<double> b(0.3, 3.0);
      std::vector<double> bounds{b(rng), b(rng)};
      auto u = ArchVector::uniform(1.0, F.place_degrees());
      for (bool strict : {true, false}) {
        auto found = enumerate_box(inv, u, bounds, strict);
        std::size_t brute = 0;
        for (long x = -60; x <= 60; ++x)
          for (long y = -60; y <= 60; ++y) {
            if (x == 0 && y == 0) continue;
            auto e = embed(F, inv.combination({Int(x), Int(y)}));
            bool in = true;
            for (int p = 0; p < 2; ++p) {
              double a = std::abs(e[p]);
              in = in && (strict ? a < bounds[p] : a <= bounds[p]);
            }
            brute += in;
          }
        EXPECT_EQ(found.size(), brute) << "d=" << d;
      }
    }
  }
}

TEST(Lattice, Minimality) {
  auto F = q(7);
  auto O = FractionalIdeal::unit(F);
  EXPECT_TRUE(is_minimal(O, F.one()));
  EXPECT_TRUE(box_below(O, F.one()).empty());
  auto plain = PlainLattice::span(F, {F.one(), F.element({Rat(1, 4), Rat(1, 4)})});
  EXPECT_FALSE(is_minimal(plain, F.one()));
  auto below = box_below(plain, F.one());
  EXPECT_FALSE(below.empty());
  // Units are minimal in O_F; 2 is not (1 is below it).
  EXPECT_TRUE(is_minimal(O, F.element({8, 3})));
  EXPECT_FALSE(is_minimal(O, F.from_rational(2)));
}

TEST(Lattice, MinimalElementBounded) {
  for (long d : {7L, 73L, 79L, -5L}) {
    auto F = q(d);
    const double bound = std::sqrt(partial_f(F));
    for (const auto& J : enumerate_integral_ideals(F, Rat(25))) {
      auto I = J.inverse();
      auto u = ArchVector::uniform(std::pow(I.norm().get_d(), -0.5), F.place_degrees());
      auto f = minimal_element_bounded(I, u);
      EXPECT_TRUE(I.contains(f));
      EXPECT_FALSE(f.is_zero());
      EXPECT_TRUE(is_minimal(I, f));
      auto e = embed(F, f);
      for (std::size_t p = 0; p < e.size(); ++p) EXPECT_LE(u[p].real() * std::abs(e[p]), bound * (1 + 1e-12));
    }
  }
}

TEST(Lattice, FinckePohstCountsZ2) {
  std::vector<std::vector<double>> G{{1, 0}, {0, 1}};
  auto pts = fincke_pohst(G, 2.0, {0, 0}, 1000);
  EXPECT_EQ(pts.size(), 9u);  // includes the origin
  auto shifted = fincke_pohst(G, 0.25, {0.5, 0.5}, 1000);
  EXPECT_EQ(shifted.size(), 0u);
  EXPECT_THROW(fincke_pohst(G, 1e6, {0, 0}, 100), LimitExceeded);
}
