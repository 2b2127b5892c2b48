#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stm/lattice.hpp"

using namespace stm;

namespace {

IntMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int lo, Int hi) {
  std::uniform_int_distribution<Int> d(lo, hi);
  IntMat m(rows, IntVec(cols));
  for (auto& r : m) {
    for (auto& x : r) x = d(rng);
  }
  return m;
}

}  // namespace

TEST(Rational, ArithmeticAndNormalization) {
  const Rational a(6, -4);
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(a + Rational(3, 2), Rational(0));
  EXPECT_EQ(a * Rational(-2, 3), Rational(1));
  EXPECT_EQ(Rational(1, 3) / Rational(1, 6), Rational(2));
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
  EXPECT_TRUE(Rational(2) == 2);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_EQ(format_rational(Rational(-7, 4)), "-7/4");
}

TEST(Hnf, CanonicalForEquivalentGenerators) {
  // Same lattice from two generating sets.
  const IntMat a{{2, 0, 0}, {0, 3, 0}, {1, 1, 1}};
  const IntMat b{{1, 1, 1}, {3, 1, 1}, {1, 4, 1}, {1, 1, 1}};
  EXPECT_EQ(hermite_normal_form(a), hermite_normal_form(b));
  const auto h = hermite_normal_form(a);
  ASSERT_EQ(h.size(), 3u);
  // (1,0,3) = 3(1,1,1) - (0,3,0) - (2,0,0) and (0,1,4) = (0,3,0) - (0,2,2) + (0,0,6); the index is 6.
  EXPECT_EQ(h, (IntMat{{1, 0, 3}, {0, 1, 4}, {0, 0, 6}}));
}

TEST(Hnf, DropsDependentRows) {
  const IntMat a{{2, 4}, {1, 2}, {3, 6}};
  const auto h = hermite_normal_form(a);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], (IntVec{1, 2}));
}

TEST(Kernel, KillsFunctionalsAndIsSaturated) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const IntMat f = random_matrix(rng, 1 + static_cast<std::size_t>(t % 2), n, -3, 3);
    const IntMat k = integer_kernel(f, n);
    for (const auto& v : k) {
      for (const auto& row : f) EXPECT_EQ(dot(row, v), 0);
    }
    // Every small kernel vector is in the span of the computed basis.
    const Sublattice lat(n, k);
    oracle::Vec v(n, -2);
    while (true) {
      bool killed = true;
      for (const auto& row : f) killed = killed && dot(row, IntVec(v.begin(), v.end())) == 0;
      if (killed) {
        EXPECT_TRUE(lat.contains(IntVec(v.begin(), v.end())));
      }
      std::size_t pos = 0;
      while (pos < n && ++v[pos] > 2) v[pos++] = -2;
      if (pos == n) break;
    }
  }
}

TEST(Sublattice, MembershipMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const IntMat gens = random_matrix(rng, 2, 3, -2, 2);
    const Sublattice lat(3, gens);
    const IntMat probes = random_matrix(rng, 8, 3, -4, 4);
    oracle::Mat g;
    for (const auto& r : gens) g.emplace_back(r.begin(), r.end());
    for (const auto& p : probes) {
      // Coefficients of a member are bounded by |p| * adj(G) / det; 12 covers this range.
      const bool brute = oracle::in_span_bounded(g, oracle::Vec(p.begin(), p.end()), 12);
      EXPECT_EQ(lat.contains(p), brute) << format_vec(p);
    }
    for (const auto& g0 : gens) EXPECT_TRUE(lat.contains(g0));
  }
}

TEST(Sublattice, EqualityIsLatticeEquality) {
  EXPECT_EQ(Sublattice(2, {{2, 0}, {0, 2}}), Sublattice(2, {{2, 2}, {0, 2}, {4, 6}}));
  EXPECT_FALSE(Sublattice(2, {{2, 0}}) == Sublattice(2, {{1, 0}}));
}

TEST(RationalMatrix, InverseAndRank) {
  const RatMat a = to_rational({{2, -1}, {-1, 2}});
  const RatMat inv = inverse(a);
  EXPECT_EQ(inv[0][0], Rational(2, 3));
  EXPECT_EQ(inv[0][1], Rational(1, 3));
  EXPECT_EQ(rational_rank(to_rational({{1, 2}, {2, 4}})), 1u);
  EXPECT_THROW(inverse(to_rational({{1, 2}, {2, 4}})), InputError);
  EXPECT_EQ(mul(RatVec{1, 1}, inv), (RatVec{1, 1}));
}

TEST(F2, LexminSolutionIsSmallestByEnumeration) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t % 4), n = 4;
    std::vector<F2Vec> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(mod2(random_matrix(rng, 1, n, 0, 1)[0]));
    const F2Vec target = mod2(random_matrix(rng, 1, n, 0, 1)[0]);
    std::optional<std::vector<std::uint8_t>> best;
    for (std::uint32_t c = 0; c < (1u << k); ++c) {
      F2Vec s(n, 0);
      std::vector<std::uint8_t> coeffs(k);
      for (std::size_t i = 0; i < k; ++i) {
        coeffs[i] = (c >> (k - 1 - i)) & 1;  // c increasing == lexicographic with coeffs[0] most significant
        if (coeffs[i]) {
          for (std::size_t j = 0; j < n; ++j) s[j] ^= rows[i][j];
        }
      }
      if (s == target) {
        best = coeffs;
        break;
      }
    }
    EXPECT_EQ(f2_solve_lexmin(rows, target), best);
    EXPECT_EQ(f2_in_span(rows, target), best.has_value());
  }
}

TEST(Checked, OverflowIsDetected) {
  EXPECT_THROW(detail::checked_mul(Int{1} << 40, Int{1} << 40), std::overflow_error);
  EXPECT_EQ(detail::mod_floor(-3, 4), 1);
  EXPECT_EQ(detail::floor_div(-3, 2), -2);
}
