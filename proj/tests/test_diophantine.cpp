#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "smc/diophantine.hpp"

using namespace smc;

namespace {

// x + y sqrt2 raised to n, by repeated multiplication in Z[sqrt2]
std::pair<Z, Z> power_in_z_sqrt2(Z x, Z y, int n) {
  Z p = 1, q = 0;
  for (int k = 0; k < n; ++k) {
    Z p2 = p * x + 2 * q * y, q2 = p * y + q * x;
    p = p2;
    q = q2;
  }
  return {p, q};
}

}  // namespace

TEST(Pell, MBetaMatchesPowersOfThreePlusTwoSqrt2) {
  auto fam = pell_m_beta(15);
  ASSERT_EQ(fam.size(), 15u);
  for (int n = 1; n <= 15; ++n) {
    auto [p, q] = power_in_z_sqrt2(3, 2, n);
    // m + beta sqrt8 = p + q sqrt2, so beta = q / 2
    EXPECT_EQ(fam[n - 1].first, p);
    EXPECT_EQ(2 * fam[n - 1].second, q);
    EXPECT_EQ(p * p - 8 * fam[n - 1].second * fam[n - 1].second, 1);
  }
}

TEST(Pell, ACMatchesOddPowersOfOnePlusSqrt2) {
  auto fam = pell_a_c(15);
  for (int i = 1; i <= 15; ++i) {
    auto [p, q] = power_in_z_sqrt2(1, 1, 2 * i - 1);
    auto [a, c] = fam[i - 1];
    EXPECT_EQ(a, 2 * q);
    EXPECT_EQ(c, -p);
    EXPECT_EQ(a * a - 2 * c * c, 2);
    EXPECT_GE(a, 0);
    EXPECT_LE(c, -1);
  }
  EXPECT_EQ(fam[0], (std::pair<Z, Z>{2, -1}));
  EXPECT_EQ(fam[1], (std::pair<Z, Z>{10, -7}));
}

TEST(Pell, ACFamilyIsCompleteForSmallValues) {
  // brute force over a in [0, 2000]: every solution with c <= -1 is in the family
  std::vector<std::pair<Z, Z>> brute;
  for (long a = 0; a <= 2000; ++a) {
    long n = a * a - 2;
    if (n <= 0 || n % 2) continue;
    long c2 = n / 2, c = std::lround(std::sqrt(static_cast<double>(c2)));
    if (c * c == c2) brute.emplace_back(Z(a), Z(-c));
  }
  auto fam = pell_a_c(6);
  std::vector<std::pair<Z, Z>> small;
  for (const auto& x : fam)
    if (x.first <= 2000) small.push_back(x);
  EXPECT_EQ(brute, small);
}

TEST(Beq0, NoSolutionWithNonzeroB) {
  for (long bound : {100L, 500L}) {
    auto rep = verify_beq0(bound);
    EXPECT_EQ(rep.nonzero_b, 0) << bound;
    // oracle: direct scan over a, b, c
    std::vector<std::array<long, 3>> brute;
    if (bound <= 100)
      for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
          for (long c = -bound; c <= bound; ++c)
            if (a * a - (b * b + 2) * c * c == 2) brute.push_back({a, b, c});
    if (bound <= 100) EXPECT_EQ(rep.solutions, brute);
    for (auto s : std::vector<std::array<long, 3>>{{2, 0, 1}, {-2, 0, -1}, {10, 0, 7}, {-10, 0, 7}})
      EXPECT_TRUE(std::binary_search(rep.solutions.begin(), rep.solutions.end(), s)) << bound;
  }
}

TEST(Beq0, TinyBoundAndThreadIndependence) {
  EXPECT_TRUE(verify_beq0(1).solutions.empty());
  auto a = verify_beq0(3000, 1), b = verify_beq0(3000, 4);
  EXPECT_EQ(a.solutions, b.solutions);
  EXPECT_EQ(a.pairs_tested, b.pairs_tested);
  EXPECT_EQ(verify_beq0(10000, 4).nonzero_b, 0);
}

TEST(Discriminant, NZeroHasExactlyTwoValues) {
  std::vector<long> brute;
  for (long c = 1; c <= 1000000; ++c) {
    long v = 4 * c * c - 27;
    if (v < 0) continue;
    long t = std::lround(std::sqrt(static_cast<double>(v)));
    if (t * t == v) brute.push_back(c);
  }
  EXPECT_EQ(brute, (std::vector<long>{3, 7}));
  EXPECT_EQ(n0_discriminant_solutions(), brute);
}

TEST(Discriminant, NOneValues) {
  EXPECT_TRUE(n1_discriminant_solutions(6).empty());
  auto s = n1_discriminant_solutions(10000);
  EXPECT_EQ(s, (std::vector<long>{7, 31, 199, 1351, 9247}));
  for (long c : s) {
    long v = 5 * c * c - 22 * c - 27, t = std::lround(std::sqrt(static_cast<double>(v)));
    EXPECT_EQ(t * t, v);
  }
}
