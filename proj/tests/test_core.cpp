#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "smc/verify.hpp"
#include <array>

using namespace smc;

namespace {

// Verlinde sum in complex doubles, rounded: an oracle independent of the exact code path.
NaiveFusion numeric_verlinde(const SMCData& d) {
  const int r = d.r;
  std::vector<std::vector<std::complex<double>>> S(r, std::vector<std::complex<double>>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) S[i][j] = d.hatS[i][j].approx();
  double h = 0;
  for (int m = 0; m < r; ++m) h += std::norm(S[0][m]);
  NaiveFusion n(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        std::complex<double> s = 0;
        for (int m = 0; m < r; ++m) s += S[i][m] * S[j][m] * std::conj(S[k][m]) / S[0][m];
        s /= h;
        EXPECT_NEAR(s.imag(), 0, 1e-8);
        EXPECT_NEAR(s.real(), std::round(s.real()), 1e-8);
        n(i, j, k) = std::lround(s.real());
      }
  return n;
}

SMCData psu2_6_over_sqrt2() {
  auto f = quadratic_field(2);
  auto one = constant(f, Q(1)), a = one + generator(f, 0);
  return make_data("psu2-6", {{one, a}, {a, -one}});
}

bool has_failure(const Report& r, const std::string& identity) {
  for (const auto& v : r.violations)
    if (v.identity == identity) return true;
  return false;
}

}  // namespace

TEST(Verlinde, Psu26QuotientByHand) {
  auto d = psu2_6_over_sqrt2();
  EXPECT_EQ(d.half_D2(), constant(d.field, Q(4)) + generator(d.field, 0) * Q(2));
  auto n = verlinde_naive(d);
  EXPECT_EQ(n(1, 1, 1), 2);
  EXPECT_EQ(n(1, 1, 0), 1);
  EXPECT_EQ(n(0, 1, 1), 1);
  EXPECT_EQ(n(0, 1, 0), 0);
}

TEST(Verlinde, MatchesFloatingPointSumOnEveryEntry) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    EXPECT_EQ(verlinde_naive(d), numeric_verlinde(d)) << name;
  }
}

TEST(Verlinde, Psu214NaiveCoefficients) {
  // the proof lists labels by dimension 4.26, 5.03, 2.85; the catalogue orders them 2.85, 4.26, 5.03
  auto cat = verlinde_naive(load_entry("psu2-14").data);
  const int to_cat[4] = {0, 2, 3, 1};
  auto n = [&](int i, int j, int k) { return cat(to_cat[i], to_cat[j], to_cat[k]); };
  for (auto [i, j, k] : {std::array{1, 1, 1}, {1, 1, 3}, {1, 2, 3}, {1, 3, 3}, {3, 3, 3}}) EXPECT_EQ(n(i, j, k), 1);
  for (auto [i, j, k] : {std::array{1, 1, 2}, {1, 2, 2}, {2, 2, 2}, {2, 2, 3}}) EXPECT_EQ(n(i, j, k), 2);
  EXPECT_EQ(n(2, 3, 3), 0);
}

TEST(Verlinde, UnitRowIsIdentity) {
  for (const auto& name : entry_names()) {
    auto n = verlinde_naive(load_entry(name).data);
    for (int j = 0; j < n.r; ++j)
      for (int k = 0; k < n.r; ++k) EXPECT_EQ(n(0, j, k), j == k ? 1 : 0) << name;
  }
}

TEST(Verlinde, NonIntegralDataThrows) {
  auto f = quadratic_field(2);
  auto one = constant(f, Q(1)), s = generator(f, 0);
  auto d = make_data("bad", {{one, s}, {s, -one}});
  EXPECT_THROW(verlinde_naive(d), NonIntegralFusion);
  EXPECT_FALSE(verlinde_collect(d).ok());
}

TEST(Checks, SvecIsTheRankOneQuotient) {
  auto f = Field::rationals();
  auto d = make_data("sVec", {{constant(f, Q(1))}}, std::vector<Element>{constant(f, Q(1))});
  EXPECT_EQ(d.half_D2(), Q(1));
  EXPECT_TRUE(verify_all(d).pass());
}

TEST(Checks, PerturbedEntryFailsOrthogonality) {
  auto d = load_entry("psu2-6").data;
  d.hatS[1][1] = d.hatS[1][1] + Q(1);
  auto rep = check_orthogonality(d);
  EXPECT_FALSE(rep.pass());
  bool at_entry = false;
  for (const auto& v : rep.violations) at_entry = at_entry || (v.where.size() == 2 && (v.where[0] == 1 || v.where[1] == 1));
  EXPECT_TRUE(at_entry);
  EXPECT_FALSE(verify_all(d).pass());
}

TEST(Checks, DimensionsRequireUnitFirst) {
  auto d = psu2_6_over_sqrt2();
  d.dims[0] = constant(d.field, Q(2));
  EXPECT_TRUE(has_failure(check_dimensions(d), "d_0 = 1"));
}

TEST(Checks, Divisibility) {
  const auto& so = load_entry("so12c").data;
  EXPECT_EQ(so.half_D2(), Q(12));
  EXPECT_EQ(so.dims[2] * so.dims[2], Q(4));
  EXPECT_TRUE(check_divisibility(so).pass());
  EXPECT_TRUE(check_divisibility(load_entry("psu2-14").data).pass());
  // d^2 = 9 + 4 sqrt2 (norm 49) does not divide D^2/2 = 10 + 4 sqrt2 (norm 68)
  auto f = quadratic_field(2);
  auto one = constant(f, Q(1)), a = one + generator(f, 0) * Q(2);
  auto bad = make_data("bad", {{one, a}, {a, -one}});
  EXPECT_FALSE(check_divisibility(bad).pass());
}

TEST(Checks, BalancingWithCatalogueTwists) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    ASSERT_TRUE(d.fusion) << name;
    EXPECT_TRUE(check_balancing(d, *d.fusion).pass()) << name;
  }
}

TEST(Checks, BalancingRejectsWrongTwist) {
  auto d = load_entry("psu2-6").data;
  // theta_1 = -i (the conjugate) also balances; theta_1 = 1 does not
  (*d.hatT)[1] = constant(d.field, Q(1));
  EXPECT_FALSE(check_balancing(d, *d.fusion).pass());
}

TEST(Checks, BalancingForcesSo12CoefficientSplit) {
  // (2,3): S_23 = 0 so N_23^3 = N_23^f3; the stored rules have both equal to 1
  const auto& d = load_entry("so12c").data;
  EXPECT_TRUE(d.hatS[2][3].is_zero());
  const auto& t = *d.fusion;
  EXPECT_EQ(t(t.pi0[2], t.pi0[3], t.pi0[3]), 1);
  EXPECT_EQ(t(t.pi0[2], t.pi0[3], t.fperm[t.pi0[3]]), 1);
  auto wrong = t;
  wrong(wrong.pi0[2], wrong.pi0[3], wrong.pi0[3]) = 2;
  wrong(wrong.pi0[2], wrong.pi0[3], wrong.fperm[wrong.pi0[3]]) = 0;
  EXPECT_FALSE(check_balancing(d, wrong).pass());
}

TEST(Checks, FrobeniusSchurIndicatorsAreSigns) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    auto n = verlinde_naive(d);
    EXPECT_EQ(fs_indicator(d, n, 0), Q(1)) << name;
    EXPECT_TRUE(check_fs_indicators(d, n).pass()) << name;
  }
}

TEST(Checks, InducedNaiveMatchesVerlinde) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    EXPECT_EQ(induced_naive(*d.fusion), verlinde_naive(d)) << name;
    EXPECT_TRUE(check_fusion_axioms(*d.fusion).pass()) << name;
  }
}

TEST(Checks, Psu26FullRulesGiveNaiveTwo) {
  auto t = to_standard(psu2_family_fusion(1));
  EXPECT_EQ(product_string(t, 1, 1), "1 + X1 + fX1");
  EXPECT_EQ(induced_naive(t)(1, 1, 1), 2);
}

TEST(Checks, CommutationAndEigenvectors) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    auto n = verlinde_naive(d);
    EXPECT_TRUE(check_naive_symmetries(n, d.dual).pass()) << name;
    EXPECT_TRUE(check_commutation(n).pass()) << name;
    EXPECT_TRUE(check_eigenvectors(d, n).pass()) << name;
  }
}

TEST(Checks, TwistOrders) {
  const auto& d = load_entry("psu2-6").data;
  EXPECT_EQ(root_of_unity_order((*d.hatT)[1]), 4);
  EXPECT_TRUE(check_twists(d).pass());
  auto bad = d;
  (*bad.hatT)[1] = (*bad.hatT)[1] * Q(2);
  EXPECT_FALSE(check_twists(bad).pass());
}

TEST(Construction, DualFromConjugateColumns) {
  const auto& d = load_entry("pointed-z4").data;
  EXPECT_FALSE(d.self_dual());
  EXPECT_EQ(derive_dual(d.hatS), d.dual);
  for (int i = 0; i < d.r; ++i) EXPECT_EQ(d.dual[d.dual[i]], i);
}

TEST(Construction, RaggedInputIsRejected) {
  auto f = quadratic_field(2);
  auto one = constant(f, Q(1));
  EXPECT_THROW(make_data("x", {{one, one}, {one}}), std::invalid_argument);
  EXPECT_THROW(make_data("x", {}), std::invalid_argument);
}
