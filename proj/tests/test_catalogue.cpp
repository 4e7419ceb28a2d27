#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "smc/verify.hpp"

using namespace smc;

namespace {

double dim_of_product(const SMCData& d, const FusionTensor& t, int a, int b) {
  // dimension of the right-hand side, with d(fX) = d(X)
  double s = 0;
  for (int c = 0; c < t.rank; ++c) {
    int q = c < d.r ? c : c - d.r;
    s += t(a, b, c) * d.dims[q].approx().real();
  }
  return s;
}

}  // namespace

TEST(Catalogue, EveryEntryVerifiesQuickly) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : entry_names()) {
    const auto& e = load_entry(name);
    auto v = verify_all(e.data, e.stratum.empty() || e.data.r != 4 ? std::nullopt : std::optional<std::string>(e.stratum));
    EXPECT_TRUE(v.pass()) << name;
    for (const auto& r : v.reports) EXPECT_TRUE(r.pass()) << name << ": " << describe(r);
    EXPECT_EQ(v.stratum, e.stratum) << name;
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
  EXPECT_EQ(entry_names().size(), 15u);
}

TEST(Catalogue, Filters) {
  EXPECT_EQ(list_entries("prime, rank 8"), (std::vector<std::string>{"psu2-14", "so12c", "condensed-psu26sq"}));
  EXPECT_EQ(list_entries("rank 4"), (std::vector<std::string>{"psu2-6", "fib-svec", "pointed-z2"}));
  EXPECT_EQ(list_entries("Z4"), (std::vector<std::string>{"psu2-14"}));
  EXPECT_EQ(list_entries("non-self-dual"), (std::vector<std::string>{"pointed-z4"}));
  EXPECT_EQ(list_entries().size(), 15u);
  EXPECT_TRUE(list_entries("rank 5").empty());
}

TEST(Catalogue, UnknownEntryThrows) { EXPECT_THROW(load_entry("psu2-8"), UnknownEntry); }

TEST(Catalogue, Psu26Matrix) {
  const auto& d = load_entry("psu2-6").data;
  const auto one = constant(d.field, Q(1));
  const auto& k = named_field("Q(sqrt2,i)");
  EXPECT_EQ(d.hatS, (Matrix{{one, one + k["sqrt2"]}, {one + k["sqrt2"], -one}}));
  EXPECT_EQ((*d.hatT)[1], k["i"]);
}

TEST(Catalogue, Psu210FirstRow) {
  const auto& d = load_entry("psu2-10").data;
  const auto& k = named_field("Q(sqrt3,i)");
  EXPECT_EQ(d.hatS[0][1], k["sqrt3"] + Q(2));
  EXPECT_EQ(d.hatS[0][2], k["sqrt3"] + Q(1));
  // [3]_q and [5]_q at q = exp(pi i / 12)
  auto qd = [](int n) { return std::sin(n * M_PI / 12) / std::sin(M_PI / 12); };
  EXPECT_NEAR(d.dims[1].approx().real(), qd(5), 1e-12);
  EXPECT_NEAR(d.dims[2].approx().real(), qd(3), 1e-12);
}

TEST(Catalogue, SemionData) {
  const auto& k = named_field("Q(i)");
  auto s = catalogue_detail::semion(k);
  EXPECT_EQ(s.S, (Matrix{{k.one(), k.one()}, {k.one(), -k.one()}}));
  EXPECT_EQ(s.T[1], k["i"]);
}

TEST(Catalogue, So12RulesMatchTheTableUpToGauge) {
  // the tabulated rules, after exchanging X1 and fX1
  const auto& d = load_entry("so12c").data;
  auto t = swap_gauge(to_standard(*d.fusion), {false, true, false, false});
  EXPECT_EQ(product_string(t, 1, 2), "fX2");
  EXPECT_EQ(product_string(t, 1, 3), "X3");
  EXPECT_EQ(product_string(t, 2, 2), "1 + X2 + fX1");
  EXPECT_EQ(product_string(t, 3, 3), "1 + X1 + X2 + fX2");
  // only the stored gauge balances with the tabulated twists
  EXPECT_TRUE(check_balancing(d, *d.fusion).pass());
  EXPECT_FALSE(check_balancing(d, t).pass());
}

TEST(Catalogue, CondensedRuleRespectsDimensions) {
  const auto& d = load_entry("condensed-psu26sq").data;
  const auto t = to_standard(*d.fusion);
  EXPECT_EQ(product_string(t, 1, 3), "X1 + X2 + fX1");
  for (int a = 1; a < d.r; ++a)
    for (int b = 1; b < d.r; ++b)
      EXPECT_NEAR(dim_of_product(d, t, a, b), (d.dims[a] * d.dims[b]).approx().real(), 1e-9) << a << "," << b;
  // "X2 + X3 + fX3" would give 3(1 + sqrt2), not d1 d3 = (3 + 2 sqrt2)(1 + sqrt2)
  const double alt = 3 * d.dims[3].approx().real();
  EXPECT_GT(std::abs(alt - (d.dims[1] * d.dims[3]).approx().real()), 1);
}

TEST(Catalogue, ProductEntriesFactor) {
  auto f = factor_by_invertible(load_entry("sem-fib-svec").data);
  ASSERT_TRUE(f);
  EXPECT_TRUE(same_naive_class(verlinde_naive(f->complement), verlinde_naive(load_entry("fib-svec").data)));
}

TEST(Catalogue, MetadataIsConsistent) {
  for (const auto& name : entry_names()) {
    const auto& e = load_entry(name);
    EXPECT_EQ(e.data.name, name);
    EXPECT_EQ(e.theta_turns.size(), static_cast<size_t>(e.data.r)) << name;
    EXPECT_EQ(e.prime, e.has_tag("prime")) << name;
    EXPECT_EQ(e.has_tag("self-dual"), e.data.self_dual()) << name;
    EXPECT_TRUE(e.has_tag("rank " + std::to_string(2 * e.data.r))) << name;
    EXPECT_FALSE(e.source.empty()) << name;
  }
}
