#include <gtest/gtest.h>

#include <set>

#include "smc/verify.hpp"

using namespace smc;

namespace {

// Every way of splitting the naive rules on small tables, by exhaustion: for quotient labels i <= j, k choose
// N_ij^k in [0, n_ij^k] and N_ij^fk = n_ij^k - N_ij^k, extend by f-equivariance, keep what passes the axioms.
std::vector<FusionTensor> brute_force_splits(const NaiveFusion& n, const SMCData* theta) {
  const int r = n.r;
  struct Slot {
    int i, j, k;
    i64 max;
  };
  std::vector<Slot> slots;
  for (int i = 1; i < r; ++i)
    for (int j = i; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (n(i, j, k)) slots.push_back({i, j, k, n(i, j, k)});
  std::vector<i64> x(slots.size(), 0);
  std::vector<FusionTensor> out;
  while (true) {
    FusionTensor t = standard_layout(r);
    auto set = [&](int i, int j, int k, i64 v) {
      // N(f^a i, f^b j, f^c k) = N(i, j, f^(a+b+c) k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c) {
            const int I = i + a * r, J = j + b * r;
            t(I, J, k + c * r) = t(J, I, k + c * r) = (a + b + c) % 2 ? n(i, j, k) - v : v;
          }
    };
    for (int j = 0; j < r; ++j) set(0, j, j, 1);
    for (size_t s = 0; s < slots.size(); ++s) set(slots[s].i, slots[s].j, slots[s].k, x[s]);
    if (check_fusion_axioms(t).pass() && induced_naive(t) == n && (!theta || check_balancing(*theta, t).pass()))
      out.push_back(t);
    size_t s = 0;
    while (s < slots.size() && ++x[s] > slots[s].max) x[s++] = 0;
    if (s == slots.size()) break;
  }
  return out;
}

// orbits under X_i <-> fX_i swaps on dual-closed label sets
int gauge_orbits(const std::vector<FusionTensor>& sols, const std::vector<int>& dual) {
  const int r = static_cast<int>(dual.size());
  std::set<std::vector<i64>> keys;
  for (const auto& t : sols) {
    std::vector<i64> best = t.N;
    for (int mask = 0; mask < (1 << (r - 1)); ++mask) {
      std::vector<bool> g(r, false);
      bool closed = true;
      for (int i = 1; i < r; ++i) g[i] = (mask >> (i - 1)) & 1;
      for (int i = 1; i < r; ++i) closed = closed && g[i] == g[dual[i]];
      if (closed) best = std::min(best, swap_gauge(t, g).N);
    }
    keys.insert(best);
  }
  return static_cast<int>(keys.size());
}

long long search_size(const NaiveFusion& n) {
  long long p = 1;
  for (int i = 1; i < n.r; ++i)
    for (int j = i; j < n.r; ++j)
      for (int k = 0; k < n.r; ++k) p *= n(i, j, k) + 1;
  return p;
}

std::vector<SplitSolution> split(const SMCData& d, bool with_theta) {
  SplitOptions o;
  if (with_theta) o.theta = &d;
  return split_naive(verlinde_naive(d), d.dual, o);
}

}  // namespace

TEST(Split, AgreesWithExhaustionOnSmallTables) {
  int compared = 0;
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    if (!d.self_dual()) continue;
    auto n = verlinde_naive(d);
    if (search_size(n) > 5000) continue;
    for (bool th : {false, true}) {
      auto brute = brute_force_splits(n, th ? &d : nullptr);
      auto got = split(d, th);
      EXPECT_EQ(static_cast<int>(got.size()), gauge_orbits(brute, d.dual)) << name << " theta=" << th;
      for (const auto& s : got) {
        EXPECT_TRUE(check_fusion_axioms(s.tensor).pass()) << name;
        EXPECT_EQ(induced_naive(s.tensor), n) << name;
      }
    }
    ++compared;
  }
  EXPECT_GE(compared, 5);
}

TEST(Split, BalancingLeavesTheCatalogueClass) {
  for (const auto& name : entry_names()) {
    const auto& e = load_entry(name);
    auto got = split(e.data, true);
    ASSERT_EQ(got.size(), 1u) << name;
    EXPECT_TRUE(same_fusion_class(got[0].tensor, *e.data.fusion)) << name;
    EXPECT_TRUE(check_balancing(e.data, got[0].tensor).pass()) << name;
    EXPECT_GE(got[0].class_size, 1) << name;
  }
}

TEST(Split, WithoutTwistsSeveralClassesRemain) {
  EXPECT_EQ(split(load_entry("psu2-6").data, false).size(), 2u);
  EXPECT_EQ(split(load_entry("psu2-14").data, false).size(), 2u);
  EXPECT_EQ(split(load_entry("so12c").data, false).size(), 2u);
  EXPECT_EQ(split(load_entry("fib-fib-svec").data, false).size(), 1u);
}

TEST(Split, Psu214Rules) {
  auto got = split(load_entry("psu2-14").data, true);
  // catalogue labels X1, X2, X3 have dimensions 2.85, 4.26, 5.03
  const auto t = to_standard(*load_entry("psu2-14").data.fusion);
  EXPECT_EQ(got[0].tensor, t);
  EXPECT_EQ(product_string(t, 1, 1), "1 + X1 + X2");
  EXPECT_EQ(product_string(t, 2, 2), "1 + X1 + X2 + X3 + fX3");
  EXPECT_EQ(product_string(t, 3, 3), "1 + X1 + X2 + X3 + fX1 + fX2 + fX3");
  EXPECT_EQ(product_string(t, 2, 3), "X1 + X2 + X3 + fX2 + fX3");
  EXPECT_EQ(product_string(t, 1, 3), "X2 + X3 + fX3");
  EXPECT_TRUE(got[0].constraints.end() != std::find(got[0].constraints.begin(), got[0].constraints.end(), "balancing"));
}

TEST(Split, So12SquareOfTheDimensionTwoObject) {
  // X2 (x) X2 = 1 + a fX1 + b X1 + X2 with a + b = 1; balancing picks b = 1 in the stored gauge
  const auto& d = load_entry("so12c").data;
  auto t = split(d, true)[0].tensor;
  EXPECT_EQ(t(2, 2, 1), 1);
  EXPECT_EQ(t(2, 2, t.fperm[1]), 0);
  EXPECT_EQ(t(2, 2, 2), 1);
  EXPECT_EQ(product_string(t, 2, 2), "1 + X1 + X2");
}

TEST(Split, PointedTablesAreGroupRingTimesSvec) {
  for (const auto& name : list_entries("pointed")) {
    const auto& d = load_entry(name).data;
    auto got = split(d, true);
    ASSERT_EQ(got.size(), 1u) << name;
    const auto& t = got[0].tensor;
    // every product of simple objects is a single simple object
    for (int i = 0; i < t.rank; ++i)
      for (int j = 0; j < t.rank; ++j) {
        i64 total = 0;
        for (int k = 0; k < t.rank; ++k) total += t(i, j, k);
        EXPECT_EQ(total, 1) << name;
      }
  }
}

TEST(Split, KleinTableIsFibTimesPsu26) {
  const auto& d = load_entry("fib-psu26").data;
  auto got = split(d, true);
  ASSERT_EQ(got.size(), 1u);
  auto fib = detect_fib_subring(verlinde_naive(d), got[0].tensor);
  ASSERT_TRUE(fib);
  EXPECT_EQ(product_string(got[0].tensor, *fib, *fib), "1 + X" + std::to_string(*fib));
}

TEST(Split, ThreadCountDoesNotChangeClasses) {
  const auto& d = load_entry("condensed-psu26sq").data;
  SplitOptions one, four;
  four.threads = 4;
  auto a = split_naive(verlinde_naive(d), d.dual, one), b = split_naive(verlinde_naive(d), d.dual, four);
  ASSERT_EQ(a.size(), b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].tensor, b[k].tensor);
    EXPECT_EQ(a[k].class_size, b[k].class_size);
  }
}

TEST(Split, InconsistentNaiveRulesHaveNoSolution) {
  auto n = verlinde_naive(load_entry("psu2-6").data);
  n(1, 1, 0) = 2;  // X X* would contain the unit twice
  EXPECT_THROW(split_naive(n, {0, 1}), NoSolution);
}

TEST(Split, NodeBudgetIsEnforced) {
  const auto& d = load_entry("condensed-psu26sq").data;
  SplitOptions o;
  o.node_budget = 5;
  EXPECT_THROW(split_naive(verlinde_naive(d), d.dual, o), ExplosionGuard);
}

TEST(Factor, InvertibleLabels) {
  EXPECT_FALSE(factor_by_invertible(load_entry("psu2-14").data));
  EXPECT_FALSE(factor_by_invertible(load_entry("so12c").data));
  auto f = factor_by_invertible(load_entry("sem-psu26").data);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->complement.r, 2);
  EXPECT_EQ(verlinde_naive(f->complement), verlinde_naive(load_entry("psu2-6").data));
  // the pointed factor is the semion: S_zz = -1
  EXPECT_EQ(f->pointed.S[1][1], Q(-1));
  EXPECT_THROW(factor_by_invertible(load_entry("pointed-z4").data), std::invalid_argument);
}

TEST(Factor, FibonacciSubring) {
  auto fib = [](const std::string& n) { return detect_fib_subring(to_standard(*load_entry(n).data.fusion)); };
  EXPECT_TRUE(fib("fib-psu26"));
  EXPECT_TRUE(fib("fib-fib-svec"));
  EXPECT_TRUE(fib("fib-svec"));
  EXPECT_FALSE(fib("psu2-14"));
  EXPECT_FALSE(fib("so12c"));
}

TEST(Deligne, TrivialFactorChangesNothing) {
  const auto& k = named_field("Q(sqrt2,i)");
  auto one = k.one();
  ModularData unit{"Vec", {{one}}, {one}, group_ring({{0}})};
  const auto& d = load_entry("psu2-6").data;
  auto p = deligne_product(unit, d);
  EXPECT_EQ(p.r, d.r);
  EXPECT_EQ(p.hatS, d.hatS);
  EXPECT_EQ(*p.hatT, *d.hatT);
  EXPECT_TRUE(same_fusion_class(*p.fusion, *d.fusion));
}

TEST(Deligne, SemionTimesPsu26MatchesCatalogue) {
  const auto& k = named_field("Q(sqrt2,i)");
  auto p = deligne_product(catalogue_detail::semion(k), catalogue_detail::psu2_6(k));
  const auto& e = load_entry("sem-psu26").data;
  EXPECT_EQ(p.hatS, e.hatS);
  EXPECT_TRUE(verify_all(p).pass());
}
