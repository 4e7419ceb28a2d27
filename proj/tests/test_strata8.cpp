#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "smc/json_io.hpp"

using namespace smc;

namespace {

Q value(const NamedValues& v, const std::string& k) {
  for (const auto& [n, x] : v)
    if (n == k) return x;
  throw std::out_of_range(k);
}

std::vector<std::string> param_strings(const StratumResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.survivors) out.push_back(s.param_string());
  std::sort(out.begin(), out.end());
  return out;
}

// integer-spin quantum dimensions [2j+1]_q, q = exp(pi i / (k+2)), j = 0..count-1
std::vector<double> su2_dims(int k, int count) {
  std::vector<double> d;
  for (int j = 0; j < count; ++j) d.push_back(std::sin((2 * j + 1) * M_PI / (k + 2)) / std::sin(M_PI / (k + 2)));
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> sorted_dims(const SMCData& d) {
  std::vector<double> out;
  for (const auto& x : d.dims) out.push_back(x.approx().real());
  std::sort(out.begin(), out.end());
  return out;
}

void expect_close(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
}

// naive coefficients recomputed from the materialized S-hat must equal the ones the search derived
void expect_values_reproduced(const Survivor& s) {
  ASSERT_TRUE(s.data);
  auto n = verlinde_naive(*s.data);
  for (const auto& [k, x] : s.values) {
    if (k.size() != 4 || k[0] != 'n') continue;
    const int i = k[1] - '0', j = k[2] - '0', l = k[3] - '0';
    EXPECT_EQ(Q(n(i, j, l)), x) << k << " at " << s.param_string();
  }
}

}  // namespace

TEST(Z4, Bound14HasOnlyThePsu214Quotient) {
  auto r = search_z4(14);
  ASSERT_EQ(r.survivors.size(), 1u);
  const auto& s = r.survivors[0];
  EXPECT_EQ(value(s.params, "c1"), 4);
  EXPECT_EQ(value(s.params, "c3"), 4);
  EXPECT_EQ(value(s.params, "c2"), -2);
  EXPECT_EQ(value(s.params, "P"), -1);
  EXPECT_EQ(s.group, "<(0123)>");
  expect_values_reproduced(s);
  expect_close(sorted_dims(*s.data), su2_dims(14, 4));
  match_to_catalogue(r);
  ASSERT_TRUE(r.survivors[0].match);
  EXPECT_EQ(r.survivors[0].match->entry, "psu2-14");
  EXPECT_TRUE(r.survivors[0].match->s_agrees);
  EXPECT_TRUE(r.survivors[0].match->fusion_agrees);
}

TEST(Z4, LargestDimensionIsOnePlusSqrt2PlusSqrt2PlusSqrt2) {
  auto r = search_z4(14);
  const auto& d = *r.survivors[0].data;
  const double want = 1 + std::sqrt(2.0) + std::sqrt(2 + std::sqrt(2.0));
  bool found = false;
  for (const auto& x : d.dims) found = found || std::abs(x.approx().real() - want) < 1e-12;
  EXPECT_TRUE(found);
}

TEST(Z4, LargerBoundsAddTheExpectedFamilies) {
  auto a = search_z4(115), b = search_z4(116);
  EXPECT_EQ(a.survivors.size(), 3u);
  EXPECT_EQ(b.survivors.size(), 4u);
  // survivors at a bound survive every larger bound
  auto pa = param_strings(a), pb = param_strings(b), p14 = param_strings(search_z4(14));
  EXPECT_TRUE(std::includes(pb.begin(), pb.end(), pa.begin(), pa.end()));
  EXPECT_TRUE(std::includes(pa.begin(), pa.end(), p14.begin(), p14.end()));
  std::vector<long> sigmas;
  for (const auto& s : b.survivors) {
    sigmas.push_back(value(s.params, "Sigma").get_num().get_si());
    EXPECT_EQ(s.group, "<(0123)>");
    expect_values_reproduced(s);
    if (value(s.params, "Sigma") == 434) {
      EXPECT_EQ(value(s.params, "Delta"), 18);
      EXPECT_EQ(value(s.values, "n111"), 115);
    }
  }
  std::sort(sigmas.begin(), sigmas.end());
  EXPECT_EQ(sigmas, (std::vector<long>{8, 40, 232, 434}));
}

TEST(Z4, WiderBoxAddsNothingAtBound14) {
  // every even (c1, c3) up to 400, beyond the search cap
  int hits = 0;
  for (long c1 = 0; c1 <= 400; c1 += 2)
    for (long c3 = 0; c3 <= 400; c3 += 2) {
      const long S = c1 + c3, D = c1 - c3;
      if (S < 6) continue;
      Q ratio(S * S - 32, D * D + 32), root;
      ratio.canonicalize();
      if (!exact_sqrt(ratio, root)) continue;
      for (const Q& P : {root, Q(-root)}) hits += z4_candidate(c1, c3, P, 14).ok;
    }
  EXPECT_EQ(hits, 1);
}

TEST(Z4, RejectsNonpositiveBound) { EXPECT_THROW(search_z4(0), std::invalid_argument); }

TEST(Z3, Bound21Survivors) {
  auto r = search_z3(21);
  EXPECT_EQ(param_strings(r), (std::vector<std::string>{"n=-1, t=24, c=9", "n=0, t=3, c=3"}));
  for (const auto& s : r.survivors) {
    EXPECT_EQ(s.group, "<(012)>");
    EXPECT_TRUE(s.notes.empty());
    expect_values_reproduced(s);
    EXPECT_EQ(z3_discriminant(value(s.params, "n").get_num().get_si(), value(s.params, "c").get_num().get_si()),
              Z(value(s.params, "t").get_num() * value(s.params, "t").get_num()));
  }
}

TEST(Z3, PrimarySurvivorIsThePsu27Quotient) {
  auto r = search_z3(2);
  ASSERT_EQ(r.survivors.size(), 1u);
  const auto& d = *r.survivors[0].data;
  // d1 = 2cos(pi/9) with minimal polynomial x^3 - 3x - 1, d2 = 1 + d1, d3 = d1^2 - 1
  EXPECT_EQ(charpoly(d.dims[1]), (std::vector<Q>{Q(-1), Q(-3), Q(0), Q(1)}));
  EXPECT_EQ(d.dims[2], d.dims[1] + Q(1));
  EXPECT_EQ(d.dims[3], d.dims[1] * d.dims[1] - Q(1));
  EXPECT_NEAR(d.dims[1].approx().real(), 2 * std::cos(M_PI / 9), 1e-12);
  expect_close(sorted_dims(d), su2_dims(7, 4));
  auto m = match_candidate(d);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry, "psu27-svec");
  EXPECT_TRUE(m->fusion_agrees);
}

TEST(Z3, SmallBounds) {
  EXPECT_TRUE(search_z3(1).survivors.empty());
  EXPECT_EQ(search_z3(2).survivors.size(), 1u);
  EXPECT_THROW(search_z3(0), std::invalid_argument);
}

TEST(Z3, ExtraSurvivorHasNoCatalogueMatch) {
  // passes every S-hat check but matches no known category; recorded, not hidden
  auto r = search_z3(21);
  const Survivor* extra = nullptr;
  for (const auto& s : r.survivors)
    if (value(s.params, "n") == -1) extra = &s;
  ASSERT_NE(extra, nullptr);
  auto v = verify_all(*extra->data);
  EXPECT_TRUE(v.pass());
  EXPECT_FALSE(match_candidate(*extra->data).has_value());
  auto ts = twist_scan(*extra->data, 30);
  EXPECT_EQ(ts.solutions, 0);
  // the PSU(2)_7 quotient finds its twists at order 9
  auto ctl = twist_scan(*search_z3(2).survivors[0].data, 9);
  EXPECT_GT(ctl.solutions, 0);
  EXPECT_EQ(ctl.first_order, 9);
}

TEST(Z3, WiderBoxAddsNothingAtBound21) {
  int hits = 0;
  for (long n = -40; n <= 40; ++n)
    for (long c = 1; c <= 400; ++c) {
      Z D = z3_discriminant(n, c);
      if (D <= 0 || !mpz_perfect_square_p(D.get_mpz_t())) continue;
      Z t;
      mpz_sqrt(t.get_mpz_t(), D.get_mpz_t());
      hits += z3_candidate(n, t.get_si(), c, 21).ok;
    }
  EXPECT_EQ(hits, 2);
}

TEST(Z3, NegativeCoefficientIsRejected) {
  auto v = z3_candidate(1, 8, 7, 100);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(value(v.values, "n111"), -2);
  EXPECT_EQ(v.filter, "n >= 0");
}

TEST(Stratum01, OnlyTheSo12Quotient) {
  auto r = search_01();
  ASSERT_EQ(r.survivors.size(), 1u);
  const auto& s = r.survivors[0];
  EXPECT_EQ(value(s.params, "t"), -1);
  EXPECT_EQ(value(s.params, "u"), 0);
  expect_close(sorted_dims(*s.data), {1, 1, 2, std::sqrt(6.0)});
  EXPECT_EQ(r.tallies.at("eps2=eps3=-1 survivors"), 0);
  EXPECT_GT(r.tallies.at("eps2=eps3=-1 pairs examined"), 0);
  auto m = match_candidate(*s.data);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry, "so12c");
}

TEST(Stratum01, NegativeCoefficientCandidate) {
  auto v = t_u_candidate(-2, 0);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.filter, "n222 nonnegative integer");
  EXPECT_EQ(value(v.values, "n222"), -1);
  EXPECT_TRUE(t_u_candidate(-1, 0).ok);
  EXPECT_FALSE(t_u_candidate(1, 0).ok);
}

TEST(Klein4, FsBoundAdmitsZeroOneTwo) {
  EXPECT_EQ(fs_admissible(20), (std::vector<int>{0, 1, 2}));
  // (m-2)(phi_m (m+1) + 1) in floating point agrees
  for (int m = 0; m <= 20; ++m) {
    double phi = (m + std::sqrt(m * m + 4.0)) / 2;
    EXPECT_EQ(fs_bound_holds(m), (m - 2) * (phi * (m + 1) + 1) <= 1e-12) << m;
  }
}

TEST(Klein4, SurvivorIsFibTimesPsu26) {
  auto r = search_klein4();
  ASSERT_EQ(r.survivors.size(), 1u);
  EXPECT_EQ(value(r.survivors[0].params, "m"), 1);
  EXPECT_EQ(value(r.survivors[0].params, "n"), 2);
  const double phi = (1 + std::sqrt(5.0)) / 2, s = 1 + std::sqrt(2.0);
  expect_close(sorted_dims(*r.survivors[0].data), {1, phi, s, phi * s});
  auto m = match_candidate(*r.survivors[0].data);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry, "fib-psu26");
}

TEST(Pairflip, BothCases) {
  auto r = search_0123_pairflip(14);
  EXPECT_EQ(param_strings(r), (std::vector<std::string>{"case=1, m=1, n=1", "case=1, m=2, n=2", "case=2, n=1, k=1, h=-1/2",
                                                         "case=2, n=2, k=2, h=-1"}));
  for (const auto& s : r.survivors) {
    EXPECT_EQ(s.group, "<(01)(23)>");
    if (auto c = case2_parameters(s)) {
      EXPECT_EQ(c->h, Q(-static_cast<long>(c->k)) / 2);
      // sqrt(n^2 + 4) = k sqrt(P)
      EXPECT_EQ(static_cast<long long>(c->n) * c->n + 4, c->k * c->k * c->P);
    }
  }
  match_to_catalogue(r);
  std::set<std::string> entries;
  for (const auto& s : r.survivors)
    if (s.match && s.match->fusion_agrees) entries.insert(s.match->entry);
  EXPECT_EQ(entries, (std::set<std::string>{"condensed-psu26sq", "fib-fib-svec", "sem-fib-svec", "sem-psu26"}));
}

TEST(Pairflip, RejectsTinyDimensionBound) { EXPECT_THROW(search_0123_pairflip(1), std::invalid_argument); }

TEST(TrivialAndNonSelfDual, TwoEach) {
  auto both = enumerate_trivial_and_nonselfdual();
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0].stratum, "<(0)>");
  EXPECT_EQ(both[0].survivors.size(), 2u);
  EXPECT_EQ(both[1].stratum, "non-self-dual");
  EXPECT_EQ(both[1].survivors.size(), 2u);
  for (const auto& r : both)
    for (const auto& s : r.survivors) EXPECT_TRUE(verify_all(*s.data).pass()) << s.param_string();
  EXPECT_EQ(sign_matrices().size(), 64u);
}

TEST(NonexistentStrata, EmptyAndFast) {
  auto t0 = std::chrono::steady_clock::now();
  auto rs = nonexistent_strata();
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
  ASSERT_EQ(rs.size(), 3u);
  for (const auto& r : rs) {
    EXPECT_TRUE(r.survivors.empty()) << r.stratum;
    EXPECT_FALSE(r.citation.empty());
  }
  EXPECT_EQ(rs[0].stratum, "<(123)>");
  EXPECT_EQ(rs[0].tallies.at("+-1 matrices with group <(123)>"), 0);
  EXPECT_EQ(fixed_zero_dimension_scan(10000), (std::vector<long>{1}));
}

TEST(RunStratum, DispatchesByLabel) {
  EXPECT_EQ(run_stratum("Z4", std::nullopt).survivors.size(), 1u);
  EXPECT_EQ(run_stratum("<(23)>", std::nullopt).survivors.size(), 0u);
  EXPECT_THROW(run_stratum("<(13)>", std::nullopt), std::invalid_argument);
}

TEST(Parallel, ThreadCountDoesNotChangeOutput) {
  SearchOptions one, four;
  four.threads = 4;
  EXPECT_EQ(dump(to_json(search_z4(116, one))), dump(to_json(search_z4(116, four))));
  EXPECT_EQ(dump(to_json(search_z3(21, one))), dump(to_json(search_z3(21, four))));
  EXPECT_EQ(dump(to_json(search_01(one))), dump(to_json(search_01(four))));
}

TEST(Reconcile, TenClassesAndOneUnmatchedSurvivor) {
  auto rec = reconcile_rank8({}, 12);
  EXPECT_EQ(rec.fusion_classes.size(), 10u);
  ASSERT_EQ(rec.unmatched.size(), 1u);
  EXPECT_EQ(rec.unmatched[0], "<(012)> n=-1, t=24, c=9");
}
