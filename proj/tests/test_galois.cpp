#include <gtest/gtest.h>

#include <random>

#include "smc/verify.hpp"

using namespace smc;

namespace {

std::set<Perm> perm_set(const GaloisGroup& g) {
  auto p = g.perms();
  return {p.begin(), p.end()};
}

}  // namespace

TEST(GaloisGroup, Psu26SwapsItsTwoColumns) {
  // sqrt2 -> -sqrt2 sends (1, 1+sqrt2) to (1, 1-sqrt2) = column 1 normalised by 1+sqrt2
  const auto& d = load_entry("psu2-6").data;
  auto g = compute_galois_group(d);
  EXPECT_EQ(perm_set(g), (std::set<Perm>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(g.complete());
  EXPECT_EQ(g.elements[0].perm, identity_perm(2));
}

TEST(GaloisGroup, CatalogueStrataAreReproduced) {
  for (const auto& name : entry_names()) {
    const auto& e = load_entry(name);
    if (e.stratum.empty()) continue;
    auto g = compute_galois_group(e.data);
    EXPECT_TRUE(check_group_properties(e.data, g).pass()) << name;
    EXPECT_EQ(catalogue_detail::group_label(e.data, g), e.stratum) << name;
  }
}

TEST(GaloisGroup, Rank8QuotientStrata) {
  auto label = [](const std::string& n) {
    const auto& d = load_entry(n).data;
    return catalogue_detail::group_label(d, compute_galois_group(d));
  };
  EXPECT_EQ(label("psu2-14"), "<(0123)>");
  EXPECT_EQ(label("so12c"), "<(01)>");
  EXPECT_EQ(label("fib-psu26"), "<(01)(23),(02)(13)>");
  EXPECT_EQ(label("psu27-svec"), "<(012)>");
  EXPECT_EQ(label("pointed-toric"), "<(0)>");
  EXPECT_EQ(label("pointed-z4"), "non-self-dual");
}

TEST(GaloisGroup, OrderEqualsEntryFieldDegree) {
  for (const auto& name : entry_names()) {
    auto g = compute_galois_group(load_entry(name).data);
    EXPECT_EQ(static_cast<int>(g.elements.size()), g.entry_field_degree) << name;
  }
}

TEST(GaloisGroup, StratumIsInvariantUnderRelabelingFixingUnit) {
  std::mt19937 rng(11);
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    if (d.r != 4 || !d.self_dual()) continue;
    const auto base = stratum_of(compute_galois_group(d));
    Perm p = identity_perm(4);
    for (int k = 0; k < 6; ++k) {
      std::shuffle(p.begin() + 1, p.end(), rng);
      auto q = permute_data(d, p);
      EXPECT_EQ(stratum_of(compute_galois_group(q)), base) << name;
    }
  }
}

TEST(GaloisSymmetry, SignedIdentitiesHoldOnEveryEntry) {
  for (const auto& name : entry_names()) {
    const auto& d = load_entry(name).data;
    auto s = check_s_symmetry(d, compute_galois_group(d));
    EXPECT_TRUE(s.report.pass()) << name;
    for (const auto& eps : s.signs)
      for (int e : eps) EXPECT_TRUE(e == 1 || e == -1) << name;
  }
}

TEST(GaloisSymmetry, UnsignedFormFailsOnPsu26) {
  const auto& d = load_entry("psu2-6").data;
  auto s = check_s_symmetry(d, compute_galois_group(d));
  EXPECT_EQ(s.unsigned_mismatches, 2);
}

TEST(GaloisSymmetry, Sqrt2ConjugationInZeta8) {
  // zeta8 -> zeta8^3 sends sqrt2 = zeta8 + zeta8^-1 to -sqrt2
  const auto& k = named_field("Q(zeta8)");
  const auto& f = *k.field;
  auto sqrt2 = k.zeta + k.zeta.inverse();
  ASSERT_EQ(sqrt2 * sqrt2, Q(2));
  bool found = false;
  for (int a = 0; a < f.num_automorphisms(); ++a)
    if (k.zeta.apply(a) == k.zeta.pow(3)) {
      found = true;
      EXPECT_EQ(sqrt2.apply(a), -sqrt2);
    }
  EXPECT_TRUE(found);
}

TEST(GaloisSymmetry, BrokenEntryIsReported) {
  auto d = load_entry("psu2-6").data;
  d.hatS[1][1] = -d.hatS[1][1] + Q(2);
  bool failed = false;
  try {
    auto g = compute_galois_group(d);
    failed = !check_s_symmetry(d, g).report.pass() || !check_group_properties(d, g).pass();
  } catch (const NoMatchingPermutation&) {
    failed = true;
  }
  EXPECT_TRUE(failed);
}

TEST(Strata, TableHasNineClasses) {
  const auto& t = rank4_strata();
  EXPECT_EQ(t.size(), 9u);
  // pairwise distinct up to relabeling fixing 0
  std::set<std::vector<Perm>> forms;
  for (const auto& s : t) {
    std::vector<Perm> gens;
    for (const auto& c : s.generators) gens.push_back(parse_cycles(c, 4));
    forms.insert(canonical_form(generate(gens, 4), 4));
  }
  EXPECT_EQ(forms.size(), 9u);
}

TEST(Strata, EveryAbelianSubgroupOfS4IsClassified) {
  std::vector<Perm> all;
  Perm p = identity_perm(4);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  int abelian = 0;
  for (const auto& a : all)
    for (const auto& b : all) {
      auto g = generate({a, b}, 4);
      bool ab = true;
      for (const auto& x : g)
        for (const auto& y : g) ab = ab && compose(x, y) == compose(y, x);
      if (!ab) continue;
      ++abelian;
      EXPECT_NO_THROW(stratum_of(g, 4));
    }
  EXPECT_GT(abelian, 0);
}

TEST(Strata, RelabeledKleinIsKlein) {
  auto g = generate({parse_cycles("(02)(13)", 4), parse_cycles("(03)(12)", 4)}, 4);
  EXPECT_EQ(stratum_of(g, 4), "<(01)(23),(02)(13)>");
  EXPECT_EQ(stratum_of(generate({parse_cycles("(02)", 4)}, 4), 4), "<(01)>");
  EXPECT_EQ(stratum_of(generate({parse_cycles("(13)", 4)}, 4), 4), "<(23)>");
  EXPECT_EQ(stratum_of(generate({parse_cycles("(0321)", 4)}, 4), 4), "<(0123)>");
  EXPECT_THROW(stratum_of(generate({parse_cycles("(01)", 3)}, 3), 3), NotRank4);
}

TEST(Strata, LabelsAndAliases) {
  EXPECT_EQ(normalize_stratum("Z4"), "<(0123)>");
  EXPECT_EQ(normalize_stratum("⟨(0123)⟩"), "<(0123)>");
  EXPECT_EQ(normalize_stratum("<(01)(23), (02)(13)>"), "<(01)(23),(02)(13)>");
  EXPECT_EQ(normalize_stratum("Klein4"), "<(01)(23),(02)(13)>");
  EXPECT_EQ(normalize_stratum("trivial"), "<(0)>");
  EXPECT_EQ(normalize_stratum("nonselfdual"), "non-self-dual");
  EXPECT_THROW(normalize_stratum("<(13)>"), std::invalid_argument);
  EXPECT_EQ(stratum_alias("<(012)>"), "Z3");
  for (const auto& s : rank4_strata()) EXPECT_EQ(normalize_stratum(s.common), s.label);
}

TEST(Strata, CycleStringRoundTrip) {
  for (const auto& s : rank4_strata())
    for (const auto& c : s.generators) EXPECT_EQ(cycle_string(parse_cycles(c, 4)), c);
  EXPECT_EQ(cycle_string(identity_perm(4)), "(0)");
}
