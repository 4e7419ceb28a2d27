#pragma once
// Exact data for known super-modular categories of rank 4, 6 and 8.
#include <sstream>

#include "smc/fields.hpp"
#include "smc/fusionsplit.hpp"
#include "smc/galois.hpp"

namespace smc {

struct CatalogueEntry {
  SMCData data;                   // hatT and fusion populated
  std::string source;             // how the category arises
  std::vector<std::string> tags;  // "rank 8", "prime" / "split" / "product", "self-dual" / "non-self-dual"
  std::string stratum;            // Galois stratum (rank 4 quotients) or a generator listing
  std::string fusion_class;
  bool prime = false;
  std::vector<Q> theta_turns;     // theta_i = exp(2 pi i t_i)
  bool has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

struct UnknownEntry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// pointed modular data

struct DegenerateForm {
  std::vector<int> transparent;  // nonzero labels braiding trivially with everything
};

struct PointedData {
  ModularData data;
  std::optional<DegenerateForm> degenerate;  // set when the form is not modular; data is then only premodular
};

// S_ab = Q(a+b) / (Q(a) Q(b)), theta_a = Q(a); add[a][b] is the group law, label 0 the identity.
inline PointedData pointed_from_form(const std::vector<std::vector<int>>& add, const std::vector<Element>& q,
                                     std::string name = "C(A,Q)") {
  const int n = static_cast<int>(add.size());
  if (static_cast<int>(q.size()) != n) throw std::invalid_argument("quadratic form has the wrong length");
  if (!(q[0] == Q(1))) throw std::invalid_argument("Q(0) must be 1");
  std::vector<int> neg(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (add[a][b] == 0) neg[a] = b;
  for (int a = 0; a < n; ++a)
    if (neg[a] < 0 || q[a] != q[neg[a]]) throw std::invalid_argument("Q(a) != Q(-a) at a = " + std::to_string(a));
  PointedData out;
  Matrix S(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) S[a].push_back(q[add[a][b]] / (q[a] * q[b]));
  // the bilinear form must be a bicharacter
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (S[a][add[b][c]] != S[a][b] * S[a][c]) throw std::invalid_argument("Q is not quadratic: S is not a bicharacter");
  DegenerateForm deg;
  for (int a = 1; a < n; ++a) {
    bool trivial = true;
    for (int b = 0; b < n && trivial; ++b) trivial = S[a][b] == Q(1);
    if (trivial) deg.transparent.push_back(a);
  }
  if (!deg.transparent.empty()) out.degenerate = deg;
  out.data = {std::move(name), std::move(S), q, group_ring(add)};
  return out;
}

inline std::vector<std::vector<int>> cyclic_table(int n, const std::vector<int>& order) {
  std::vector<int> pos(n);
  for (int t = 0; t < n; ++t) pos[order[t]] = t;
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add[a][b] = pos[(order[a] + order[b]) % n];
  return add;
}

inline std::vector<std::vector<int>> klein_table(const std::vector<int>& order) {
  std::vector<int> pos(4);
  for (int t = 0; t < 4; ++t) pos[order[t]] = t;
  std::vector<std::vector<int>> add(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) add[a][b] = pos[order[a] ^ order[b]];
  return add;
}

// ---------------------------------------------------------------------------
// building blocks

namespace catalogue_detail {

inline ModularData semion(const CyclotomicField& k) {
  auto one = k.one();
  return pointed_from_form({{0, 1}, {1, 0}}, {one, k["i"]}, "Sem").data;
}

inline ModularData fibonacci(const CyclotomicField& k) {
  auto one = k.one();
  auto phi = k["phi"];
  return {"Fib", {{one, phi}, {phi, -one}}, {one, k.root_of_unity(Q(2, 5))}, su2_integer_spin_ring(3, {0, 1})};
}

inline ModularData psu2_7(const CyclotomicField& k) {
  auto one = k.one();
  auto d = k["d"];
  auto e = d * d - Q(1);
  Matrix S = {{one, d, d + Q(1), e}, {d, -(d + Q(1)), -one, e}, {d + Q(1), -one, d, -e}, {e, e, -e, constant(k.field, Q(0))}};
  std::vector<Element> T;
  for (Q t : {Q(0), Q(1, 3), Q(2, 3), Q(2, 9)}) T.push_back(k.root_of_unity(t));
  return {"PSU(2)_7", S, T, su2_integer_spin_ring(7, {0, 3, 2, 1})};
}

inline SMCData svec(const CyclotomicField& k) {
  SMCData d = make_data("sVec", {{k.one()}}, std::vector<Element>{k.one()}, std::vector<int>{0});
  d.fusion = psu2_family_fusion(0);
  return d;
}

inline SMCData psu2_6(const CyclotomicField& k) {
  auto one = k.one();
  auto a = one + k["sqrt2"];
  SMCData d = make_data("PSU(2)_6", {{one, a}, {a, -one}}, std::vector<Element>{one, k["i"]});
  d.fusion = to_standard(psu2_family_fusion(1));
  return d;
}

inline std::string group_label(const SMCData& d, const GaloisGroup& g) {
  if (!d.self_dual()) return "non-self-dual";
  if (d.r == 4) return stratum_of(g);
  std::string s = "<";
  for (size_t t = 0; t < g.generators.size(); ++t) s += (t ? "," : "") + cycle_string(g.elements[g.generators[t]].perm);
  return g.generators.empty() ? "<(0)>" : s + ">";
}

struct Spec {
  std::string name, field;
  std::function<SMCData(const CyclotomicField&)> build;
  std::vector<Q> turns;
  std::string source, fusion_class, stratum;
  std::vector<std::string> tags;
};

inline FusionTensor from_rules(int r, const std::vector<ProductRule>& rules) { return fusion_from_products(r, rules); }

inline const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = [] {
    std::vector<Spec> v;
    // rank 4
    v.push_back({"psu2-6", "Q(sqrt2,i)", psu2_6, {Q(0), Q(1, 4)}, "integer-spin part of SU(2)_6", "PSU(2)_6", "<(01)>",
                 {"rank 4", "prime", "tabulated"}});
    v.push_back({"fib-svec", "Q(zeta5)", [](const CyclotomicField& k) { return deligne_product(fibonacci(k), svec(k)); },
                 {Q(0), Q(2, 5)}, "Fibonacci x sVec", "Fib x sVec", "<(01)>", {"rank 4", "split"}});
    v.push_back({"pointed-z2", "Q(i)", [](const CyclotomicField& k) { return deligne_product(semion(k), svec(k)); },
                 {Q(0), Q(1, 4)}, "semion x sVec", "Z2 x sVec", "<(0)>", {"rank 4", "split", "pointed"}});
    // rank 6
    v.push_back({"psu2-10", "Q(sqrt3,i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one();
                   auto s3 = k["sqrt3"];
                   auto a = s3 + Q(2), b = s3 + Q(1);
                   SMCData d = make_data("PSU(2)_10", {{one, a, b}, {a, one, -b}, {b, -b, b}});
                   d.fusion = relabel_quotient(to_standard(psu2_family_fusion(2)), {0, 2, 1});
                   return d;
                 },
                 {Q(0), Q(1, 2), Q(1, 6)}, "integer-spin part of SU(2)_10", "PSU(2)_10", "", {"rank 6", "prime", "tabulated"}});
    // rank 8, prime
    v.push_back({"psu2-14", "Q(sqrt2,sqrt(2+sqrt2),i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one();
                   auto s2 = k["sqrt2"], x = k["x"];
                   auto a = one + x, b = one + s2 + x, c = one + s2 + s2 * x;
                   SMCData d = make_data("PSU(2)_14", {{one, a, b, c}, {a, c, one, -b}, {b, one, -c, a}, {c, -b, a, -one}});
                   d.fusion = to_standard(psu2_family_fusion(3));
                   return d;
                 },
                 {Q(0), Q(1, 8), Q(3, 8), Q(3, 4)}, "integer-spin part of SU(2)_14", "PSU(2)_14", "<(0123)>",
                 {"rank 8", "prime", "tabulated"}});
    v.push_back({"so12c", "Q(sqrt2,sqrt(2+sqrt2),sqrt3,i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one(), zero = constant(k.field, Q(0)), two = constant(k.field, Q(2));
                   auto s6 = k["sqrt2"] * k["sqrt3"];
                   SMCData d = make_data("SO(12)_2 centralizer",
                                         {{one, one, two, s6}, {one, one, two, -s6}, {two, two, -two, zero}, {s6, -s6, zero, zero}});
                   d.fusion = from_rules(4, {{1, 1, {{0, 1}}},
                                             {2, 2, {{0, 1}, {5, 1}, {2, 1}}},
                                             {3, 3, {{0, 1}, {1, 1}, {2, 1}, {6, 1}}},
                                             {1, 2, {{6, 1}}},
                                             {1, 3, {{3, 1}}},
                                             {2, 3, {{3, 1}, {7, 1}}}});
                   // the rules above name the invertible of twist -1 X1; the twists below give X1 twist +1
                   d.fusion = swap_gauge(*d.fusion, {false, true, false, false});
                   return d;
                 },
                 {Q(0), Q(0), Q(1, 3), Q(3, 16)}, "centralizer of a fermion in SO(12)_2", "SO(12)_2 centralizer", "<(01)>",
                 {"rank 8", "prime", "tabulated"}});
    v.push_back({"condensed-psu26sq", "Q(sqrt2,i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one();
                   auto a = one + k["sqrt2"], b = a * a;
                   SMCData d = make_data("[PSU(2)_6 x PSU(2)_6]_Z2", {{one, b, a, a}, {b, one, -a, -a}, {a, -a, -one, b}, {a, -a, b, -one}});
                   d.fusion = from_rules(4, {{1, 1, {{0, 1}, {1, 2}, {5, 2}, {2, 1}, {6, 1}, {3, 1}, {7, 1}}},
                                             {1, 2, {{3, 1}, {1, 1}, {5, 1}}},
                                             {1, 3, {{2, 1}, {1, 1}, {5, 1}}},
                                             {2, 3, {{1, 1}}},
                                             {2, 2, {{0, 1}, {2, 1}, {6, 1}}},
                                             {3, 3, {{0, 1}, {3, 1}, {7, 1}}}});
                   return d;
                 },
                 {Q(0), Q(1, 2), Q(1, 4), Q(1, 4)}, "Z2 condensation of PSU(2)_6 x PSU(2)_6", "[PSU(2)_6 x PSU(2)_6]_Z2",
                 "<(01)(23)>", {"rank 8", "prime", "tabulated"}});
    // rank 8, products
    v.push_back({"pointed-toric", "Q(i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one();
                   auto p = pointed_from_form(klein_table({0, 1, 2, 3}), {one, one, one, -one}, "toric code");
                   return deligne_product(p.data, svec(k));
                 },
                 {Q(0), Q(0), Q(0), Q(1, 2)}, "toric code x sVec", "Z2xZ2 x sVec", "<(0)>", {"rank 8", "split", "pointed"}});
    v.push_back({"pointed-sem-sem", "Q(i)",
                 [](const CyclotomicField& k) {
                   auto one = k.one(), i = k["i"];
                   // labels 0, s1, s1 s2, s2
                   auto p = pointed_from_form(klein_table({0, 1, 3, 2}), {one, i, -one, i}, "Sem x Sem");
                   return deligne_product(p.data, svec(k));
                 },
                 {Q(0), Q(1, 4), Q(1, 2), Q(1, 4)}, "semion x semion x sVec", "Z2xZ2 x sVec", "<(0)>",
                 {"rank 8", "split", "pointed"}});
    v.push_back({"pointed-z4", "Q(zeta8)",
                 [](const CyclotomicField& k) {
                   std::vector<Element> q;
                   for (Q t : {Q(0), Q(1, 2), Q(1, 8), Q(1, 8)}) q.push_back(k.root_of_unity(t));
                   auto p = pointed_from_form(cyclic_table(4, {0, 2, 1, 3}), q, "C(Z4,Q)");
                   return deligne_product(p.data, svec(k));
                 },
                 {Q(0), Q(1, 2), Q(1, 8), Q(1, 8)}, "C(Z4,Q) x sVec", "Z4 x sVec", "non-self-dual",
                 {"rank 8", "split", "pointed"}});
    v.push_back({"fib-psu26", "Q(zeta5,i,sqrt2)",
                 [](const CyclotomicField& k) { return permute_data(deligne_product(fibonacci(k), psu2_6(k)), {0, 3, 2, 1}); },
                 {Q(0), Q(13, 20), Q(2, 5), Q(1, 4)}, "Fibonacci x PSU(2)_6", "Fib x PSU(2)_6",
                 "<(01)(23),(02)(13)>", {"rank 8", "product"}});
    v.push_back({"psu27-svec", "Q(zeta9)", [](const CyclotomicField& k) { return deligne_product(psu2_7(k), svec(k)); },
                 {Q(0), Q(1, 3), Q(2, 3), Q(2, 9)}, "PSU(2)_7 x sVec", "PSU(2)_7 x sVec", "<(012)>", {"rank 8", "split"}});
    v.push_back({"fib-fib-svec", "Q(zeta5)",
                 [](const CyclotomicField& k) {
                   return permute_data(deligne_product(modular_product(fibonacci(k), fibonacci(k)), svec(k)), {0, 3, 2, 1});
                 },
                 {Q(0), Q(4, 5), Q(2, 5), Q(2, 5)}, "Fibonacci x Fibonacci x sVec", "Fib x Fib x sVec", "<(01)(23)>",
                 {"rank 8", "split"}});
    v.push_back({"sem-fib-svec", "Q(zeta5,i)",
                 [](const CyclotomicField& k) { return deligne_product(modular_product(semion(k), fibonacci(k)), svec(k)); },
                 {Q(0), Q(2, 5), Q(1, 4), Q(13, 20)}, "semion x Fibonacci x sVec", "Z2 x Fib x sVec", "<(01)(23)>",
                 {"rank 8", "split"}});
    v.push_back({"sem-psu26", "Q(sqrt2,i)", [](const CyclotomicField& k) { return deligne_product(semion(k), psu2_6(k)); },
                 {Q(0), Q(1, 4), Q(1, 4), Q(1, 2)}, "semion x PSU(2)_6", "Z2 x PSU(2)_6", "<(01)(23)>", {"rank 8", "product"}});
    return v;
  }();
  return all;
}

inline CatalogueEntry build(const Spec& s) {
  const auto& k = named_field(s.field);
  CatalogueEntry e;
  e.data = s.build(k);
  e.data.name = s.name;
  if (static_cast<int>(s.turns.size()) != e.data.r) throw std::logic_error(s.name + ": twist list has the wrong length");
  std::vector<Element> T;
  for (const auto& t : s.turns) T.push_back(k.root_of_unity(t));
  if (e.data.hatT && *e.data.hatT != T) throw std::logic_error(s.name + ": twists disagree with the product of the factors");
  e.data.hatT = T;
  e.theta_turns = s.turns;
  e.source = s.source;
  e.fusion_class = s.fusion_class;
  e.tags = s.tags;
  e.tags.push_back(e.data.self_dual() ? "self-dual" : "non-self-dual");
  e.prime = e.has_tag("prime");
  e.stratum = s.stratum.empty() ? group_label(e.data, compute_galois_group(e.data)) : s.stratum;
  return e;
}

}  // namespace catalogue_detail

inline std::vector<std::string> entry_names() {
  std::vector<std::string> n;
  for (const auto& s : catalogue_detail::specs()) n.push_back(s.name);
  return n;
}

// Entries are built on first use and cached.
inline const CatalogueEntry& load_entry(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, CatalogueEntry> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  for (const auto& s : catalogue_detail::specs())
    if (s.name == name) return cache.emplace(name, catalogue_detail::build(s)).first->second;
  throw UnknownEntry("no catalogue entry named '" + name + "'");
}

// Comma-separated filter: each term must equal a tag, the stratum (any accepted spelling) or the name.
inline std::vector<std::string> list_entries(const std::string& filter = "") {
  std::vector<std::string> terms;
  std::stringstream ss(filter);
  for (std::string t; std::getline(ss, t, ',');) {
    t.erase(0, t.find_first_not_of(' '));
    t.erase(t.find_last_not_of(' ') + 1);
    if (!t.empty()) terms.push_back(t);
  }
  std::vector<std::string> out;
  for (const auto& s : catalogue_detail::specs()) {
    const auto& e = load_entry(s.name);
    bool ok = true;
    for (const auto& t : terms) {
      bool hit = e.has_tag(t) || t == e.data.name || t == e.stratum || t == e.fusion_class;
      if (!hit) {
        try {
          hit = normalize_stratum(t) == e.stratum;
        } catch (const std::invalid_argument&) {
        }
      }
      ok = ok && hit;
    }
    if (ok) out.push_back(s.name);
  }
  return out;
}

}  // namespace smc
