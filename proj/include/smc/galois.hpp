#pragma once
// Galois action on the columns of S-hat, its symmetry identities, and rank-4 strata.
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "smc/core.hpp"

namespace smc {

using Perm = std::vector<int>;

struct GaloisGroup {
  int r = 0;
  struct Member {
    int automorphism;  // first field automorphism realising the permutation
    Perm perm;
  };
  std::vector<Member> elements;  // elements[0] is the identity
  std::vector<int> generators;   // indices into elements
  int entry_field_degree = 0;    // [Q(S-hat):Q]
  bool complete() const { return static_cast<int>(elements.size()) == entry_field_degree; }
  std::vector<Perm> perms() const {
    std::vector<Perm> p;
    for (const auto& e : elements) p.push_back(e.perm);
    return p;
  }
};

struct NoMatchingPermutation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm invert(const Perm& a) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

inline Perm identity_perm(int r) {
  Perm p(r);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// all products of the generators
inline std::vector<Perm> generate(const std::vector<Perm>& gens, int r) {
  std::set<Perm> seen{identity_perm(r)};
  std::vector<Perm> todo{identity_perm(r)};
  while (!todo.empty()) {
    Perm p = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm q = compose(g, p);
      if (seen.insert(q).second) todo.push_back(q);
    }
  }
  return {seen.begin(), seen.end()};
}

inline GaloisGroup compute_galois_group(const SMCData& d) {
  const int r = d.r;
  GaloisGroup g;
  g.r = r;
  // normalised columns S_ik / S_0k
  std::vector<std::vector<Element>> col(r);
  for (int k = 0; k < r; ++k) {
    Element inv = d.hatS[0][k].inverse();
    for (int i = 0; i < r; ++i) col[k].push_back(d.hatS[i][k] * inv);
  }
  std::set<Perm> seen;
  for (int a = 0; a < d.field->num_automorphisms(); ++a) {
    Perm p(r, -1);
    for (int k = 0; k < r; ++k) {
      std::vector<Element> img;
      for (int i = 0; i < r; ++i) img.push_back(col[k][i].apply(a));
      for (int t = 0; t < r; ++t) {
        if (img != col[t]) continue;
        if (p[k] >= 0) throw NoMatchingPermutation("ambiguous permutation: columns " + std::to_string(p[k]) + " and " + std::to_string(t) + " coincide");
        p[k] = t;
      }
      if (p[k] < 0)
        throw NoMatchingPermutation("automorphism " + d.field->automorphism(a).name + " maps column " + std::to_string(k) +
                                    " outside the normalised columns");
    }
    if (seen.insert(p).second) g.elements.push_back({a, p});
  }
  std::sort(g.elements.begin(), g.elements.end(), [](const auto& x, const auto& y) { return x.perm < y.perm; });
  // greedy generating set
  std::vector<Perm> gens;
  for (size_t e = 0; e < g.elements.size(); ++e) {
    if (generate(gens, r).size() == g.elements.size()) break;
    auto span = generate(gens, r);
    if (std::find(span.begin(), span.end(), g.elements[e].perm) == span.end()) {
      gens.push_back(g.elements[e].perm);
      g.generators.push_back(static_cast<int>(e));
    }
  }
  std::vector<Element> entries;
  for (const auto& row : d.hatS)
    for (const auto& x : row) entries.push_back(x);
  g.entry_field_degree = generated_degree(d.field, entries);
  return g;
}

inline Report check_group_properties(const SMCData& d, const GaloisGroup& g) {
  Report rep{"Galois group structure", {}, {}};
  auto ps = g.perms();
  std::set<Perm> all(ps.begin(), ps.end());
  if (!all.count(identity_perm(g.r))) rep.fail("identity present", {});
  for (const auto& a : ps)
    for (const auto& b : ps) {
      if (compose(a, b) != compose(b, a)) rep.fail("abelian", {});
      if (!all.count(compose(a, b))) rep.fail("closed", {});
    }
  for (const auto& p : ps)
    for (int k = 0; k < g.r; ++k)
      if (d.dual[p[k]] != p[d.dual[k]]) rep.fail("sigma(k)* = sigma(k*)", {k});
  if (!g.complete())
    rep.fail("|G| = [Q(S-hat):Q]", {static_cast<int>(g.elements.size()), g.entry_field_degree});
  if (auto c = d.field->conjugation()) {
    // S_{k, sigma(0)} is real
    for (const auto& p : ps)
      for (int k = 0; k < g.r; ++k)
        if (d.hatS[k][p[0]].apply(*c) != d.hatS[k][p[0]]) rep.fail("S_{k,sigma(0)} real", {k, p[0]});
  }
  return rep;
}

// sigma(S_jk) = eps_sigma(k) S_{j,sigma(k)} / d_{sigma(0)} with eps = S_{k,sigma(0)}/d_{sigma(k)} in {+1,-1},
// and the column symmetry S_jk = eps(j) eps(sigma^-1 k) S_{sigma(j), sigma^-1(k)}.
struct SymmetryResult {
  Report report;
  std::vector<std::vector<int>> signs;  // per group element, eps(k)
  int unsigned_mismatches = 0;          // entries where S_jk != S_{sigma j, sigma^-1 k} literally
};

inline SymmetryResult check_s_symmetry(const SMCData& d, const GaloisGroup& g) {
  SymmetryResult out{{"Galois symmetries of S-hat", {}, {}}, {}, 0};
  const int r = d.r;
  for (size_t e = 0; e < g.elements.size(); ++e) {
    const auto& p = g.elements[e].perm;
    const int a = g.elements[e].automorphism;
    Perm pinv = invert(p);
    std::vector<int> eps(r, 0);
    for (int k = 0; k < r; ++k) {
      Element ratio = d.hatS[k][p[0]] / d.dims[p[k]];
      if (ratio == Q(1)) eps[k] = 1;
      else if (ratio == Q(-1)) eps[k] = -1;
      else out.report.fail("S_{k,sigma(0)}/d_{sigma(k)} = +-1", {static_cast<int>(e), k}, ratio.str());
    }
    out.signs.push_back(eps);
    if (std::count(eps.begin(), eps.end(), 0)) continue;
    const Element dinv = d.dims[p[0]].inverse();
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        Element lhs = d.hatS[j][k].apply(a);
        Element rhs = d.hatS[j][p[k]] * dinv * Q(eps[k]);
        if (lhs != rhs) out.report.fail("sigma(S_jk) = eps_k S_{j,sigma(k)}/d_{sigma(0)}", {static_cast<int>(e), j, k}, (lhs - rhs).str());
        Element sym = d.hatS[p[j]][pinv[k]] * Q(eps[j] * eps[pinv[k]]);
        if (d.hatS[j][k] != sym) out.report.fail("S_jk = eps_j eps_{sigma^-1 k} S_{sigma j, sigma^-1 k}", {static_cast<int>(e), j, k});
        if (d.hatS[j][k] != d.hatS[p[j]][pinv[k]]) ++out.unsigned_mismatches;
      }
  }
  out.report.notes.push_back("entries where the unsigned form S_jk = S_{sigma j, sigma^-1 k} differs: " +
                             std::to_string(out.unsigned_mismatches));
  return out;
}

// ---------------------------------------------------------------------------
// strata of abelian subgroups of S_4 with 0 distinguished

inline std::string cycle_string(const Perm& p) {
  std::string s;
  std::vector<bool> done(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    for (size_t j = i; !done[j]; j = p[j]) {
      done[j] = true;
      s += std::to_string(j);
    }
    s += ")";
  }
  return s.empty() ? "(0)" : s;
}

// smallest sorted element list over relabelings fixing 0
inline std::vector<Perm> canonical_form(const std::vector<Perm>& group, int r) {
  Perm tau = identity_perm(r);
  std::vector<Perm> best;
  bool first = true;
  do {
    if (tau[0] != 0) continue;
    Perm ti = invert(tau);
    std::vector<Perm> conj;
    for (const auto& g : group) conj.push_back(compose(tau, compose(g, ti)));
    std::sort(conj.begin(), conj.end());
    if (first || conj < best) best = conj;
    first = false;
  } while (std::next_permutation(tau.begin() + 1, tau.end()));
  return best;
}

inline Perm parse_cycles(const std::string& s, int r) {
  Perm p = identity_perm(r);
  std::vector<int> cyc;
  for (char c : s) {
    if (c == '(') cyc.clear();
    else if (c >= '0' && c <= '9') cyc.push_back(c - '0');
    else if (c == ')') {
      for (size_t k = 0; k < cyc.size(); ++k) p.at(cyc[k]) = cyc[(k + 1) % cyc.size()];
    }
  }
  return p;
}

struct StratumInfo {
  std::string label;   // as printed in the table of abelian subgroups of S_4
  std::string common;  // short alias
  std::vector<std::string> generators;
};

inline const std::vector<StratumInfo>& rank4_strata() {
  static const std::vector<StratumInfo> s = {
      {"<(0)>", "trivial", {}},
      {"<(01)>", "Z2-01", {"(01)"}},
      {"<(23)>", "Z2-23", {"(23)"}},
      {"<(01)(23)>", "Z2-pairflip", {"(01)(23)"}},
      {"<(01)(23),(02)(13)>", "Klein4", {"(01)(23)", "(02)(13)"}},
      {"<(01),(23)>", "Z2xZ2", {"(01)", "(23)"}},
      {"<(012)>", "Z3", {"(012)"}},
      {"<(123)>", "Z3-fixed", {"(123)"}},
      {"<(0123)>", "Z4", {"(0123)"}},
  };
  return s;
}

struct NotRank4 : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::string stratum_of(const std::vector<Perm>& group, int r) {
  if (r != 4) throw NotRank4("strata are tabulated for r = 4 only");
  auto key = canonical_form(group, r);
  for (const auto& s : rank4_strata()) {
    std::vector<Perm> gens;
    for (const auto& c : s.generators) gens.push_back(parse_cycles(c, r));
    if (canonical_form(generate(gens, r), r) == key) return s.label;
  }
  throw std::logic_error("group is not an abelian subgroup of S_4");
}

inline std::string stratum_of(const GaloisGroup& g) { return stratum_of(g.perms(), g.r); }

// Accepts table labels, unicode angle brackets, and the aliases above.
inline std::string normalize_stratum(std::string s) {
  auto replace_all = [&](const std::string& a, const std::string& b) {
    for (size_t p = s.find(a); p != std::string::npos; p = s.find(a, p + b.size())) s.replace(p, a.size(), b);
  };
  replace_all("⟨", "<");
  replace_all("⟩", ">");
  replace_all(" ", "");
  for (const auto& st : rank4_strata())
    if (s == st.label || s == st.common) return st.label;
  if (s == "Klein-four" || s == "V4") return "<(01)(23),(02)(13)>";
  if (s == "<(02)(13),(01)(23)>") return "<(01)(23),(02)(13)>";
  if (s == "nonselfdual" || s == "non-self-dual") return "non-self-dual";
  throw std::invalid_argument("unknown stratum label '" + s + "'");
}

inline std::string stratum_alias(const std::string& label) {
  for (const auto& st : rank4_strata())
    if (st.label == label) return st.common;
  return label;
}

}  // namespace smc
