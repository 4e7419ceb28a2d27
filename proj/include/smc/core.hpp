#pragma once
// Fermionic-quotient data (S-hat, T-hat, dims) and the axiom checkers run on it.
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smc/numberfield.hpp"

namespace smc {

using Matrix = std::vector<std::vector<Element>>;
using i64 = std::int64_t;

struct NaiveFusion {
  int r = 0;
  std::vector<i64> n;

  NaiveFusion() = default;
  explicit NaiveFusion(int rank) : r(rank), n(static_cast<size_t>(rank) * rank * rank, 0) {}
  i64& operator()(int i, int j, int k) { return n[(static_cast<size_t>(i) * r + j) * r + k]; }
  i64 operator()(int i, int j, int k) const { return n[(static_cast<size_t>(i) * r + j) * r + k]; }
  bool operator==(const NaiveFusion& o) const { return r == o.r && n == o.n; }
  i64 max_entry() const { return n.empty() ? 0 : *std::max_element(n.begin(), n.end()); }
};

// Full fusion rules on 2r labels. pi0 lists the quotient labels (pi0[0] == 0); fperm is X -> fX.
struct FusionTensor {
  int rank = 0;
  std::vector<int> fperm;
  std::vector<int> pi0;
  std::vector<i64> N;

  FusionTensor() = default;
  explicit FusionTensor(int rk) : rank(rk), N(static_cast<size_t>(rk) * rk * rk, 0) {}
  i64& operator()(int i, int j, int k) { return N[(static_cast<size_t>(i) * rank + j) * rank + k]; }
  i64 operator()(int i, int j, int k) const { return N[(static_cast<size_t>(i) * rank + j) * rank + k]; }
  int fermion() const { return fperm.at(0); }
  int r() const { return rank / 2; }
  // X* from N_{X,Y}^1; -1 if not unique
  int dual(int i) const {
    int d = -1;
    for (int j = 0; j < rank; ++j)
      if ((*this)(i, j, 0) != 0) {
        if (d >= 0 || (*this)(i, j, 0) != 1) return -1;
        d = j;
      }
    return d;
  }
  bool operator==(const FusionTensor& o) const { return rank == o.rank && fperm == o.fperm && pi0 == o.pi0 && N == o.N; }
};

// Layout used by the catalogue: labels 0..r-1 are the quotient labels, r+i is f*X_i.
inline FusionTensor standard_layout(int r) {
  FusionTensor t(2 * r);
  for (int i = 0; i < r; ++i) {
    t.fperm.push_back(i + r);
    t.pi0.push_back(i);
  }
  for (int i = 0; i < r; ++i) t.fperm.push_back(i);
  return t;
}

struct SMCData {
  std::string name;
  FieldPtr field;
  int r = 0;
  std::vector<int> dual;
  std::vector<Element> dims;
  Matrix hatS;
  std::optional<std::vector<Element>> hatT;
  std::optional<FusionTensor> fusion;

  bool self_dual() const {
    for (int i = 0; i < r; ++i)
      if (dual[i] != i) return false;
    return true;
  }
  // D^2/2 = sum of d_i^2
  Element half_D2() const {
    Element s = constant(field, Q(0));
    for (const auto& d : dims) s += d * d;
    return s;
  }
  Element D2() const { return half_D2() * Q(2); }
};

struct Violation {
  std::string identity;
  std::vector<int> where;
  std::string residual;
};

struct Report {
  std::string check;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool pass() const { return violations.empty(); }
  void fail(std::string identity, std::vector<int> where, std::string residual = "") {
    violations.push_back({std::move(identity), std::move(where), std::move(residual)});
  }
};

struct NonIntegralFusion : std::runtime_error {
  int i, j, k;
  std::string value;
  NonIntegralFusion(int i_, int j_, int k_, std::string v)
      : std::runtime_error("naive fusion coefficient N(" + std::to_string(i_) + "," + std::to_string(j_) + "," +
                           std::to_string(k_) + ") = " + v + " is not a nonnegative integer"),
        i(i_), j(j_), k(k_), value(std::move(v)) {}
};

struct FieldTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// construction

// dual(j) = the column equal to the complex conjugate of column j
inline std::vector<int> derive_dual(const Matrix& S) {
  const int r = static_cast<int>(S.size());
  const FieldPtr& f = S[0][0].field();
  std::vector<int> dual(r, -1);
  auto conj = f->conjugation();
  if (!conj) throw FieldError("cannot derive duality: field declares no complex conjugation");
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r && dual[j] < 0; ++k) {
      bool same = true;
      for (int i = 0; i < r && same; ++i) same = S[i][j].apply(*conj) == S[i][k];
      if (same) dual[j] = k;
    }
  for (int d : dual)
    if (d < 0) throw FieldError("cannot derive duality: a conjugate column is missing");
  return dual;
}

inline SMCData make_data(std::string name, Matrix S, std::optional<std::vector<Element>> T = std::nullopt,
                         std::optional<std::vector<int>> dual = std::nullopt) {
  SMCData d;
  d.name = std::move(name);
  d.r = static_cast<int>(S.size());
  if (d.r == 0) throw std::invalid_argument("empty S-hat");
  d.field = S[0][0].field();
  for (const auto& row : S) {
    if (static_cast<int>(row.size()) != d.r) throw std::invalid_argument("S-hat is not square");
    for (const auto& e : row) require_same(e, S[0][0]);
  }
  d.dims = S[0];
  d.dual = dual ? *dual : derive_dual(S);
  d.hatS = std::move(S);
  if (T) {
    if (static_cast<int>(T->size()) != d.r) throw std::invalid_argument("T-hat has the wrong length");
    for (const auto& e : *T) require_same(e, d.hatS[0][0]);
  }
  d.hatT = std::move(T);
  return d;
}

// Rebuild the data over a larger field sharing the tower prefix.
inline SMCData lift_data(const SMCData& d, const FieldPtr& to) {
  SMCData o = d;
  o.field = to;
  for (auto& x : o.dims) x = lift(x, to);
  for (auto& row : o.hatS)
    for (auto& x : row) x = lift(x, to);
  if (o.hatT)
    for (auto& x : *o.hatT) x = lift(x, to);
  return o;
}

// ---------------------------------------------------------------------------
// checks

inline Report check_dimensions(const SMCData& d) {
  Report rep{"dimensions", {}, {}};
  if (!(d.dims[0] == Q(1))) rep.fail("d_0 = 1", {0}, d.dims[0].str());
  for (int i = 0; i < d.r; ++i) {
    if (d.hatS[0][i] != d.dims[i]) rep.fail("S-hat row 0 = dims", {i}, (d.hatS[0][i] - d.dims[i]).str());
    try {
      if ((d.dims[i] - Q(1)).sign() < 0) rep.fail("d_i >= 1", {i}, d.dims[i].str());
    } catch (const NotRealError&) {
      rep.fail("d_i real", {i}, d.dims[i].str());
    }
  }
  if (d.dual[0] != 0) rep.fail("dual(0) = 0", {0});
  for (int i = 0; i < d.r; ++i)
    if (d.dual[d.dual[i]] != i) rep.fail("dual is an involution", {i});
  return rep;
}

inline Report check_orthogonality(const SMCData& d) {
  Report rep{"orthogonality", {}, {}};
  for (int i = 0; i < d.r; ++i)
    for (int j = i + 1; j < d.r; ++j)
      if (d.hatS[i][j] != d.hatS[j][i]) rep.fail("S-hat symmetric", {i, j}, (d.hatS[i][j] - d.hatS[j][i]).str());
  const Element h = d.half_D2();
  for (int i = 0; i < d.r; ++i)
    for (int k = 0; k < d.r; ++k) {
      Element s = constant(d.field, Q(0));
      for (int j = 0; j < d.r; ++j) s += d.hatS[i][j] * d.hatS[j][d.dual[k]];
      Element want = i == k ? h : constant(d.field, Q(0));
      if (s != want) rep.fail("S-hat S-hat-bar = (D^2/2) I", {i, k}, (s - want).str());
    }
  rep.notes.push_back("D^2/2 = " + h.str());
  return rep;
}

struct VerlindeResult {
  NaiveFusion nhat;
  std::vector<std::pair<std::vector<int>, std::string>> bad;  // non-integral or negative entries
  bool ok() const { return bad.empty(); }
};

inline VerlindeResult verlinde_collect(const SMCData& d) {
  const int r = d.r;
  VerlindeResult out{NaiveFusion(r), {}};
  const Element inv_h = d.half_D2().inverse();
  std::vector<Element> inv_d;
  for (const auto& x : d.dims) inv_d.push_back(x.inverse());
  // w[k][m] = conj(S)_{km} / d_m / (D^2/2)
  Matrix w(r);
  for (int k = 0; k < r; ++k)
    for (int m = 0; m < r; ++m) w[k].push_back(d.hatS[k][d.dual[m]] * inv_d[m] * inv_h);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      std::vector<Element> sij;
      for (int m = 0; m < r; ++m) sij.push_back(d.hatS[i][m] * d.hatS[j][m]);
      for (int k = 0; k < r; ++k) {
        Element s = constant(d.field, Q(0));
        for (int m = 0; m < r; ++m) s += sij[m] * w[k][m];
        auto q = s.rational();
        if (!q || !is_integer(*q) || *q < 0) {
          out.bad.push_back({{i, j, k}, s.str()});
          continue;
        }
        out.nhat(i, j, k) = out.nhat(j, i, k) = q->get_num().get_si();
      }
    }
  return out;
}

inline NaiveFusion verlinde_naive(const SMCData& d) {
  auto res = verlinde_collect(d);
  if (!res.ok()) {
    const auto& b = res.bad.front();
    throw NonIntegralFusion(b.first[0], b.first[1], b.first[2], b.second);
  }
  return res.nhat;
}

inline Report check_naive_symmetries(const NaiveFusion& n, const std::vector<int>& dual) {
  Report rep{"naive fusion symmetries", {}, {}};
  const int r = n.r;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (n(i, j, 0) != (j == dual[i] ? 1 : 0)) rep.fail("N_ij^0 = delta(i, j*)", {i, j, 0});
      for (int k = 0; k < r; ++k) {
        i64 v = n(i, j, k);
        if (v < 0) rep.fail("N_ij^k >= 0", {i, j, k});
        if (v != n(j, i, k)) rep.fail("N_ij^k = N_ji^k", {i, j, k});
        if (v != n(i, dual[k], dual[j])) rep.fail("N_ij^k = N_{i k*}^{j*}", {i, j, k});
        if (v != n(dual[i], dual[j], dual[k])) rep.fail("N_ij^k = N_{i* j*}^{k*}", {i, j, k});
      }
    }
  return rep;
}

// (N_i)_{jk} = N_ij^k ; N_i N_j = N_j N_i
inline Report check_commutation(const NaiveFusion& n) {
  Report rep{"naive fusion matrices commute", {}, {}};
  const int r = n.r;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
          i64 ab = 0, ba = 0;
          for (int t = 0; t < r; ++t) {
            ab += n(a, x, t) * n(b, t, y);
            ba += n(b, x, t) * n(a, t, y);
          }
          if (ab != ba) rep.fail("N_a N_b = N_b N_a", {a, b, x, y}, std::to_string(ab - ba));
        }
  return rep;
}

// sum_m N_jk^m S_im = S_ij S_ik / S_0i, i.e. the columns of S-hat diagonalise every N_j
inline Report check_eigenvectors(const SMCData& d, const NaiveFusion& n) {
  Report rep{"S-hat columns are common eigenvectors", {}, {}};
  for (int i = 0; i < d.r; ++i) {
    Element inv = d.hatS[0][i].inverse();
    for (int j = 0; j < d.r; ++j)
      for (int k = 0; k < d.r; ++k) {
        Element lhs = constant(d.field, Q(0));
        for (int m = 0; m < d.r; ++m)
          if (n(j, k, m)) lhs += d.hatS[i][m] * Q(static_cast<long>(n(j, k, m)));
        Element rhs = d.hatS[i][j] * d.hatS[i][k] * inv;
        if (lhs != rhs) rep.fail("N_j S = S Lambda_j", {i, j, k}, (lhs - rhs).str());
      }
  }
  return rep;
}

inline Report check_divisibility(const SMCData& d) {
  Report rep{"d_i^2 divides D^2/2", {}, {}};
  const Element h = d.half_D2();
  for (int i = 0; i < d.r; ++i) {
    Element q = h / (d.dims[i] * d.dims[i]);
    if (!is_algebraic_integer(q)) rep.fail("(D^2/2)/d_i^2 algebraic integer", {i}, q.str());
  }
  return rep;
}

// smallest n <= cap with theta^n = 1
inline int root_of_unity_order(const Element& theta, int cap = 10000) {
  Element p = theta;
  for (int n = 1; n <= cap; ++n) {
    if (p == Q(1)) return n;
    p *= theta;
  }
  throw FieldError("element is not a root of unity of order <= " + std::to_string(cap));
}

inline Report check_twists(const SMCData& d) {
  Report rep{"twists are roots of unity", {}, {}};
  if (!d.hatT) {
    rep.notes.push_back("no T-hat data");
    return rep;
  }
  if (!((*d.hatT)[0] == Q(1))) rep.fail("theta_0 = 1", {0}, (*d.hatT)[0].str());
  for (int i = 0; i < d.r; ++i) {
    try {
      int n = root_of_unity_order((*d.hatT)[i]);
      rep.notes.push_back("order(theta_" + std::to_string(i) + ") = " + std::to_string(n));
    } catch (const FieldError&) {
      rep.fail("theta_i root of unity", {i}, (*d.hatT)[i].str());
    }
    if ((*d.hatT)[d.dual[i]] != (*d.hatT)[i]) rep.fail("theta_{i*} = theta_i", {i});
  }
  return rep;
}

// theta_i theta_j S_ij = sum_k (N_ij^k - N_ij^{fk}) theta_k d_k over quotient labels
inline Report check_balancing(const SMCData& d, const FusionTensor& fusion) {
  Report rep{"balancing", {}, {}};
  if (!d.hatT) throw FieldTooSmall("balancing needs T-hat data");
  if (fusion.rank != 2 * d.r) throw std::invalid_argument("fusion rank does not match the data");
  const auto& T = *d.hatT;
  const auto& p = fusion.pi0;
  for (int i = 0; i < d.r; ++i)
    for (int j = i; j < d.r; ++j) {
      Element lhs = T[i] * T[j] * d.hatS[i][j];
      Element rhs = constant(d.field, Q(0));
      for (int k = 0; k < d.r; ++k) {
        i64 c = fusion(p[i], p[j], p[k]) - fusion(p[i], p[j], fusion.fperm[p[k]]);
        if (c) rhs += T[k] * d.dims[k] * Q(static_cast<long>(c));
      }
      if (lhs != rhs) rep.fail("theta_i theta_j S_ij = sum_k (N_ij^k - N_ij^fk) theta_k d_k", {i, j}, (lhs - rhs).str());
    }
  return rep;
}

// nu_2(X_i) = (2/D^2) sum_{j,k} N_jk^i d_j d_k (theta_j/theta_k)^2
inline Element fs_indicator(const SMCData& d, const NaiveFusion& n, int i) {
  if (!d.hatT) throw FieldTooSmall("indicator needs T-hat data");
  if (d.dual[i] != i) throw std::invalid_argument("indicator requested for a non-self-dual label");
  const auto& T = *d.hatT;
  Element s = constant(d.field, Q(0));
  std::vector<Element> t2, t2inv;
  for (const auto& t : T) {
    t2.push_back(t * t);
    t2inv.push_back(t2.back().inverse());
  }
  for (int j = 0; j < d.r; ++j)
    for (int k = 0; k < d.r; ++k)
      if (n(j, k, i)) s += d.dims[j] * d.dims[k] * t2[j] * t2inv[k] * Q(static_cast<long>(n(j, k, i)));
  return s / d.half_D2();
}

inline Report check_fs_indicators(const SMCData& d, const NaiveFusion& n) {
  Report rep{"Frobenius-Schur indicators", {}, {}};
  if (!d.hatT) {
    rep.notes.push_back("no T-hat data");
    return rep;
  }
  for (int i = 0; i < d.r; ++i) {
    if (d.dual[i] != i) continue;
    Element nu = fs_indicator(d, n, i);
    if (!(nu == Q(1)) && !(nu == Q(-1))) rep.fail("nu_2 in {+1,-1}", {i}, nu.str());
    else rep.notes.push_back("nu_2(" + std::to_string(i) + ") = " + nu.str());
  }
  return rep;
}

inline NaiveFusion induced_naive(const FusionTensor& t) {
  const int r = t.r();
  NaiveFusion n(r);
  const auto& p = t.pi0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) n(i, j, k) = t(p[i], p[j], p[k]) + t(p[i], p[j], t.fperm[p[k]]);
  return n;
}

inline Report check_fusion_axioms(const FusionTensor& t) {
  Report rep{"fusion axioms", {}, {}};
  const int R = t.rank;
  if (static_cast<int>(t.fperm.size()) != R || static_cast<int>(t.pi0.size()) * 2 != R) {
    rep.fail("label bookkeeping sizes", {});
    return rep;
  }
  const int f = t.fermion();
  for (int i = 0; i < R; ++i) {
    if (t.fperm[t.fperm[i]] != i) rep.fail("f acts as an involution", {i});
    if (t.fperm[i] == i) rep.fail("fX != X", {i});
  }
  for (int j = 0; j < R; ++j)
    for (int k = 0; k < R; ++k) {
      if (t(0, j, k) != (j == k)) rep.fail("N_0j^k = delta", {j, k});
      if (t(f, j, k) != (t.fperm[j] == k)) rep.fail("f X_j = fX_j", {j, k});
    }
  for (int i = 0; i < R; ++i) {
    int di = t.dual(i);
    if (di < 0) {
      rep.fail("unique dual", {i});
      continue;
    }
    if (t.fperm[i] == di) rep.fail("fX != X*", {i});
    for (int j = 0; j < R; ++j)
      for (int k = 0; k < R; ++k) {
        if (t(i, j, k) < 0) rep.fail("N >= 0", {i, j, k});
        if (t(i, j, k) != t(j, i, k)) rep.fail("N_ij^k = N_ji^k", {i, j, k});
        int dk = t.dual(k);
        if (dk >= 0 && t(i, j, k) != t(i, dk, t.dual(j))) rep.fail("N_ij^k = N_{i k*}^{j*}", {i, j, k});
      }
  }
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j)
      for (int k = 0; k < R; ++k)
        for (int l = 0; l < R; ++l) {
          i64 a = 0, b = 0;
          for (int m = 0; m < R; ++m) {
            a += t(i, j, m) * t(m, k, l);
            b += t(j, k, m) * t(i, m, l);
          }
          if (a != b) rep.fail("associativity", {i, j, k, l}, std::to_string(a - b));
        }
  bool pi0_ok = !t.pi0.empty() && t.pi0[0] == 0;
  std::vector<int> seen(R, 0);
  for (int x : t.pi0) {
    if (x < 0 || x >= R) {
      pi0_ok = false;
      continue;
    }
    seen[x]++;
    seen[t.fperm[x]]++;
  }
  for (int s : seen) pi0_ok = pi0_ok && s == 1;
  if (!pi0_ok) rep.fail("pi0 is a transversal of the f-action containing 0", {});
  return rep;
}

inline std::string describe(const Report& r) {
  std::ostringstream os;
  os << r.check << ": " << (r.pass() ? "pass" : "FAIL");
  for (size_t k = 0; k < r.violations.size() && k < 5; ++k) {
    const auto& v = r.violations[k];
    os << "\n    " << v.identity << " at (";
    for (size_t t = 0; t < v.where.size(); ++t) os << (t ? "," : "") << v.where[t];
    os << ")";
    if (!v.residual.empty()) os << " residual " << v.residual;
  }
  if (r.violations.size() > 5) os << "\n    ... " << r.violations.size() - 5 << " more";
  return os.str();
}

}  // namespace smc
