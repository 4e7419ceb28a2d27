#pragma once
// Lifting naive fusion rules to full ones, Deligne products, and the two factorization tests
// (an invertible semion-like label, a Fibonacci subring).
#include <array>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "smc/fusion.hpp"
#include "smc/galois.hpp"

namespace smc {

// Ordinary modular data: S, T and the fusion ring, all over one field.
struct ModularData {
  std::string name;
  Matrix S;
  std::vector<Element> T;
  FusionRing ring;
  int rank() const { return static_cast<int>(S.size()); }
  FieldPtr field() const { return S.at(0).at(0).field(); }
};

inline Matrix kronecker(const Matrix& A, const Matrix& B) {
  const int a = static_cast<int>(A.size()), b = static_cast<int>(B.size());
  Matrix K(a * b, std::vector<Element>(a * b));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      for (int x = 0; x < b; ++x)
        for (int y = 0; y < b; ++y) K[i * b + x][j * b + y] = A[i][j] * B[x][y];
  return K;
}

inline std::vector<Element> kronecker(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> k;
  for (const auto& x : a)
    for (const auto& y : b) k.push_back(x * y);
  return k;
}

inline std::vector<int> ring_duals(const FusionRing& g) {
  std::vector<int> d(g.r, -1);
  for (int i = 0; i < g.r; ++i)
    for (int j = 0; j < g.r; ++j)
      if (g(i, j, 0)) d[i] = j;
  return d;
}

inline ModularData modular_product(const ModularData& a, const ModularData& b) {
  require_same(a.S[0][0], b.S[0][0]);
  return {a.name + " x " + b.name, kronecker(a.S, b.S), kronecker(a.T, b.T), ring_product(a.ring, b.ring)};
}

// Kronecker product of a modular factor with super-modular quotient data; quotient labels (x, y), x major.
inline SMCData deligne_product(const ModularData& a, const SMCData& b) {
  require_same(a.S[0][0], b.hatS[0][0]);
  SMCData d;
  d.name = a.name + " x " + b.name;
  d.field = b.field;
  d.r = a.rank() * b.r;
  d.hatS = kronecker(a.S, b.hatS);
  d.dims = d.hatS[0];
  if (b.hatT) d.hatT = kronecker(a.T, *b.hatT);
  auto da = ring_duals(a.ring);
  for (int x = 0; x < a.rank(); ++x)
    for (int y = 0; y < b.r; ++y) d.dual.push_back(da[x] * b.r + b.dual[y]);
  if (b.fusion) d.fusion = deligne_fusion(a.ring, *b.fusion);
  return d;
}

// Quotient label q of the result is label perm[q] of the input.
inline SMCData permute_data(const SMCData& d, const std::vector<int>& perm) {
  SMCData o = d;
  std::vector<int> inv(d.r);
  for (int q = 0; q < d.r; ++q) inv[perm[q]] = q;
  for (int i = 0; i < d.r; ++i) {
    o.dims[i] = d.dims[perm[i]];
    o.dual[i] = inv[d.dual[perm[i]]];
    for (int j = 0; j < d.r; ++j) o.hatS[i][j] = d.hatS[perm[i]][perm[j]];
    if (d.hatT) (*o.hatT)[i] = (*d.hatT)[perm[i]];
  }
  if (d.fusion) o.fusion = relabel_quotient(to_standard(*d.fusion), perm);
  return o;
}

// ---------------------------------------------------------------------------
// factorization evidence

struct InconsistentFactorization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvertibleFactor {
  int label;                 // z
  ModularData pointed;       // rank-2 pointed factor generated by z
  SMCData complement;        // labels centralizing z
  std::vector<int> kept;     // quotient labels of the complement, in order
  std::vector<int> partner;  // partner[q] = label of z * kept[q]
};

// A label z != 0 with d_z = 1 and S_zz != 1 splits off C(Z_2, Q); the complement is the centralizer of z.
inline std::optional<InvertibleFactor> factor_by_invertible(const SMCData& d) {
  if (!d.self_dual()) throw std::invalid_argument("factor_by_invertible needs self-dual data");
  for (int z = 1; z < d.r; ++z) {
    if (!(d.dims[z] == Q(1)) || d.hatS[z][z] == Q(1)) continue;
    InvertibleFactor out;
    out.label = z;
    // monodromy charge of each label against z
    std::vector<int> charge(d.r);
    for (int i = 0; i < d.r; ++i) {
      Element c = d.hatS[z][i] / d.dims[i];
      if (c == Q(1)) charge[i] = 1;
      else if (c == Q(-1)) charge[i] = -1;
      else throw InconsistentFactorization("S_{z,i}/d_i is not +-1 at i = " + std::to_string(i));
    }
    auto nhat = verlinde_naive(d);
    for (int i = 0; i < d.r; ++i) {
      if (charge[i] != 1) continue;
      out.kept.push_back(i);
      int p = -1;
      for (int j = 0; j < d.r; ++j)
        if (nhat(z, i, j)) {
          if (p >= 0 || nhat(z, i, j) != 1) throw InconsistentFactorization("z does not act as an invertible label");
          p = j;
        }
      if (p < 0 || charge[p] != -1) throw InconsistentFactorization("z * X lies in the centralizer of z");
      out.partner.push_back(p);
    }
    const int h = static_cast<int>(out.kept.size());
    if (2 * h != d.r) throw InconsistentFactorization("centralizer of z is not half of the labels");
    const Element one = constant(d.field, Q(1));
    const Element szz = d.hatS[z][z];
    Matrix P{{one, one}, {one, szz}};
    std::vector<Element> PT{one, d.hatT ? (*d.hatT)[z] : one};
    out.pointed = {"C(Z2,Q)", P, PT, group_ring({{0, 1}, {1, 0}})};
    std::vector<int> order = out.kept;
    SMCData c;
    c.name = d.name + " / C(Z2,Q)";
    c.field = d.field;
    c.r = h;
    for (int a = 0; a < h; ++a) {
      c.hatS.emplace_back();
      for (int b = 0; b < h; ++b) c.hatS.back().push_back(d.hatS[order[a]][order[b]]);
    }
    c.dims = c.hatS[0];
    for (int a = 0; a < h; ++a) {
      int da = d.dual[order[a]];
      auto it = std::find(order.begin(), order.end(), da);
      if (it == order.end()) throw InconsistentFactorization("centralizer not closed under duality");
      c.dual.push_back(static_cast<int>(it - order.begin()));
    }
    if (d.hatT) {
      std::vector<Element> t;
      for (int a : order) t.push_back((*d.hatT)[a]);
      c.hatT = t;
    }
    // reconstruct S-hat on all labels from the two factors
    std::vector<std::pair<int, int>> coord(d.r);
    for (int a = 0; a < h; ++a) {
      coord[order[a]] = {0, a};
      coord[out.partner[a]] = {1, a};
    }
    for (int i = 0; i < d.r; ++i)
      for (int j = 0; j < d.r; ++j) {
        Element v = P[coord[i].first][coord[j].first] * c.hatS[coord[i].second][coord[j].second];
        if (v != d.hatS[i][j]) throw InconsistentFactorization("S-hat is not the product of the two factors");
      }
    out.complement = c;
    return out;
  }
  return std::nullopt;
}

// A label X with X (x) X = 1 + X in the full rules.
inline std::optional<int> detect_fib_subring(const FusionTensor& t) {
  for (int x = 1; x < t.rank; ++x) {
    bool ok = t(x, x, 0) == 1 && t(x, x, x) == 1;
    for (int c = 0; c < t.rank && ok; ++c)
      if (c != 0 && c != x) ok = t(x, x, c) == 0;
    if (ok) return x;
  }
  return std::nullopt;
}

inline std::optional<int> detect_fib_subring(const NaiveFusion& nhat, const FusionTensor& split) {
  if (induced_naive(split) != nhat) throw std::invalid_argument("split does not induce the given naive tensor");
  return detect_fib_subring(split);
}

// ---------------------------------------------------------------------------
// splitting naive rules

struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExplosionGuard : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SplitSolution {
  FusionTensor tensor;            // class representative, standard layout
  std::vector<bool> gauge;        // X_i <-> fX_i swaps taking the first solution found to `tensor`
  int class_size = 0;             // raw solutions in the class (balanced ones only, when twists are given)
  std::vector<std::string> constraints;
};

struct SplitOptions {
  const SMCData* theta = nullptr;  // when set, solutions must satisfy the balancing equation
  long long node_budget = 10'000'000;
  int threads = 1;
};

namespace detail {

struct Affine {
  int var = -1;  // -1: constant
  int sign = 1;
  i64 c = 0;
};

struct SplitProblem {
  int r = 0, R = 0;
  std::vector<int> dual;
  std::vector<i64> domain;           // per variable: maximum value
  std::vector<std::array<int, 3>> rep;  // per variable: representative (i,j,k)
  std::vector<Affine> entry;         // R^3
  std::vector<std::vector<std::array<int, 4>>> eqs;  // per variable: associativity equations to check once it is set
  std::vector<std::array<int, 4>> eqs_const;

  i64 value(int a, int b, int c, const std::vector<i64>& x) const {
    const Affine& e = entry[(static_cast<size_t>(a) * R + b) * R + c];
    return e.var < 0 ? e.c : e.c + e.sign * x[e.var];
  }
  bool assoc(const std::array<int, 4>& q, const std::vector<i64>& x) const {
    const auto [a, b, c, d] = q;
    i64 s = 0;
    for (int m = 0; m < R; ++m) s += value(a, b, m, x) * value(m, c, d, x) - value(b, c, m, x) * value(a, m, d, x);
    return s == 0;
  }
  FusionTensor tensor(const std::vector<i64>& x) const {
    FusionTensor t = standard_layout(r);
    for (int a = 0; a < R; ++a)
      for (int b = 0; b < R; ++b)
        for (int c = 0; c < R; ++c) t(a, b, c) = value(a, b, c, x);
    return t;
  }
};

inline SplitProblem build_problem(const NaiveFusion& n, const std::vector<int>& dual) {
  SplitProblem P;
  P.r = n.r;
  P.R = 2 * n.r;
  P.dual = dual;
  const int r = P.r;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (n(0, i, j) != (i == j) || n(i, 0, j) != (i == j)) throw NoSolution("naive unit row is not the identity");
      if (n(i, j, 0) != (j == dual[i])) throw NoSolution("naive duality column is not delta_{j, i*}");
    }
  // orbits of (i,j,k), i,j,k >= 1 under (i,j,k) -> (j,i,k) and (i,j,k) -> (i,k*,j*)
  auto id = [r](int i, int j, int k) { return (i * r + j) * r + k; };
  std::vector<int> parent(r * r * r);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int i = 1; i < r; ++i)
    for (int j = 1; j < r; ++j)
      for (int k = 1; k < r; ++k) {
        unite(id(i, j, k), id(j, i, k));
        unite(id(i, j, k), id(i, dual[k], dual[j]));
        if (n(i, j, k) != n(j, i, k) || n(i, j, k) != n(i, dual[k], dual[j]))
          throw NoSolution("naive tensor violates the cyclic symmetries");
      }
  std::map<int, int> var_of_root;
  std::vector<int> var_of(r * r * r, -1);
  for (int i = 1; i < r; ++i)
    for (int j = 1; j < r; ++j)
      for (int k = 1; k < r; ++k) {
        if (n(i, j, k) == 0) continue;
        int root = find(id(i, j, k));
        auto it = var_of_root.find(root);
        if (it == var_of_root.end()) {
          it = var_of_root.emplace(root, static_cast<int>(P.domain.size())).first;
          P.domain.push_back(n(i, j, k));
          P.rep.push_back({i, j, k});
        }
        var_of[id(i, j, k)] = it->second;
      }
  const int R = P.R;
  P.entry.resize(static_cast<size_t>(R) * R * R);
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b)
      for (int c = 0; c < R; ++c) {
        const int i = a % r, j = b % r, k = c % r;
        const bool odd = ((a >= r) + (b >= r) + (c >= r)) % 2 == 1;
        Affine e;
        if (i == 0 || j == 0 || k == 0) {
          // unit and duality entries are fixed
          const i64 even = (i == 0) ? (j == k) : (j == 0) ? (i == k) : (j == dual[i]);
          e.c = odd ? n(i, j, k) - even : even;
        } else if (var_of[id(i, j, k)] < 0) {
          e.c = 0;
        } else {
          e.var = var_of[id(i, j, k)];
          e.sign = odd ? -1 : 1;
          e.c = odd ? n(i, j, k) : 0;
        }
        P.entry[(static_cast<size_t>(a) * R + b) * R + c] = e;
      }
  // bucket associativity equations by their last variable
  P.eqs.resize(P.domain.size());
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b)
      for (int c = 0; c < R; ++c)
        for (int d = 0; d < R; ++d) {
          int last = -1;
          for (int m = 0; m < R; ++m)
            for (auto [x, y, z] : {std::array<int, 3>{a, b, m}, {m, c, d}, {b, c, m}, {a, m, d}})
              last = std::max(last, P.entry[(static_cast<size_t>(x) * R + y) * R + z].var);
          if (last < 0) P.eqs_const.push_back({a, b, c, d});
          else P.eqs[last].push_back({a, b, c, d});
        }
  return P;
}

inline void search(const SplitProblem& P, std::vector<i64>& x, size_t v, std::vector<std::vector<i64>>& out,
                   std::atomic<long long>& nodes, long long budget) {
  if (v == x.size()) {
    out.push_back(x);
    return;
  }
  for (i64 val = 0; val <= P.domain[v]; ++val) {
    if (++nodes > budget) throw ExplosionGuard("split search exceeded its node budget");
    x[v] = val;
    bool ok = true;
    for (const auto& q : P.eqs[v])
      if (!P.assoc(q, x)) {
        ok = false;
        break;
      }
    if (ok) search(P, x, v + 1, out, nodes, budget);
  }
}

}  // namespace detail

// All splittings N + N^f = n-hat up to the X_i <-> fX_i gauge, each verified for full associativity.
inline std::vector<SplitSolution> split_naive(const NaiveFusion& nhat, const std::vector<int>& dual,
                                              const SplitOptions& opt = {}) {
  auto P = detail::build_problem(nhat, dual);
  std::vector<i64> x(P.domain.size(), 0);
  for (const auto& q : P.eqs_const)
    if (!P.assoc(q, x)) throw NoSolution("fixed entries already violate associativity");
  std::vector<std::vector<i64>> raw;
  std::atomic<long long> nodes{0};
  if (P.domain.empty()) {
    raw.push_back(x);
  } else {
    // fan out over the first variable; results are merged in value order
    const int width = static_cast<int>(P.domain[0]) + 1;
    std::vector<std::vector<std::vector<i64>>> part(width);
    std::vector<std::exception_ptr> errs(width);
    auto work = [&](int val) {
      try {
        std::vector<i64> y(P.domain.size(), 0);
        y[0] = val;
        bool ok = true;
        for (const auto& q : P.eqs[0]) ok = ok && P.assoc(q, y);
        if (ok) detail::search(P, y, 1, part[val], nodes, opt.node_budget);
      } catch (...) {
        errs[val] = std::current_exception();
      }
    };
    const int threads = std::max(1, std::min(opt.threads, width));
    if (threads == 1) {
      for (int v = 0; v < width; ++v) work(v);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (int v; (v = next++) < width;) work(v);
        });
      for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    for (auto& p : part) raw.insert(raw.end(), p.begin(), p.end());
  }

  std::vector<std::string> used{"N + N^f = n-hat", "unit", "duality", "N_ij^k = N_ji^k", "N_ij^fk = N_ik*^fj*",
                                "associativity"};
  if (opt.theta) used.push_back("balancing");

  // gauge group: swap X_i <-> fX_i on dual-closed sets of quotient labels
  const int r = nhat.r;
  std::vector<std::vector<bool>> gauges;
  for (int mask = 0; mask < (1 << (r - 1)); ++mask) {
    std::vector<bool> g(r, false);
    for (int i = 1; i < r; ++i) g[i] = (mask >> (i - 1)) & 1;
    bool closed = true;
    for (int i = 1; i < r; ++i) closed = closed && g[i] == g[dual[i]];
    if (closed) gauges.push_back(g);
  }

  // Classes are keyed by their lexicographically smallest gauge image. Without twists that image is the
  // representative; with twists the gauge moves theta, so the smallest balanced member is kept instead.
  std::map<std::vector<i64>, SplitSolution> classes;
  for (const auto& sol : raw) {
    FusionTensor t = P.tensor(sol);
    if (opt.theta && !check_balancing(*opt.theta, t).pass()) continue;
    FusionTensor key = t;
    std::vector<bool> key_g(r, false);
    for (const auto& g : gauges) {
      FusionTensor s = swap_gauge(t, g);
      if (s.N < key.N) {
        key = s;
        key_g = g;
      }
    }
    auto it = classes.find(key.N);
    if (opt.theta) {
      if (it == classes.end()) it = classes.emplace(key.N, SplitSolution{t, std::vector<bool>(r, false), 0, used}).first;
      else if (t.N < it->second.tensor.N) it->second.tensor = t;
    } else if (it == classes.end()) {
      it = classes.emplace(key.N, SplitSolution{key, key_g, 0, used}).first;
    }
    it->second.class_size++;
  }
  if (classes.empty()) throw NoSolution(raw.empty() ? "no associative splitting exists" : "no splitting satisfies balancing");
  std::vector<SplitSolution> out;
  for (auto& [k, v] : classes) out.push_back(v);
  return out;
}

}  // namespace smc
