#pragma once
// Fusion rings and tensors: constructors, relabelings, products and isomorphism tests.
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "smc/core.hpp"

namespace smc {

// A NaiveFusion of rank n doubles as an ordinary (modular) fusion ring: n(i,j,k) = N_ij^k.
using FusionRing = NaiveFusion;

inline FusionRing group_ring(const std::vector<std::vector<int>>& add) {
  const int n = static_cast<int>(add.size());
  FusionRing g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g(a, b, add[a][b]) = 1;
  return g;
}

// Integer-spin part of SU(2)_k: a x b = sum of c from |a-b| to min(a+b, k-a-b).
// `order` lists the spins in the desired label order.
inline FusionRing su2_integer_spin_ring(int k, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  FusionRing g(n);
  std::vector<int> pos(k + 1, -1);
  for (int t = 0; t < n; ++t) pos.at(order[t]) = t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ja = order[a], jb = order[b];
      for (int c = std::abs(ja - jb); c <= std::min(ja + jb, k - ja - jb); ++c)
        if (pos[c] >= 0) g(a, b, pos[c]) += 1;
    }
  return g;
}

inline FusionRing ring_product(const FusionRing& a, const FusionRing& b) {
  FusionRing p(a.r * b.r);
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; j < a.r; ++j)
      for (int k = 0; k < a.r; ++k) {
        if (!a(i, j, k)) continue;
        for (int x = 0; x < b.r; ++x)
          for (int y = 0; y < b.r; ++y)
            for (int z = 0; z < b.r; ++z) p(i * b.r + x, j * b.r + y, k * b.r + z) = a(i, j, k) * b(x, y, z);
      }
  return p;
}

// ---------------------------------------------------------------------------
// tensors in the standard layout (labels 0..r-1 quotient, r+i = f X_i)

inline bool is_standard(const FusionTensor& t) {
  const int r = t.r();
  if (static_cast<int>(t.pi0.size()) != r || static_cast<int>(t.fperm.size()) != t.rank) return false;
  for (int i = 0; i < r; ++i)
    if (t.pi0[i] != i || t.fperm[i] != i + r || t.fperm[i + r] != i) return false;
  return true;
}

// Rewrite a tensor in the standard layout; quotient label q of the result is `order[q]` of the input.
inline FusionTensor to_standard(const FusionTensor& t, const std::vector<int>& order) {
  const int r = t.r();
  if (static_cast<int>(order.size()) != r) throw std::invalid_argument("to_standard: order has the wrong length");
  std::vector<int> old(2 * r);
  for (int q = 0; q < r; ++q) {
    old[q] = order[q];
    old[q + r] = t.fperm[order[q]];
  }
  FusionTensor s = standard_layout(r);
  for (int a = 0; a < 2 * r; ++a)
    for (int b = 0; b < 2 * r; ++b)
      for (int c = 0; c < 2 * r; ++c) s(a, b, c) = t(old[a], old[b], old[c]);
  return s;
}

inline FusionTensor to_standard(const FusionTensor& t) { return to_standard(t, t.pi0); }

// Standard layout -> standard layout with quotient label q taken from old label perm[q].
inline FusionTensor relabel_quotient(const FusionTensor& t, const std::vector<int>& perm) {
  const int r = t.r();
  std::vector<int> order(r);
  for (int q = 0; q < r; ++q) order[q] = t.pi0[perm[q]];
  return to_standard(t, order);
}

// Exchange X_i and fX_i for every i with swap[i] set (standard layout).
inline FusionTensor swap_gauge(const FusionTensor& t, const std::vector<bool>& swap) {
  const int r = t.r();
  std::vector<int> order(r);
  for (int q = 0; q < r; ++q) order[q] = swap[q] ? t.fperm[t.pi0[q]] : t.pi0[q];
  return to_standard(t, order);
}

// Products X_i (x) X_j for quotient labels i <= j, written with labels 0..2r-1 of the standard layout.
struct ProductRule {
  int i, j;
  std::vector<std::pair<int, int>> terms;  // (label, multiplicity)
};

inline FusionTensor fusion_from_products(int r, const std::vector<ProductRule>& rules) {
  FusionTensor t = standard_layout(r);
  auto f = [r](int c) { return c < r ? c + r : c - r; };
  for (int j = 0; j < r; ++j) t(0, j, j) = 1;
  for (const auto& rule : rules)
    for (const auto& [c, m] : rule.terms) {
      t(rule.i, rule.j, c) = m;
      t(rule.j, rule.i, c) = m;
    }
  for (int i = 0; i < r; ++i) {
    t(i, 0, i) = 1;
    for (int j = 0; j < r; ++j)
      for (int c = 0; c < 2 * r; ++c) {
        const i64 v = t(i, j, c);
        t(i + r, j, f(c)) = v;
        t(i, j + r, f(c)) = v;
        t(i + r, j + r, c) = v;
      }
  }
  return t;
}

// Y-labelled rules [1, X_1..X_{r-1}, fX_{r-1}..fX_1, f] of PSU(2)_{4m+2}, generated from
// Y_1 Y_k = Y_{k-1} + Y_k + Y_{k+1} (0 < k < 2r-1), Y_1 Y_0 = Y_1 and Y_1 f = Y_{2r-2}.
inline FusionTensor psu2_family_fusion(int m) {
  if (m < 0) throw std::invalid_argument("psu2_family_fusion: m must be nonnegative");
  const int r = m + 1, R = 2 * r;
  FusionTensor t(R);
  for (int k = 0; k < R; ++k) t.fperm.push_back(R - 1 - k);
  for (int k = 0; k < r; ++k) t.pi0.push_back(k);
  using Mat = std::vector<std::vector<i64>>;
  Mat id(R, std::vector<i64>(R, 0));
  for (int k = 0; k < R; ++k) id[k][k] = 1;
  if (R == 2) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) t(a, b, a ^ b) = 1;
    return t;
  }
  Mat L(R, std::vector<i64>(R, 0));  // L[k][c] = multiplicity of Y_c in Y_1 Y_k
  L[0][1] = 1;
  L[R - 1][R - 2] = 1;
  for (int k = 1; k < R - 1; ++k) L[k][k - 1] = L[k][k] = L[k][k + 1] = 1;
  auto mul = [R](const Mat& A, const Mat& B) {
    Mat C(R, std::vector<i64>(R, 0));
    for (int i = 0; i < R; ++i)
      for (int k = 0; k < R; ++k)
        if (A[i][k])
          for (int j = 0; j < R; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
  };
  std::vector<Mat> M{id, L};
  for (int a = 1; a + 1 < R; ++a) {
    Mat next = mul(M[a], L);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < R; ++j) next[i][j] -= M[a][i][j] + M[a - 1][i][j];
    M.push_back(next);
  }
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b)
      for (int c = 0; c < R; ++c) {
        if (M[a][b][c] < 0) throw std::logic_error("psu2_family_fusion: negative coefficient");
        t(a, b, c) = M[a][b][c];
      }
  return t;
}

// Modular ring (x) super tensor, quotient labels ordered (x, y) with x major.
inline FusionTensor deligne_fusion(const FusionRing& a, const FusionTensor& b_in) {
  const FusionTensor b = is_standard(b_in) ? b_in : to_standard(b_in);
  const int s = b.r(), r = a.r * s;
  auto lab = [&](int x, int y) { return y < s ? x * s + y : r + x * s + (y - s); };
  FusionTensor t = standard_layout(r);
  for (int x1 = 0; x1 < a.r; ++x1)
    for (int x2 = 0; x2 < a.r; ++x2)
      for (int x3 = 0; x3 < a.r; ++x3) {
        const i64 ax = a(x1, x2, x3);
        if (!ax) continue;
        for (int y1 = 0; y1 < 2 * s; ++y1)
          for (int y2 = 0; y2 < 2 * s; ++y2)
            for (int y3 = 0; y3 < 2 * s; ++y3)
              if (b(y1, y2, y3)) t(lab(x1, y1), lab(x2, y2), lab(x3, y3)) = ax * b(y1, y2, y3);
      }
  return t;
}

inline bool is_associative(const FusionRing& g) {
  const int n = g.r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          i64 a = 0, b = 0;
          for (int m = 0; m < n; ++m) {
            a += g(i, j, m) * g(m, k, l);
            b += g(j, k, m) * g(i, m, l);
          }
          if (a != b) return false;
        }
  return true;
}

// ---------------------------------------------------------------------------
// isomorphism classes (label permutations fixing the unit)

namespace detail {
template <class Get>
bool permutation_match(int n, Get a, Get b, std::vector<int>* found) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k) ok = a(p[i], p[j], p[k]) == b(i, j, k);
    if (ok) {
      if (found) *found = p;
      return true;
    }
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}
}  // namespace detail

// a(p(i),p(j),p(k)) == b(i,j,k) for some p fixing 0; the permutation is written to `perm`.
inline bool same_naive_class(const NaiveFusion& a, const NaiveFusion& b, std::vector<int>* perm = nullptr) {
  if (a.r != b.r) return false;
  auto A = [&](int i, int j, int k) { return a(i, j, k); };
  auto B = [&](int i, int j, int k) { return b(i, j, k); };
  return detail::permutation_match(a.r, std::function<i64(int, int, int)>(A), std::function<i64(int, int, int)>(B), perm);
}

inline bool same_fusion_class(const FusionTensor& a, const FusionTensor& b, std::vector<int>* perm = nullptr) {
  if (a.rank != b.rank) return false;
  auto A = [&](int i, int j, int k) { return a(i, j, k); };
  auto B = [&](int i, int j, int k) { return b(i, j, k); };
  return detail::permutation_match(a.rank, std::function<i64(int, int, int)>(A), std::function<i64(int, int, int)>(B), perm);
}

// "X_i (x) X_j = 1 + 2 X_1 + fX_2" style listing, standard layout
inline std::string product_string(const FusionTensor& t, int a, int b) {
  const int r = t.r();
  auto name = [&](int c) {
    if (c == 0) return std::string("1");
    if (c == r) return std::string("f");
    return c < r ? "X" + std::to_string(c) : "fX" + std::to_string(c - r);
  };
  std::string s;
  for (int c = 0; c < t.rank; ++c) {
    const i64 m = t(a, b, c);
    if (!m) continue;
    if (!s.empty()) s += " + ";
    if (m > 1) s += std::to_string(m);
    s += name(c);
  }
  return s.empty() ? "0" : s;
}

}  // namespace smc
