#pragma once
// Number fields presented as towers Q(g0)(g1)...(gt) over a flattened power basis.
//
// Basis index m encodes exponents e_i = (m / sub_dim(i)) % deg(i), so an element
// of a lower tower level embeds by zero padding. Real embeddings are pinned by an
// isolating box per generator; boxes are certified and shrunk with a Krawczyk test.
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smc/interval.hpp"
#include "smc/rational.hpp"

namespace smc {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotRealError : FieldError {
  using FieldError::FieldError;
};

struct IsolatingBox {
  Q re_lo, re_hi, im_lo, im_hi;
  bool real() const { return im_lo == 0 && im_hi == 0; }
  static IsolatingBox real_interval(Q lo, Q hi) { return {std::move(lo), std::move(hi), Q(0), Q(0)}; }
  static IsolatingBox rect(Q rl, Q rh, Q il, Q ih) { return {std::move(rl), std::move(rh), std::move(il), std::move(ih)}; }
};

struct Generator {
  std::string name;
  // constant-first, monic; coefficient k is a vector over the basis of the tower below this generator
  std::vector<std::vector<Q>> minpoly;
  IsolatingBox box;
  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

struct Automorphism {
  std::string name;
  std::vector<std::vector<Q>> images;  // image of each generator in the full basis
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Element {
 public:
  Element() = default;
  Element(FieldPtr f, std::vector<Q> c);

  const FieldPtr& field() const { return f_; }
  const std::vector<Q>& coeffs() const { return c_; }
  bool valid() const { return static_cast<bool>(f_); }
  bool is_zero() const;
  std::optional<Q> rational() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator*=(const Q& q);
  Element operator-() const;
  Element inverse() const;
  Element pow(long e) const;
  Element apply(int automorphism) const;

  int sign() const;
  std::complex<double> approx() const;
  std::string str() const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  FieldPtr f_;
  std::vector<Q> c_;
};

class Field {
 public:
  // Build via FieldBuilder; this constructor validates everything it is given.
  Field(std::string name, std::vector<Generator> gens, std::vector<Automorphism> autos, bool close_group);

  static FieldPtr rationals();

  const std::string& name() const { return name_; }
  int dim() const { return sub_dim_.back(); }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int i) const { return gens_.at(i); }
  int degree(int i) const { return gens_[i].degree(); }
  // dimension of the tower below generator i (sub_dim(num_generators()) == dim())
  int sub_dim(int i) const { return sub_dim_[i]; }
  int exponent(int m, int i) const { return (m / sub_dim_[i]) % gens_[i].degree(); }
  bool all_real() const { return all_real_; }

  // exact kernels on coefficient vectors
  std::vector<Q> mul(const std::vector<Q>& a, const std::vector<Q>& b) const;
  std::vector<Q> inverse(const std::vector<Q>& a) const;
  std::vector<std::vector<Q>> mult_matrix(const std::vector<Q>& a) const;
  std::vector<Q> pad(const std::vector<Q>& sub) const;

  int num_automorphisms() const { return static_cast<int>(autos_.size()); }
  const Automorphism& automorphism(int id) const;
  int find_automorphism(const std::string& name) const;
  std::vector<Q> apply(int id, const std::vector<Q>& a) const;
  // index of complex conjugation among the automorphisms (0, the identity, for real fields)
  std::optional<int> conjugation() const { return conj_; }
  int declared_automorphisms() const { return declared_autos_; }

  CBox generator_box(int i, long bits) const;
  CBox enclose(const std::vector<Q>& a, long bits) const;
  int sign(const std::vector<Q>& a) const;

  // numeric audit: each declared box holds exactly one root of its minimal polynomial
  std::vector<std::string> audit_boxes() const;

 private:
  std::vector<Q> mul_rec(int level, const std::vector<Q>& a, const std::vector<Q>& b) const;
  CBox enclose_prefix(const std::vector<Q>& a, int ngen, long bits) const;
  CBox refine(int i, long bits) const;
  void validate_automorphism(const Automorphism& a) const;
  std::vector<std::vector<Q>> basis_images(const Automorphism& a) const;

  std::string name_;
  std::vector<Generator> gens_;
  std::vector<int> sub_dim_;
  bool all_real_ = true;
  // table_[a*dim+b] = sparse product of basis vectors a and b
  std::vector<std::vector<std::pair<int, Q>>> table_;
  std::vector<Automorphism> autos_;
  std::vector<std::vector<std::vector<Q>>> auto_basis_;  // per automorphism, image of every basis vector
  int declared_autos_ = 0;
  std::optional<int> conj_;

  mutable std::recursive_mutex mu_;
  mutable std::vector<CBox> best_box_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline bool all_zero(const std::vector<Q>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline void axpy(std::vector<Q>& y, const Q& a, const std::vector<Q>& x) {
  if (a == 0) return;
  for (size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) y[k] += a * x[k];
}

// Solve A x = b exactly; returns nullopt if singular.
inline std::optional<std::vector<Q>> solve(std::vector<std::vector<Q>> A, std::vector<Q> b) {
  const size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    Q inv = 1 / A[col][col];
    for (size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Q factor = A[r][col] * inv;
      for (size_t c = col; c < n; ++c)
        if (A[col][c] != 0) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

inline CPoint horner_point(const std::vector<CPoint>& c, const CPoint& z, long bits) {
  CPoint acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) {
    acc = cmul(acc, z, bits);
    acc.re += c[k].re;
    acc.im += c[k].im;
  }
  return acc;
}

inline CBox horner_box(const std::vector<CBox>& c, const CBox& z, long bits) {
  CBox acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) acc = round_out(acc * z + c[k], bits);
  return acc;
}

inline std::vector<CBox> derivative(const std::vector<CBox>& c) {
  std::vector<CBox> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(CBox(Q(static_cast<long>(k))) * c[k]);
  if (d.empty()) d.push_back(CBox(Q(0)));
  return d;
}

inline CPoint mid(const CBox& b) { return {b.re.mid(), b.im.mid()}; }

inline bool box_contains(const IsolatingBox& b, const CPoint& z) {
  return b.re_lo <= z.re && z.re <= b.re_hi && b.im_lo <= z.im && z.im <= b.im_hi;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Field::Field(std::string name, std::vector<Generator> gens, std::vector<Automorphism> autos, bool close_group)
    : name_(std::move(name)), gens_(std::move(gens)) {
  sub_dim_.push_back(1);
  for (auto& g : gens_) {
    if (g.degree() < 1) throw FieldError("generator " + g.name + ": minimal polynomial of degree < 1");
    const int s = sub_dim_.back();
    for (auto& c : g.minpoly) {
      if (static_cast<int>(c.size()) > s) throw FieldError("generator " + g.name + ": coefficient outside its sub-tower");
      c.resize(s, Q(0));
    }
    std::vector<Q> lead = g.minpoly.back();
    std::vector<Q> one(s, Q(0));
    one[0] = 1;
    if (lead != one) throw FieldError("generator " + g.name + ": minimal polynomial is not monic");
    if (g.box.re_lo > g.box.re_hi || g.box.im_lo > g.box.im_hi) throw FieldError("generator " + g.name + ": empty box");
    if (!g.box.real()) all_real_ = false;
    sub_dim_.push_back(s * g.degree());
    if (sub_dim_.back() > 64) throw FieldError("field degree exceeds 64");
  }
  // rational roots of a minimal polynomial over Q mean it is reducible
  for (const auto& g : gens_) {
    if (&g != &gens_.front() || g.degree() == 1) continue;
    Z den = 1;
    for (const auto& c : g.minpoly) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c[0].get_den_mpz_t());
    std::vector<Z> ip;
    for (const auto& c : g.minpoly) ip.push_back(Z(c[0] * den));
    Z a0 = abs(ip.front()), an = abs(ip.back());
    auto divisors = [](Z n) {
      std::vector<Z> d;
      if (n == 0) {
        d.push_back(0);
        return d;
      }
      for (Z k = 1; k * k <= n && k < 100000; ++k)
        if (n % k == 0) {
          d.push_back(k);
          d.push_back(n / k);
        }
      return d;
    };
    for (const Z& p : divisors(a0))
      for (const Z& q : divisors(an)) {
        if (q == 0) continue;
        for (int sgn : {1, -1}) {
          Q x(sgn * p, q);
          x.canonicalize();
          Q v = 0;
          for (size_t k = ip.size(); k-- > 0;) v = v * x + Q(ip[k]);
          if (v == 0) throw FieldError("generator " + g.name + ": minimal polynomial has a rational root");
        }
      }
  }

  const int n = dim();
  table_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<Q> ea(n, Q(0)), eb(n, Q(0));
      ea[a] = 1;
      eb[b] = 1;
      auto p = mul_rec(num_generators(), ea, eb);
      std::vector<std::pair<int, Q>> sparse;
      for (int k = 0; k < n; ++k)
        if (p[k] != 0) sparse.emplace_back(k, p[k]);
      table_[static_cast<size_t>(a) * n + b] = sparse;
      table_[static_cast<size_t>(b) * n + a] = sparse;
    }

  best_box_.resize(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) {
    const auto& b = gens_[i].box;
    best_box_[i] = CBox(Interval(b.re_lo, b.re_hi), Interval(b.im_lo, b.im_hi));
  }
  // certify every root once (throws if the box is too loose for Newton)
  for (int i = 0; i < num_generators(); ++i) generator_box(i, 64);

  Automorphism id{"id", {}};
  for (int i = 0; i < num_generators(); ++i) {
    std::vector<Q> e(n, Q(0));
    e[sub_dim_[i]] = 1;
    id.images.push_back(e);
  }
  autos_.push_back(id);
  auto_basis_.push_back(basis_images(id));
  for (auto& a : autos) {
    if (a.images.size() != gens_.size()) throw FieldError("automorphism " + a.name + ": wrong number of images");
    for (auto& v : a.images) {
      if (static_cast<int>(v.size()) > n) throw FieldError("automorphism " + a.name + ": image too long");
      v.resize(n, Q(0));
    }
    if (a.images == id.images) continue;
    validate_automorphism(a);
    autos_.push_back(a);
    auto_basis_.push_back(basis_images(a));
  }
  declared_autos_ = num_automorphisms();

  // closure under composition
  for (size_t x = 0; x < autos_.size(); ++x)
    for (size_t y = 0; y < autos_.size(); ++y) {
      Automorphism c{autos_[x].name + "*" + autos_[y].name, {}};
      for (const auto& img : autos_[y].images) c.images.push_back(apply(static_cast<int>(x), img));
      bool known = false;
      for (const auto& a : autos_) known = known || a.images == c.images;
      if (known) continue;
      if (!close_group) throw FieldError("declared automorphisms are not closed under composition");
      if (static_cast<int>(autos_.size()) >= n) throw FieldError("automorphism closure exceeds the field degree");
      autos_.push_back(c);
      auto_basis_.push_back(basis_images(c));
    }

  if (all_real_) {
    conj_ = 0;
  } else {
    // complex conjugation: the automorphism sending each generator to a value overlapping its conjugate
    for (int a = 0; a < num_automorphisms() && !conj_; ++a) {
      bool ok = true;
      for (int i = 0; i < num_generators() && ok; ++i) {
        CBox img = enclose(autos_[a].images[i], 80);
        CBox g = generator_box(i, 80);
        Interval cim = -g.im;
        ok = intersect(img.re, g.re).width() >= 0 && intersect(img.im, cim).width() >= 0;
      }
      if (ok) conj_ = a;
    }
  }
}

inline FieldPtr Field::rationals() {
  static const FieldPtr q = std::make_shared<const Field>("Q", std::vector<Generator>{}, std::vector<Automorphism>{}, true);
  return q;
}

inline std::vector<Q> Field::mul_rec(int level, const std::vector<Q>& a, const std::vector<Q>& b) const {
  if (level == 0) return {a[0] * b[0]};
  const Generator& g = gens_[level - 1];
  const int n = g.degree(), s = sub_dim_[level - 1];
  auto chunk = [&](const std::vector<Q>& v, int i) { return std::vector<Q>(v.begin() + i * s, v.begin() + (i + 1) * s); };
  std::vector<std::vector<Q>> prod(2 * n - 1, std::vector<Q>(s, Q(0)));
  for (int i = 0; i < n; ++i) {
    auto ai = chunk(a, i);
    if (detail::all_zero(ai)) continue;
    for (int j = 0; j < n; ++j) {
      auto bj = chunk(b, j);
      if (detail::all_zero(bj)) continue;
      auto p = mul_rec(level - 1, ai, bj);
      for (int k = 0; k < s; ++k) prod[i + j][k] += p[k];
    }
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    if (detail::all_zero(prod[d])) continue;
    for (int k = 0; k < n; ++k) {
      if (detail::all_zero(g.minpoly[k])) continue;
      auto p = mul_rec(level - 1, prod[d], g.minpoly[k]);
      for (int t = 0; t < s; ++t) prod[d - n + k][t] -= p[t];
    }
  }
  std::vector<Q> out;
  out.reserve(static_cast<size_t>(n) * s);
  for (int i = 0; i < n; ++i) out.insert(out.end(), prod[i].begin(), prod[i].end());
  return out;
}

inline std::vector<Q> Field::mul(const std::vector<Q>& a, const std::vector<Q>& b) const {
  const int n = dim();
  std::vector<Q> out(n, Q(0));
  Q ab;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      ab = a[i] * b[j];
      for (const auto& [k, v] : table_[static_cast<size_t>(i) * n + j]) out[k] += ab * v;
    }
  }
  return out;
}

inline std::vector<std::vector<Q>> Field::mult_matrix(const std::vector<Q>& a) const {
  const int n = dim();
  std::vector<std::vector<Q>> M(n, std::vector<Q>(n, Q(0)));
  for (int j = 0; j < n; ++j) {
    std::vector<Q> e(n, Q(0));
    e[j] = 1;
    auto col = mul(a, e);
    for (int i = 0; i < n; ++i) M[i][j] = col[i];
  }
  return M;
}

inline std::vector<Q> Field::inverse(const std::vector<Q>& a) const {
  if (detail::all_zero(a)) throw FieldError("inverse of zero");
  std::vector<Q> e(dim(), Q(0));
  e[0] = 1;
  auto x = detail::solve(mult_matrix(a), e);
  if (!x) throw FieldError("element is a zero divisor: a minimal polynomial is reducible");
  return *x;
}

inline std::vector<Q> Field::pad(const std::vector<Q>& sub) const {
  if (static_cast<int>(sub.size()) > dim()) throw FieldError("coefficient vector longer than the field degree");
  std::vector<Q> v = sub;
  v.resize(dim(), Q(0));
  return v;
}

inline const Automorphism& Field::automorphism(int id) const {
  if (id < 0 || id >= num_automorphisms()) throw FieldError("unknown automorphism id " + std::to_string(id));
  return autos_[id];
}

inline int Field::find_automorphism(const std::string& name) const {
  for (int a = 0; a < num_automorphisms(); ++a)
    if (autos_[a].name == name) return a;
  throw FieldError("unknown automorphism '" + name + "'");
}

inline std::vector<std::vector<Q>> Field::basis_images(const Automorphism& a) const {
  const int n = dim();
  std::vector<std::vector<Q>> out(n);
  std::vector<std::vector<std::vector<Q>>> pw(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) {
    std::vector<Q> one(n, Q(0));
    one[0] = 1;
    pw[i].push_back(one);
    for (int e = 1; e < gens_[i].degree(); ++e) pw[i].push_back(mul(pw[i].back(), a.images[i]));
  }
  for (int m = 0; m < n; ++m) {
    std::vector<Q> v(n, Q(0));
    v[0] = 1;
    for (int i = 0; i < num_generators(); ++i) {
      int e = exponent(m, i);
      if (e) v = mul(v, pw[i][e]);
    }
    out[m] = v;
  }
  return out;
}

inline std::vector<Q> Field::apply(int id, const std::vector<Q>& a) const {
  automorphism(id);
  const auto& B = auto_basis_[id];
  std::vector<Q> out(dim(), Q(0));
  for (int m = 0; m < dim(); ++m) detail::axpy(out, a[m], B[m]);
  return out;
}

inline void Field::validate_automorphism(const Automorphism& a) const {
  auto B = basis_images(a);
  for (int i = 0; i < num_generators(); ++i) {
    const auto& g = gens_[i];
    std::vector<Q> acc(dim(), Q(0)), xp(dim(), Q(0));
    xp[0] = 1;
    for (int k = 0; k <= g.degree(); ++k) {
      std::vector<Q> c(dim(), Q(0));
      auto padded = pad(g.minpoly[k]);
      for (int m = 0; m < dim(); ++m) detail::axpy(c, padded[m], B[m]);
      auto term = mul(c, xp);
      for (int t = 0; t < dim(); ++t) acc[t] += term[t];
      xp = mul(xp, a.images[i]);
    }
    if (!detail::all_zero(acc))
      throw FieldError("automorphism " + a.name + " does not map generator " + g.name + " to a root of its minimal polynomial");
  }
}

inline CBox Field::generator_box(int i, long bits) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (best_box_[i].width() < pow2(-bits)) return best_box_[i];
  best_box_[i] = refine(i, bits);
  return best_box_[i];
}

inline CBox Field::refine(int i, long bits) const {
  const Generator& g = gens_[i];
  const int n = g.degree();
  const bool real = g.box.real();
  for (long wp = bits + 40; wp <= 8 * bits + 400; wp = 2 * wp) {
    std::vector<CBox> C(n + 1);
    std::vector<CPoint> cm(n + 1);
    for (int k = 0; k <= n; ++k) {
      C[k] = enclose_prefix(g.minpoly[k], i, wp);
      cm[k] = detail::mid(C[k]);
    }
    CPoint z = detail::mid(best_box_[i]);
    if (real) z.im = 0;
    std::vector<CPoint> dm;
    for (int k = 1; k <= n; ++k) dm.push_back({cm[k].re * k, cm[k].im * k});
    const Q tol = pow2(-(bits + 8));
    for (int it = 0; it < 400; ++it) {
      CPoint step = cdiv(detail::horner_point(cm, z, wp), detail::horner_point(dm, z, wp), wp);
      z.re -= step.re;
      z.im = real ? Q(0) : Q(z.im - step.im);
      if (abs(step.re) < tol && abs(step.im) < tol) break;
    }
    if (!detail::box_contains(g.box, z)) throw FieldError("generator " + g.name + ": Newton iteration left the isolating box");
    const Q r = pow2(-(bits + 2));
    CBox B(Interval(z.re - r, z.re + r), Interval(z.im - r, z.im + r));
    CBox Pz = detail::horner_box(C, to_box(z), wp);
    CBox dPB = detail::horner_box(detail::derivative(C), B, wp);
    CPoint q = detail::horner_point(dm, z, wp);
    CPoint Y = cdiv({Q(1), Q(0)}, q, wp);
    CBox Yb = to_box(Y);
    CBox one(Q(1));
    CBox K = to_box(z) - bmul(Yb, Pz, wp) + bmul(one - bmul(Yb, dPB, wp), B - to_box(z), wp);
    if (K.strictly_inside(B)) {
      if (real) K.im = Interval(Q(0));
      return K;
    }
  }
  throw FieldError("generator " + g.name + ": could not certify the root to " + std::to_string(bits) + " bits");
}

inline CBox Field::enclose_prefix(const std::vector<Q>& a, int ngen, long bits) const {
  const long wp = bits + 16;
  std::vector<std::vector<CBox>> pw(ngen);
  for (int i = 0; i < ngen; ++i) {
    CBox g = generator_box(i, wp);
    pw[i].push_back(CBox(Q(1)));
    for (int e = 1; e < gens_[i].degree(); ++e) pw[i].push_back(bmul(pw[i].back(), g, wp));
  }
  CBox acc(Q(0));
  const int n = sub_dim_[ngen];
  for (int m = 0; m < n && m < static_cast<int>(a.size()); ++m) {
    if (a[m] == 0) continue;
    CBox t(a[m]);
    for (int i = 0; i < ngen; ++i) {
      int e = exponent(m, i);
      if (e) t = bmul(t, pw[i][e], wp);
    }
    acc = acc + t;
  }
  return round_out(acc, bits);
}

inline CBox Field::enclose(const std::vector<Q>& a, long bits) const { return enclose_prefix(a, num_generators(), bits); }

inline int Field::sign(const std::vector<Q>& a) const {
  if (detail::all_zero(a)) return 0;
  if (!all_real_) {
    if (!conj_) throw NotRealError("field " + name_ + " declares no complex conjugation; realness undecidable");
    if (apply(*conj_, a) != a) throw NotRealError("element is not real under the declared embedding");
  }
  for (long bits = 32; bits <= (1L << 16); bits *= 2) {
    CBox b = enclose(a, bits);
    if (b.re.lo > 0) return 1;
    if (b.re.hi < 0) return -1;
  }
  throw FieldError("sign undecided at maximum precision");
}

inline std::vector<std::string> Field::audit_boxes() const {
  using C = std::complex<long double>;
  std::vector<std::string> problems;
  for (int i = 0; i < num_generators(); ++i) {
    const Generator& g = gens_[i];
    const int n = g.degree();
    std::vector<C> c(n + 1);
    for (int k = 0; k <= n; ++k) {
      CBox b = enclose_prefix(g.minpoly[k], i, 80);
      c[k] = C(b.re.mid().get_d(), b.im.mid().get_d());
    }
    // Durand-Kerner for all roots
    std::vector<C> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::pow(C(0.4L, 0.9L), k);
    for (int it = 0; it < 2000; ++it) {
      for (int k = 0; k < n; ++k) {
        C p = c[n];
        for (int t = n; t-- > 0;) p = p * z[k] + c[t];
        C den = 1;
        for (int t = 0; t < n; ++t)
          if (t != k) den *= (z[k] - z[t]);
        if (std::abs(den) > 0) z[k] -= p / den;
      }
    }
    int inside = 0;
    const long double eps = 1e-12L;
    for (const auto& r : z)
      if (r.real() >= g.box.re_lo.get_d() - eps && r.real() <= g.box.re_hi.get_d() + eps &&
          r.imag() >= g.box.im_lo.get_d() - eps && r.imag() <= g.box.im_hi.get_d() + eps)
        ++inside;
    if (inside != 1)
      problems.push_back("generator " + g.name + ": box holds " + std::to_string(inside) + " numerical roots");
  }
  return problems;
}

// ---------------------------------------------------------------------------

inline Element::Element(FieldPtr f, std::vector<Q> c) : f_(std::move(f)), c_(std::move(c)) {
  if (!f_) throw FieldError("element without field");
  c_ = f_->pad(c_);
}

inline void require_same(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) throw FieldError("uninitialised element");
  if (a.field() != b.field()) throw FieldError("field mismatch: " + a.field()->name() + " vs " + b.field()->name());
}

inline bool Element::is_zero() const { return detail::all_zero(c_); }

inline std::optional<Q> Element::rational() const {
  for (size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return std::nullopt;
  return c_[0];
}

inline Element& Element::operator+=(const Element& o) {
  require_same(*this, o);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}
inline Element& Element::operator-=(const Element& o) {
  require_same(*this, o);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}
inline Element& Element::operator*=(const Element& o) {
  require_same(*this, o);
  c_ = f_->mul(c_, o.c_);
  return *this;
}
inline Element& Element::operator*=(const Q& q) {
  for (auto& x : c_) x *= q;
  return *this;
}
inline Element Element::operator-() const {
  Element r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}
inline Element Element::inverse() const { return Element(f_, f_->inverse(c_)); }
inline Element Element::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  std::vector<Q> one(c_.size(), Q(0));
  one[0] = 1;
  Element r(f_, one), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}
inline Element Element::apply(int automorphism) const { return Element(f_, f_->apply(automorphism, c_)); }
inline int Element::sign() const { return f_->sign(c_); }
inline bool Element::operator==(const Element& o) const {
  require_same(*this, o);
  return c_ == o.c_;
}

inline std::complex<double> Element::approx() const {
  CBox b = f_->enclose(c_, 64);
  return {b.re.mid().get_d(), b.im.mid().get_d()};
}

inline std::string Element::str() const {
  std::ostringstream os;
  bool first = true;
  for (int m = 0; m < f_->dim(); ++m) {
    if (c_[m] == 0) continue;
    std::string mono;
    for (int i = 0; i < f_->num_generators(); ++i) {
      int e = f_->exponent(m, i);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += f_->generator(i).name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    Q c = c_[m];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Q ac = abs(c);
    if (mono.empty())
      os << ac.get_str();
    else if (ac == 1)
      os << mono;
    else
      os << ac.get_str() << "*" << mono;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

inline Element operator+(Element a, const Element& b) { return a += b; }
inline Element operator-(Element a, const Element& b) { return a -= b; }
inline Element operator*(Element a, const Element& b) { return a *= b; }
inline Element operator*(Element a, const Q& q) { return a *= q; }
inline Element operator*(const Q& q, Element a) { return a *= q; }
inline Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }
inline Element operator/(Element a, const Q& q) { return a *= Q(1 / q); }

inline Element constant(const FieldPtr& f, const Q& q) {
  std::vector<Q> v(f->dim(), Q(0));
  v[0] = q;
  return Element(f, v);
}
inline Element operator+(Element a, const Q& q) { return a + constant(a.field(), q); }
inline Element operator+(const Q& q, Element a) { return a + constant(a.field(), q); }
inline Element operator-(Element a, const Q& q) { return a - constant(a.field(), q); }
inline Element operator-(const Q& q, const Element& a) { return constant(a.field(), q) - a; }
inline bool operator==(const Element& a, const Q& q) {
  auto r = a.rational();
  return r && *r == q;
}

inline Element generator(const FieldPtr& f, int i) {
  std::vector<Q> v(f->dim(), Q(0));
  v.at(f->sub_dim(i)) = 1;
  return Element(f, v);
}

// Re-express an element of a field whose tower is a prefix of `to`'s tower.
inline Element lift(const Element& e, const FieldPtr& to) {
  const auto& from = e.field();
  if (from == to) return e;
  if (from->num_generators() > to->num_generators()) throw FieldError("lift: source tower is longer than target");
  for (int i = 0; i < from->num_generators(); ++i)
    if (from->generator(i).minpoly != to->generator(i).minpoly)
      throw FieldError("lift: towers differ at generator " + from->generator(i).name);
  return Element(to, e.coeffs());
}

// ---------------------------------------------------------------------------

class FieldBuilder {
 public:
  explicit FieldBuilder(std::string name) : name_(std::move(name)) {}

  FieldBuilder& adjoin(std::string gen_name, std::vector<std::vector<Q>> minpoly, IsolatingBox box) {
    gens_.push_back({std::move(gen_name), std::move(minpoly), std::move(box)});
    return *this;
  }
  // minimal polynomial written with elements of draft()
  FieldBuilder& adjoin(std::string gen_name, const std::vector<Element>& minpoly, IsolatingBox box) {
    std::vector<std::vector<Q>> raw;
    for (const auto& c : minpoly) raw.push_back(c.coeffs());
    return adjoin(std::move(gen_name), raw, std::move(box));
  }
  // rational polynomial, constant first
  FieldBuilder& adjoin_rational(std::string gen_name, const std::vector<Q>& minpoly, IsolatingBox box) {
    std::vector<std::vector<Q>> raw;
    for (const auto& c : minpoly) raw.push_back({c});
    return adjoin(std::move(gen_name), raw, std::move(box));
  }

  FieldPtr draft() const { return std::make_shared<const Field>(name_, gens_, std::vector<Automorphism>{}, true); }

  // images are elements of draft() (or any field with the same tower)
  FieldPtr finish(const std::vector<std::pair<std::string, std::vector<Element>>>& autos) const {
    std::vector<Automorphism> raw;
    for (const auto& [n, imgs] : autos) {
      Automorphism a{n, {}};
      for (const auto& e : imgs) a.images.push_back(e.coeffs());
      raw.push_back(a);
    }
    return std::make_shared<const Field>(name_, gens_, raw, true);
  }

 private:
  std::string name_;
  std::vector<Generator> gens_;
};

// ---------------------------------------------------------------------------
// Helpers used across the library

// Q(sqrt m), m square-free (m == 1 gives Q); cached so repeated calls share one field.
inline FieldPtr quadratic_field(long long m) {
  static std::mutex mu;
  static std::map<long long, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  FieldPtr f;
  if (m == 1) {
    f = Field::rationals();
  } else {
    FieldBuilder b("Q(sqrt" + std::to_string(m) + ")");
    if (m > 0) {
      Z r;
      mpz_sqrt(r.get_mpz_t(), Z(static_cast<long>(m)).get_mpz_t());
      b.adjoin_rational("sqrt" + std::to_string(m), {Q(static_cast<long>(-m)), Q(0), Q(1)}, IsolatingBox::real_interval(Q(r), Q(r + 1)));
    } else {
      Z r;
      mpz_sqrt(r.get_mpz_t(), Z(static_cast<long>(-m)).get_mpz_t());
      b.adjoin_rational("sqrt" + std::to_string(m), {Q(static_cast<long>(-m)), Q(0), Q(1)},
                        IsolatingBox::rect(Q(-1, 2), Q(1, 2), Q(r), Q(r + 1)));
    }
    auto d = b.draft();
    f = b.finish({{"negate", {-generator(d, 0)}}});
  }
  cache[m] = f;
  return f;
}

// Positive root of x^2 - n x - 1.
inline Element make_phi(long long n) {
  if (n < 0) throw std::invalid_argument("make_phi: n must be nonnegative");
  long long s, m;
  squarefree_split(n * n + 4, s, m);
  FieldPtr f = quadratic_field(m);
  Element root = m == 1 ? constant(f, Q(static_cast<long>(s))) : generator(f, 0) * Q(static_cast<long>(s));
  return (root + Q(static_cast<long>(n))) / Q(2);
}

// Characteristic polynomial (constant first, monic) of multiplication by a.
inline std::vector<Q> charpoly(const Element& a) {
  auto A = a.field()->mult_matrix(a.coeffs());
  const int n = static_cast<int>(A.size());
  std::vector<Q> c(n + 1, Q(0));
  c[n] = 1;
  std::vector<std::vector<Q>> M(n, std::vector<Q>(n, Q(0)));
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<Q>> AM(n, std::vector<Q>(n, Q(0)));
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) {
        if (A[i][t] == 0) continue;
        for (int j = 0; j < n; ++j)
          if (M[t][j] != 0) AM[i][j] += A[i][t] * M[t][j];
      }
    for (int i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Q tr = 0;
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) tr += A[i][t] * M[t][i];
    c[n - k] = -tr / k;
  }
  return c;
}

// a is an algebraic integer iff the characteristic polynomial of x -> a x has integer coefficients.
inline bool is_algebraic_integer(const Element& a) {
  for (const auto& c : charpoly(a))
    if (!is_integer(c)) return false;
  return true;
}

// Q-dimension of the subalgebra generated by the given elements.
inline int generated_degree(const FieldPtr& f, const std::vector<Element>& gens) {
  const int n = f->dim();
  std::vector<std::vector<Q>> rows;  // echelon basis
  std::vector<int> pivots;
  auto reduce = [&](std::vector<Q> v) {
    for (size_t r = 0; r < rows.size(); ++r)
      if (v[pivots[r]] != 0) {
        Q fac = v[pivots[r]] / rows[r][pivots[r]];
        for (int k = 0; k < n; ++k) v[k] -= fac * rows[r][k];
      }
    return v;
  };
  std::vector<std::vector<Q>> queue;
  std::vector<Q> one(n, Q(0));
  one[0] = 1;
  queue.push_back(one);
  while (!queue.empty()) {
    auto v = reduce(queue.back());
    queue.pop_back();
    int p = -1;
    for (int k = 0; k < n && p < 0; ++k)
      if (v[k] != 0) p = k;
    if (p < 0) continue;
    rows.push_back(v);
    pivots.push_back(p);
    for (const auto& g : gens) {
      require_same(Element(f, v), g);
      queue.push_back(f->mul(v, g.coeffs()));
    }
  }
  return static_cast<int>(rows.size());
}

// For fields whose basis monomials square to rationals (multi-quadratic towers), find sqrt(q) if it exists.
inline std::optional<Element> sqrt_in(const FieldPtr& f, const Q& q) {
  Q r;
  if (q >= 0 && exact_sqrt(q, r)) return constant(f, r);
  for (int m = 1; m < f->dim(); ++m) {
    std::vector<Q> e(f->dim(), Q(0));
    e[m] = 1;
    Element b(f, e);
    auto sq = (b * b).rational();
    if (!sq || *sq == 0) continue;
    Q ratio = q / *sq;
    if (ratio >= 0 && exact_sqrt(ratio, r)) {
      Element cand = b * r;
      try {
        if (cand.sign() < 0) cand = -cand;
      } catch (const NotRealError&) {
        continue;
      }
      return cand;
    }
  }
  return std::nullopt;
}

inline Element random_element(const FieldPtr& f, std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  std::vector<Q> v(f->dim());
  for (auto& x : v) {
    x = Q(num(rng), den(rng));
    x.canonicalize();
  }
  return Element(f, v);
}

}  // namespace smc
