#pragma once
// Per-stratum enumeration of admissible rank-8 S-hat matrices (quotients of rank 4) under explicit bounds.
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "smc/catalogue.hpp"
#include "smc/parallel.hpp"

namespace smc {

// Rejection counts per filter, with the first few rejected tuples of each as samples.
struct FilterTrace {
  static constexpr size_t kSamples = 4;
  long examined = 0;
  std::map<std::string, long> rejected;
  std::map<std::string, std::vector<std::string>> samples;

  void reject(const std::string& filter, const std::string& detail) {
    ++rejected[filter];
    auto& s = samples[filter];
    if (s.size() < kSamples) s.push_back(detail);
  }
  void merge(const FilterTrace& o) {
    examined += o.examined;
    for (const auto& [k, v] : o.rejected) rejected[k] += v;
    for (const auto& [k, v] : o.samples) {
      auto& s = samples[k];
      for (const auto& x : v)
        if (s.size() < kSamples) s.push_back(x);
    }
  }
};

using NamedValues = std::vector<std::pair<std::string, Q>>;

struct CatalogueMatch {
  std::string entry;
  std::string fusion_class;
  std::vector<int> perm;      // survivor label q corresponds to entry label perm[q]
  bool s_agrees = false;      // S-hat equal entrywise (numerically) under perm
  int split_classes = 0;      // balanced splittings of the survivor's naive rules
  bool fusion_agrees = false; // the unique splitting is the entry's fusion class
};

// Numerical search for twists making every second Frobenius-Schur indicator +-1; theta^2 is scanned over
// all roots of unity of order <= max_order. Evidence only: an empty scan does not exclude larger orders.
struct TwistScan {
  int max_order = 0;
  long solutions = 0;            // primitive (theta_1^2, ..., theta_{r-1}^2) tuples found
  int first_order = 0;           // order of the first solution, 0 if none
  std::vector<int> first_turns;  // theta_j^2 = exp(2 pi i a_j / first_order)
};

struct Survivor {
  NamedValues params;
  NamedValues values;                 // derived quantities, e.g. the naive coefficients
  std::optional<SMCData> data;        // materialized S-hat
  std::vector<std::string> passed;    // filters passed, in order
  std::vector<std::string> notes;
  std::string group;                  // Galois group of the materialized data
  std::optional<CatalogueMatch> match;
  std::optional<TwistScan> twists;    // run on survivors without a catalogue match
  std::string param_string() const {
    std::string s;
    for (const auto& [k, v] : params) s += (s.empty() ? "" : ", ") + k + "=" + to_string(v);
    return s;
  }
};

struct StratumResult {
  std::string stratum;
  std::vector<std::pair<std::string, std::string>> ranges;  // parameter -> searched range
  std::vector<Survivor> survivors;
  FilterTrace trace;
  std::string citation;
  std::vector<std::string> notes;
  std::map<std::string, long> tallies;  // side scans: name -> count
};

struct SearchOptions {
  int threads = 1;
};

// Outcome of evaluating one parameter tuple.
struct Verdict {
  bool ok = false;
  std::string filter;  // failing filter when !ok
  std::string detail;
  NamedValues values;
};

namespace strata_detail {

inline Q q(long v) { return Q(v); }

// Applies the integral / nonnegative / below-bound filters to named naive coefficients.
inline Verdict naive_filters(NamedValues vals, long bound) {
  Verdict v;
  v.values = std::move(vals);
  for (const auto& [k, x] : v.values)
    if (!is_integer(x)) {
      v.filter = "n integral";
      v.detail = k + " = " + to_string(x);
      return v;
    }
  for (const auto& [k, x] : v.values)
    if (x < 0) {
      v.filter = "n >= 0";
      v.detail = k + " = " + to_string(x);
      return v;
    }
  for (const auto& [k, x] : v.values)
    if (x >= bound) {
      v.filter = "n < bound";
      v.detail = k + " = " + to_string(x);
      return v;
    }
  v.ok = true;
  return v;
}

// Largest real root of a rational polynomial (constant first), by Durand-Kerner in long double.
inline long double largest_real_root(const std::vector<Q>& p) {
  using C = std::complex<long double>;
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<long double> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = static_cast<long double>(Q(p[i] / p[n]).get_d());
  auto eval = [&](C z) {
    C s = 0;
    for (int i = n; i >= 0; --i) s = s * z + a[i];
    return s;
  };
  long double radius = 1;
  for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(a[i]));
  std::vector<C> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::polar(radius * 0.9L, 0.4L + 2 * 3.14159265358979L * i / n);
  for (int it = 0; it < 2000; ++it) {
    long double move = 0;
    for (int i = 0; i < n; ++i) {
      C den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-17L * radius) break;
  }
  long double best = -INFINITY;
  for (const auto& r : z)
    if (std::abs(r.imag()) < 1e-7L * std::max(1.0L, std::abs(r))) best = std::max(best, r.real());
  if (!std::isfinite(static_cast<double>(best))) throw FieldError("polynomial has no real root");
  return best;
}

inline Q eval_poly(const std::vector<Q>& p, const Q& x) {
  Q s = 0;
  for (size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

// Rational interval around x with an exact sign change of p; the field certifies isolation.
inline IsolatingBox real_root_box(const std::vector<Q>& p, long double x) {
  const double scale = std::max(1.0, std::abs(static_cast<double>(x)));
  for (double eps = 1e-10; eps < 1e-3; eps *= 10) {
    Q lo(static_cast<double>(x) - eps * scale), hi(static_cast<double>(x) + eps * scale);
    if (eval_poly(p, lo) * eval_poly(p, hi) < 0) return IsolatingBox::real_interval(lo, hi);
  }
  throw FieldError("could not bracket the numerical root");
}

// Q(alpha) with alpha the largest real root of p, one automorphism given as a function of the draft generator.
inline FieldPtr simple_field(const std::string& name, const std::string& gen, const std::vector<Q>& p,
                             const std::function<Element(const Element&)>& image) {
  FieldBuilder b(name);
  b.adjoin_rational(gen, p, real_root_box(p, largest_real_root(p)));
  auto d = b.draft();
  auto img = image(generator(d, 0));
  return b.finish({{gen + "->" + img.str(), {img}}});
}

// Solves [[a,b],[c,d]] x = [e,f] over a field.
inline std::optional<std::pair<Element, Element>> solve2(const Element& a, const Element& b, const Element& c,
                                                          const Element& d, const Element& e, const Element& f) {
  Element det = a * d - b * c;
  if (det.is_zero()) return std::nullopt;
  return std::make_pair((e * d - b * f) / det, (a * f - e * c) / det);
}

inline std::set<Perm> perm_set(const GaloisGroup& g) {
  auto p = g.perms();
  return {p.begin(), p.end()};
}

inline std::set<Perm> group_from(const std::vector<std::string>& cycles) {
  std::vector<Perm> gens;
  for (const auto& c : cycles) gens.push_back(parse_cycles(c, 4));
  auto all = generate(gens, 4);
  return {all.begin(), all.end()};
}

inline std::string perms_string(const std::set<Perm>& s) {
  std::string out = "{";
  for (const auto& p : s) out += (out.size() > 1 ? "," : "") + cycle_string(p);
  return out + "}";
}

// Orthogonality, dimension positivity, Verlinde integrality and Galois group; failures become notes.
inline void validate(Survivor& s, const std::string& want_stratum) {
  if (!s.data) return;
  const auto& d = *s.data;
  if (!check_dimensions(d).pass()) s.notes.push_back("dimension check failed");
  if (!check_orthogonality(d).pass()) s.notes.push_back("orthogonality failed");
  try {
    verlinde_naive(d);
  } catch (const NonIntegralFusion& e) {
    s.notes.push_back(e.what());
  }
  try {
    auto g = compute_galois_group(d);
    s.group = catalogue_detail::group_label(d, g);
    if (!want_stratum.empty() && s.group != want_stratum)
      s.notes.push_back("Galois group " + s.group + " differs from the stratum " + want_stratum);
  } catch (const std::exception& e) {
    s.notes.push_back(std::string("Galois group: ") + e.what());
  }
}

inline bool survivor_valid(const Survivor& s) { return s.data && s.notes.empty(); }

// Q(sqrt5, sqrt2), holding every phi_m with m in {0, 1, 2}.
inline FieldPtr sqrt5_sqrt2_field() {
  static const FieldPtr f = [] {
    FieldBuilder b("Q(sqrt5,sqrt2)");
    b.adjoin_rational("sqrt5", {Q(-5), Q(0), Q(1)}, IsolatingBox::real_interval(Q(2), Q(3)));
    b.adjoin_rational("sqrt2", {Q(-2), Q(0), Q(1)}, IsolatingBox::real_interval(Q(1), Q(2)));
    auto d = b.draft();
    auto s5 = generator(d, 0), s2 = generator(d, 1);
    return b.finish({{"sqrt5->-sqrt5", {-s5, s2}}, {"sqrt2->-sqrt2", {s5, -s2}}});
  }();
  return f;
}

inline Element phi_in(const FieldPtr& f, int m) {
  if (m == 0) return constant(f, Q(1));
  const Element s5 = generator(f, 0), s2 = generator(f, 1);
  if (m == 1) return (s5 + Q(1)) / Q(2);
  if (m == 2) return s2 + Q(1);
  throw std::invalid_argument("phi_m is only tabulated for m <= 2");
}

// [[1,ab,a,b],[ab,1,-b,-a],[a,-b,-1,ab],[b,-a,ab,-1]] with a = phi_m, b = phi_n
inline Matrix klein_form(const Element& a, const Element& b) {
  const auto one = constant(a.field(), Q(1));
  const auto ab = a * b;
  return {{one, ab, a, b}, {ab, one, -b, -a}, {a, -b, -one, ab}, {b, -a, ab, -one}};
}

}  // namespace strata_detail

// ---------------------------------------------------------------------------
// Z4 = <(0123)>

// One (c1, c3, P) tuple through the Z4 filters; P must already be a square root of (Sigma^2-32)/(Delta^2+32).
inline Verdict z4_candidate(long c1, long c3, const Q& P, long bound) {
  using strata_detail::q;
  const Q Sig = q(c1 + c3), Del = q(c1 - c3);
  Verdict v;
  Q c2 = (3 * Del * Sig + P * (Del * Del + 32)) / 16;
  if (!is_integer(c2)) {
    v.filter = "c2 integral";
    v.detail = "c2 = " + to_string(c2);
    return v;
  }
  Q b1 = (Del * Sig - 8 * c2) / 4;
  Q n111 = (5 * q(c1) - 3 * q(c3)) / 8 - Del * P / 8;
  Q n113 = Sig / 8 - Del * P / 8;
  Q n122 = Sig / 4 + Del * P / 4;
  NamedValues n = {{"n111", n111},     {"n112", 1 - P},  {"n113", n113},      {"n122", n122},
                   {"n123", -P},       {"n133", n113},   {"n222", b1 + 2 * P}, {"n223", n122},
                   {"n233", -1 - P},   {"n333", 2 * n113 - n111}};
  v = strata_detail::naive_filters(n, bound);
  v.values.insert(v.values.begin(), {{"c2", c2}, {"b1", b1}});
  return v;
}

inline std::optional<SMCData> materialize_z4(long c1, long c3, long c2, const NamedValues& vals) {
  auto get = [&](const std::string& k) {
    for (const auto& [n, x] : vals)
      if (n == k) return x;
    throw std::logic_error("missing " + k);
  };
  // d1 is the largest real root of x^4 - c1 x^3 + c2 x^2 + c3 x - 1
  std::vector<Q> p = {Q(-1), Q(c3), Q(c2), Q(-c1), Q(1)};
  // d2, d3 from the first two rows of N-hat_1 d = d_1 d
  auto solve = [&](const Element& d1) {
    auto one = constant(d1.field(), Q(1));
    auto sol = strata_detail::solve2(one * get("n112"), one * get("n113"), get("n122") - d1, one * get("n123"),
                                     d1 * d1 - Q(1) - d1 * get("n111"), -d1 * get("n112"));
    if (!sol) throw FieldError("dimension system is singular");
    return *sol;
  };
  auto f = strata_detail::simple_field("Q(d1)[" + std::to_string(c1) + "," + std::to_string(c3) + "]", "d1", p,
                                       [&](const Element& d1) {
                                         auto [d2, d3] = solve(d1);
                                         return -d2 / d1;
                                       });
  auto d1 = generator(f, 0);
  auto [d2, d3] = solve(d1);
  auto one = constant(f, Q(1));
  Matrix S = {{one, d1, d2, d3}, {d1, -d2, d3, one}, {d2, d3, -one, -d1}, {d3, one, -d1, d2}};
  return make_data("Z4 candidate", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
}

// Even c1, c3 >= 0 with Sigma = c1 + c3 >= 6. Sigma = 2(n122 + 2 n113) caps Sigma at 6(bound - 1).
inline StratumResult search_z4(long bound, const SearchOptions& opt = {}) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  StratumResult res;
  res.stratum = "<(0123)>";
  const long sig_max = 6 * (bound - 1);
  res.ranges = {{"c1, c3", "even, >= 0, 6 <= c1 + c3 <= " + std::to_string(sig_max)},
                {"P", "+-sqrt((Sigma^2-32)/(Delta^2+32)), rational"},
                {"n_ijk", "nonnegative integers < " + std::to_string(bound)}};
  res.citation = "Z4 stratum: below the bound the only S-hat is the PSU(2)_14 quotient";
  struct Hit {
    long c1, c3;
    Q P;
    Verdict v;
  };
  struct Chunk {
    std::vector<Hit> hits;
    FilterTrace trace;
  };
  auto chunks = parallel_collect<Chunk>(sig_max / 2 + 1, opt.threads, [&](long k) {
    Chunk ch;
    const long c1 = 2 * k;
    for (long c3 = 0; c1 + c3 <= sig_max; c3 += 2) {
      const long S = c1 + c3, D = c1 - c3;
      if (S < 6) continue;
      ch.trace.examined++;
      const std::string tup = "(c1,c3)=(" + std::to_string(c1) + "," + std::to_string(c3) + ")";
      Q ratio(S * S - 32, D * D + 32);
      ratio.canonicalize();
      Q root;
      if (!exact_sqrt(ratio, root)) {
        ch.trace.reject("P rational", tup);
        continue;
      }
      // Sigma^2 != 32, so root != 0 and the two signs are distinct
      for (const Q& P : {root, Q(-root)}) {
        auto v = z4_candidate(c1, c3, P, bound);
        if (!v.ok) {
          ch.trace.reject(v.filter, tup + ", P=" + to_string(P) + ": " + v.detail);
          continue;
        }
        ch.hits.push_back({c1, c3, P, v});
      }
    }
    return std::vector<Chunk>{ch};
  });
  for (auto& ch : chunks) {
    res.trace.merge(ch.trace);
    for (auto& h : ch.hits) {
      Survivor s;
      const Q c2 = h.v.values[0].second;
      s.params = {{"c1", Q(h.c1)}, {"c3", Q(h.c3)}, {"c2", c2}, {"P", h.P}, {"Sigma", Q(h.c1 + h.c3)}, {"Delta", Q(h.c1 - h.c3)}};
      s.values = h.v.values;
      s.passed = {"Sigma >= 6", "P rational", "c2 integral", "n integral", "n >= 0", "n < bound"};
      try {
        s.data = materialize_z4(h.c1, h.c3, c2.get_num().get_si(), h.v.values);
      } catch (const std::exception& e) {
        s.notes.push_back(std::string("not materialized: ") + e.what());
      }
      strata_detail::validate(s, res.stratum);
      res.survivors.push_back(std::move(s));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Z3 = <(012)>

inline Verdict z3_candidate(long n, long t, long c, long bound) {
  using strata_detail::q;
  const Q N = q(n), T = q(t), C = q(c), w = N * N + 3;
  NamedValues vals = {{"n111", (T - N * C - 1) / 2 - T / w},
                      {"n112", (-C * N + 2 * N * N + T - 3) / (2 * w)},
                      {"n113", (C * N * N + 2 * C - N * T + 3 * N) / (2 * w)},
                      {"n122", (C * N - 2 * N * N + T + 3) / (2 * w)},
                      {"n123", (C - 3 * N) / w},
                      {"n133", (-C * N + 2 * N * N + T - 3) / (2 * w)},
                      {"n222", (1 + N * C + T) / 2 - T / w},
                      {"n223", (2 * C + 3 * N + C * N * N + N * T) / (2 * w)},
                      {"n233", (C * N - 2 * N * N + T + 3) / (2 * w)},
                      {"n333", (C + N * N * N) / w}};
  return strata_detail::naive_filters(std::move(vals), bound);
}

// t^2 = c^2 (n^2+4) - 2 n c (9 + 2 n^2) - 27
inline Z z3_discriminant(long n, long c) {
  Z N(n), C(c);
  return C * C * (N * N + 4) - 2 * N * C * (9 + 2 * N * N) - 27;
}

inline std::optional<SMCData> materialize_z3(long n, long c, const NamedValues& vals) {
  auto get = [&](const std::string& k) {
    for (const auto& [m, x] : vals)
      if (m == k) return x;
    throw std::logic_error("missing " + k);
  };
  // d3 is the largest real root of x^3 - c x^2 + n c x + c; d1, d2 from rows 1, 2 of N-hat_3 d = d_3 d
  std::vector<Q> p = {Q(c), Q(n * c), Q(-c), Q(1)};
  auto solve = [&](const Element& d3) {
    auto one = constant(d3.field(), Q(1));
    auto sol = strata_detail::solve2(get("n113") - d3, one * get("n123"), one * get("n123"), get("n223") - d3,
                                     -d3 * get("n133"), -d3 * get("n233"));
    if (!sol) throw FieldError("dimension system is singular");
    return *sol;
  };
  auto f = strata_detail::simple_field("Q(d3)[" + std::to_string(n) + "," + std::to_string(c) + "]", "d3", p,
                                       [&](const Element& d3) { return d3 / solve(d3).first; });
  auto d3 = generator(f, 0);
  auto [d1, d2] = solve(d3);
  auto one = constant(f, Q(1));
  Element s33 = d2 - d1 - Q(1);  // row 0 orthogonal to row 3
  Matrix S = {{one, d1, d2, d3}, {d1, -d2, -one, d3}, {d2, -one, d1, -d3}, {d3, d3, -d3, s33}};
  return make_data("Z3 candidate", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
}

// n222 - n111 = n c + 1 lies in (-bound, bound), so |n| c <= bound; for n = 0, n333 = c/3 < bound.
inline StratumResult search_z3(long bound, const SearchOptions& opt = {}) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  StratumResult res;
  res.stratum = "<(012)>";
  const long nmax = bound + 1;
  res.ranges = {{"n", "[" + std::to_string(-nmax) + ", " + std::to_string(nmax) + "]"},
                {"c", "1 <= c <= (bound+1)/|n| + 1, or 3 bound + 3 when n = 0"},
                {"t", "t > 0, t^2 = c^2(n^2+4) - 2nc(9+2n^2) - 27"},
                {"n_ijk", "nonnegative integers < " + std::to_string(bound)}};
  res.citation = "Z3 stratum: below the bound the only S-hat is that of PSU(2)_7 x sVec";
  struct Hit {
    long n, t, c;
    Verdict v;
  };
  struct Chunk {
    std::vector<Hit> hits;
    FilterTrace trace;
  };
  auto chunks = parallel_collect<Chunk>(2 * nmax + 1, opt.threads, [&](long k) {
    Chunk ch;
    const long n = k - nmax;
    const long cmax = n == 0 ? 3 * bound + 3 : (bound + 1) / std::labs(n) + 1;
    for (long c = 1; c <= cmax; ++c) {
      ch.trace.examined++;
      const std::string tup = "(n,c)=(" + std::to_string(n) + "," + std::to_string(c) + ")";
      Z D = z3_discriminant(n, c);
      if (D <= 0 || !mpz_perfect_square_p(D.get_mpz_t())) {
        ch.trace.reject("discriminant a positive square", tup);
        continue;
      }
      Z t;
      mpz_sqrt(t.get_mpz_t(), D.get_mpz_t());
      auto v = z3_candidate(n, t.get_si(), c, bound);
      if (!v.ok) {
        ch.trace.reject(v.filter, "(n,t,c)=(" + std::to_string(n) + "," + t.get_str() + "," + std::to_string(c) + "): " + v.detail);
        continue;
      }
      ch.hits.push_back({n, t.get_si(), c, v});
    }
    return std::vector<Chunk>{ch};
  });
  for (auto& ch : chunks) {
    res.trace.merge(ch.trace);
    for (auto& h : ch.hits) {
      Survivor s;
      s.params = {{"n", Q(h.n)}, {"t", Q(h.t)}, {"c", Q(h.c)}};
      s.values = h.v.values;
      s.passed = {"c > 0", "discriminant a positive square", "n integral", "n >= 0", "n < bound"};
      try {
        s.data = materialize_z3(h.n, h.c, h.v.values);
      } catch (const std::exception& e) {
        s.notes.push_back(std::string("not materialized: ") + e.what());
      }
      strata_detail::validate(s, res.stratum);
      res.survivors.push_back(std::move(s));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// <(01)>

// Sign pattern eps1 = 1, eps2 = 1, eps3 = -1 with s23 = 0; (t, u) = (s22/d2, s33/d3).
inline Verdict t_u_candidate(long t, long u) {
  using strata_detail::q;
  Verdict v;
  const Q T = q(t), U = q(u), den = T * T - U * U;
  if (t >= 0) {
    v.filter = "t < 0";
    v.detail = "t = " + std::to_string(t);
    return v;
  }
  if (den <= 0) {
    v.filter = "t^2 - u^2 > 0";
    v.detail = "t^2 - u^2 = " + to_string(den);
    return v;
  }
  v.values = {{"m", -2 * T * (U * U + 2) / den},
              {"n", 2 * U * (T * T + 2) / den},
              {"v", 2 * (U * U + 2) / den},
              {"w", 2 * (T * T * U * U + T * T + U * U) / den},
              {"x", 2 * (T * T + 2) / den},
              {"n222", T * (den - 2) / den}};
  for (const auto& [k, x] : v.values)
    if (k != "n222" && !is_integer(x)) {
      v.filter = "m, n, v, w, x integral";
      v.detail = k + " = " + to_string(x);
      return v;
    }
  for (const auto& [k, x] : v.values)
    if ((k == "n" && x < 0) || ((k == "m" || k == "v" || k == "w" || k == "x") && x <= 0)) {
      v.filter = "m, v, w, x > 0, n >= 0";
      v.detail = k + " = " + to_string(x);
      return v;
    }
  const Q n222 = v.values.back().second;
  if (n222 < 0 || !is_integer(n222)) {
    v.filter = "n222 nonnegative integer";
    v.detail = "n222 = " + to_string(n222);
    return v;
  }
  v.ok = true;
  return v;
}

// d1 + 1/d1 = w, d2^2 = v d1, d3^2 = x d1; handled when d1 is rational and one square root suffices.
inline std::optional<SMCData> materialize_01(long t, long u, const NamedValues& vals) {
  auto get = [&](const std::string& k) {
    for (const auto& [m, x] : vals)
      if (m == k) return x;
    throw std::logic_error("missing " + k);
  };
  const Q w = get("w");
  Q disc_root;
  if (!exact_sqrt(Q(w * w - 4), disc_root)) throw FieldError("d1 is irrational");
  const Q d1 = (w + disc_root) / 2;
  Q a2 = get("v") * d1, a3 = get("x") * d1;
  auto squarefree = [](const Q& x, Q& coef) -> long long {
    // x = coef^2 * m with m squarefree integer
    Z num = x.get_num() * x.get_den();
    long long s, m;
    squarefree_split(num.get_si(), s, m);
    coef = Q(static_cast<long>(s), x.get_den());
    coef.canonicalize();
    return m;
  };
  Q k2, k3;
  long long m2 = squarefree(a2, k2), m3 = squarefree(a3, k3);
  if (m2 != 1 && m3 != 1 && m2 != m3) throw FieldError("d2 and d3 need two square roots");
  auto f = quadratic_field(m2 != 1 ? m2 : m3);
  auto root = [&](long long m, const Q& k) { return m == 1 ? constant(f, k) : generator(f, 0) * k; };
  auto D1 = constant(f, d1), one = constant(f, Q(1)), zero = constant(f, Q(0));
  auto d2 = root(m2, k2), d3 = root(m3, k3);
  Matrix S = {{one, D1, d2, d3}, {D1, one, d2, -d3}, {d2, d2, d2 * Q(t), zero}, {d3, -d3, zero, d3 * Q(u)}};
  return make_data("<(01)> candidate", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
}

// 0 < t^2 - u^2 <= 2 forces |t| + |u| <= 2; the box below is wider than needed.
inline StratumResult search_01(const SearchOptions& opt = {}) {
  StratumResult res;
  res.stratum = "<(01)>";
  const long R = 16;
  res.ranges = {{"t", "[-" + std::to_string(R) + ", -1]"}, {"u", "[-" + std::to_string(R) + ", " + std::to_string(R) + "]"},
                {"(m, z)", "eps2 = eps3 = -1 branch, |m|, |z| <= 50"}};
  res.citation = "<(01)> stratum: the only S-hat has dimensions (1, 1, 2, sqrt6), the SO(12)_2 centralizer quotient";
  struct Chunk {
    std::vector<Survivor> hits;
    FilterTrace trace;
  };
  auto chunks = parallel_collect<Chunk>(R, opt.threads, [&](long k) {
    Chunk ch;
    const long t = -R + k;
    for (long u = -R; u <= R; ++u) {
      ch.trace.examined++;
      auto v = t_u_candidate(t, u);
      if (!v.ok) {
        ch.trace.reject(v.filter, "(t,u)=(" + std::to_string(t) + "," + std::to_string(u) + "): " + v.detail);
        continue;
      }
      Survivor s;
      s.params = {{"t", Q(t)}, {"u", Q(u)}};
      s.values = v.values;
      s.passed = {"t < 0", "t^2 - u^2 > 0", "m, n, v, w, x integral", "m, v, w, x > 0, n >= 0", "n222 nonnegative integer"};
      try {
        s.data = materialize_01(t, u, v.values);
      } catch (const std::exception& e) {
        s.notes.push_back(std::string("not materialized: ") + e.what());
      }
      ch.hits.push_back(std::move(s));
    }
    return std::vector<Chunk>{ch};
  });
  for (auto& ch : chunks) {
    res.trace.merge(ch.trace);
    for (auto& s : ch.hits) {
      strata_detail::validate(s, res.stratum);
      res.survivors.push_back(std::move(s));
    }
  }

  // eps2 = eps3 = -1: t = 2m^2/(m^2+z^2), v = 2z^2/(m^2+z^2) integral and positive forces |m| = |z|, t = v = 1,
  // d2 = d3 = sqrt(d1), m = d1 - 1 and z^2 = (d1-1)^2/d1.
  FilterTrace branch;
  long branch_survivors = 0;
  for (long m = -50; m <= 50; ++m)
    for (long z = -50; z <= 50; ++z) {
      if (m == 0 && z == 0) continue;
      branch.examined++;
      const std::string tup = "(m,z)=(" + std::to_string(m) + "," + std::to_string(z) + ")";
      Q den(m * m + z * z), T = Q(2 * m * m) / den, V = Q(2 * z * z) / den;
      if (!is_integer(T) || !is_integer(V)) {
        branch.reject("t, v integral", tup);
        continue;
      }
      if (T < 1 || V < 1) {
        branch.reject("t, v >= 1", tup);
        continue;
      }
      if (m < 0) {
        branch.reject("d1 = m + 1 >= 1", tup);
        continue;
      }
      if (Q(z * z) * Q(m + 1) != Q(m * m)) {
        branch.reject("z^2 d1 = (d1 - 1)^2", tup);
        continue;
      }
      if (m == 0) {
        branch.reject("d1 = 1 makes S-hat rational", tup);
        continue;
      }
      ++branch_survivors;
    }
  std::ostringstream os;
  os << "eps2 = eps3 = -1 branch: " << branch.examined << " (m,z) pairs, " << branch_survivors << " survivors";
  for (const auto& [k, v] : branch.rejected) os << "; " << k << ": " << v;
  res.notes.push_back(os.str());
  res.notes.push_back("eps1 = -1 forces d2 = d3 and sigma(d2) = d2/d1 = -d2/d1, impossible");
  res.tallies["eps2=eps3=-1 pairs examined"] = branch.examined;
  res.tallies["eps2=eps3=-1 survivors"] = branch_survivors;
  return res;
}

// ---------------------------------------------------------------------------
// Klein four and <(01)(23)>

// (m - 2)(phi_m (m + 1) + 1) <= 0, decided by exact sign
inline bool fs_bound_holds(int m) {
  Element phi = make_phi(m);
  Element val = (phi * Q(m + 1) + Q(1)) * Q(m - 2);
  return val.is_zero() || val.sign() < 0;
}

inline std::vector<int> fs_admissible(int upto = 20) {
  std::vector<int> out;
  for (int m = 0; m <= upto; ++m)
    if (fs_bound_holds(m)) out.push_back(m);
  return out;
}

namespace strata_detail {
inline Survivor klein_candidate(int m, int n) {
  auto f = sqrt5_sqrt2_field();
  Survivor s;
  s.params = {{"m", Q(m)}, {"n", Q(n)}};
  s.data = make_data("phi form", klein_form(phi_in(f, m), phi_in(f, n)), std::nullopt, std::vector<int>{0, 1, 2, 3});
  return s;
}
}  // namespace strata_detail

// Sign pattern 2 of orthogonality (pattern 1 forces d1 d2 d3 = 1, all dims 1).
inline StratumResult search_klein4(const SearchOptions& = {}) {
  StratumResult res;
  res.stratum = "<(01)(23),(02)(13)>";
  res.ranges = {{"m, n", "0..20 screened by the FS bound, then m <= n"}};
  res.citation = "Klein-four stratum: S-hat has entries phi_1, phi_2, phi_1 phi_2 (Fib x PSU(2)_6 quotient)";
  auto adm = fs_admissible(20);
  for (int m = 0; m <= 20; ++m)
    if (!fs_bound_holds(m)) res.trace.reject("FS bound", "m=" + std::to_string(m));
  res.notes.push_back("FS bound keeps m in {" + [&] {
    std::string s;
    for (int m : adm) s += (s.empty() ? "" : ",") + std::to_string(m);
    return s;
  }() + "}");
  const auto want = strata_detail::group_from({"(01)(23)", "(02)(13)"});
  for (int m : adm)
    for (int n : adm) {
      if (m > n) continue;
      res.trace.examined++;
      auto s = strata_detail::klein_candidate(m, n);
      auto g = strata_detail::perm_set(compute_galois_group(*s.data));
      if (g != want) {
        res.trace.reject("Galois group is Klein four", "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + "): " +
                                                            strata_detail::perms_string(g));
        continue;
      }
      s.passed = {"sign pattern 2", "FS bound", "Galois group is Klein four"};
      strata_detail::validate(s, res.stratum);
      res.survivors.push_back(std::move(s));
    }
  return res;
}

struct PairflipCase2 {
  int n;
  long long k, P;  // sqrt(n^2 + 4) = k sqrt(P)
  Q h, d;          // h = -k/2; d3 = n/2 + d sqrt(P)
};

// Case 1 (eps1 = 1) reuses the phi form with exact group {e, (01)(23)}; Case 2 (eps1 = -1) scans
// [[1,phi,1,phi],[phi,-1,phi,-1],[1,phi,-1,-phi],[phi,-1,-phi,1]] and keeps the forms whose semion
// complement is one of the rank-4 quotients in the catalogue.
inline StratumResult search_0123_pairflip(long dim_bound, const SearchOptions& = {}) {
  if (dim_bound < 2) throw std::invalid_argument("dim_bound must be >= 2");
  StratumResult res;
  res.stratum = "<(01)(23)>";
  res.ranges = {{"case 1: m, n", "FS-admissible, m <= n"},
                {"case 2: n", "1 <= n, phi_n < " + std::to_string(dim_bound)},
                {"case 2: h", "-k/2 (closed interval endpoint)"}};
  res.citation = "<(01)(23)> stratum with dims < bound: [PSU(2)_6 x PSU(2)_6]_Z2, Fib x Fib x sVec, "
                 "Sem x Fib x sVec or Sem x PSU(2)_6";
  const auto want = strata_detail::group_from({"(01)(23)"});
  for (int m : fs_admissible(20))
    for (int n : fs_admissible(20)) {
      if (m > n) continue;
      res.trace.examined++;
      auto s = strata_detail::klein_candidate(m, n);
      auto g = strata_detail::perm_set(compute_galois_group(*s.data));
      const std::string tup = "case 1 (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
      if (g != want) {
        std::string why = strata_detail::perms_string(g);
        if (m == 0 && n > 0) why += ", reappears as case 2 after relabeling";
        res.trace.reject("Galois group is {e,(01)(23)}", tup + ": " + why);
        continue;
      }
      s.params.insert(s.params.begin(), {"case", Q(1)});
      s.passed = {"FS bound", "Galois group is {e,(01)(23)}"};
      strata_detail::validate(s, res.stratum);
      res.survivors.push_back(std::move(s));
    }
  res.notes.push_back("case 1 with s23 = -1 is the d2 = d3 form with labels 2, 3 exchanged; s23 = 1 gives a trivial group");

  // rank-4 super-modular quotients available as complements
  std::vector<std::pair<std::string, NaiveFusion>> rank4;
  for (const auto& name : list_entries("rank 4")) rank4.push_back({name, verlinde_naive(load_entry(name).data)});

  for (long n = 1;; ++n) {
    Element phi = make_phi(n);
    if ((phi - Q(dim_bound)).sign() >= 0) break;
    res.trace.examined++;
    const std::string tup = "case 2 n=" + std::to_string(n);
    auto f = phi.field();
    auto one = constant(f, Q(1));
    Matrix S = {{one, phi, one, phi}, {phi, -one, phi, -one}, {one, phi, -one, -phi}, {phi, -one, -phi, one}};
    Survivor s;
    long long k, P;
    squarefree_split(n * n + 4, k, P);
    s.params = {{"case", Q(2)}, {"n", Q(n)}, {"k", Q(static_cast<long>(k))}, {"h", detail::frac(-static_cast<long>(k), 2)}};
    s.data = make_data("case 2 form", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
    strata_detail::validate(s, res.stratum);
    if (!strata_detail::survivor_valid(s)) {
      res.trace.reject("valid S-hat with group {e,(01)(23)}", tup + ": " + s.notes.front());
      continue;
    }
    std::optional<InvertibleFactor> fac;
    try {
      fac = factor_by_invertible(*s.data);
    } catch (const InconsistentFactorization& e) {
      res.trace.reject("semion factorization", tup + ": " + e.what());
      continue;
    }
    if (!fac) {
      res.trace.reject("semion factorization", tup + ": no invertible label");
      continue;
    }
    auto cn = verlinde_naive(fac->complement);
    std::string hit;
    for (const auto& [name, nf] : rank4)
      if (same_naive_class(nf, cn)) hit = name;
    if (hit.empty()) {
      res.trace.reject("complement is a rank-4 quotient", tup + ": complement n-hat_111 = " + std::to_string(cn(1, 1, 1)));
      continue;
    }
    Q half_k(static_cast<long>(k), 2);
    half_k.canonicalize();
    s.values = {{"d", half_k}};
    s.passed = {"valid S-hat with group {e,(01)(23)}", "semion factorization", "complement is a rank-4 quotient"};
    s.notes.clear();
    s.group = res.stratum;
    res.survivors.push_back(std::move(s));
    res.survivors.back().passed.push_back("complement matches " + hit);
  }
  return res;
}

inline std::optional<PairflipCase2> case2_parameters(const Survivor& s) {
  if (s.params.empty() || s.params[0].second != 2) return std::nullopt;
  PairflipCase2 c;
  c.n = static_cast<int>(s.params[1].second.get_num().get_si());
  c.k = s.params[2].second.get_num().get_si();
  long long kk, P;
  squarefree_split(static_cast<long long>(c.n) * c.n + 4, kk, P);
  c.P = P;
  c.h = s.params[3].second;
  c.d = s.values.at(0).second;
  return c;
}

// ---------------------------------------------------------------------------
// trivial group, non-self-dual, and the strata without realizations

// Symmetric +-1 matrices with first row 1, as rational S-hat candidates.
inline std::vector<Matrix> sign_matrices() {
  auto f = Field::rationals();
  std::vector<Matrix> out;
  const std::vector<std::pair<int, int>> slots = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
  for (int mask = 0; mask < 64; ++mask) {
    Matrix S(4, std::vector<Element>(4, constant(f, Q(1))));
    for (size_t b = 0; b < slots.size(); ++b) {
      auto [i, j] = slots[b];
      const Q v = (mask >> b) & 1 ? Q(-1) : Q(1);
      S[i][j] = S[j][i] = constant(f, v);
    }
    out.push_back(S);
  }
  return out;
}

inline StratumResult search_trivial() {
  StratumResult res;
  res.stratum = "<(0)>";
  res.ranges = {{"S-hat", "symmetric +-1 matrices with first row 1 (64)"}};
  res.citation = "trivial stratum: pointed, C(Z2 x Z2, Q) x sVec";
  std::vector<NaiveFusion> classes;
  for (const auto& S : sign_matrices()) {
    res.trace.examined++;
    auto d = make_data("+-1 matrix", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
    if (!check_orthogonality(d).pass()) {
      res.trace.reject("orthogonality", "");
      continue;
    }
    NaiveFusion nf;
    try {
      nf = verlinde_naive(d);
    } catch (const NonIntegralFusion&) {
      res.trace.reject("Verlinde integrality", "");
      continue;
    }
    // up to relabeling the S-hat itself
    bool seen = false;
    for (const auto& s : res.survivors) {
      Perm q = identity_perm(4);
      do {
        bool eq = true;
        for (int i = 0; i < 4 && eq; ++i)
          for (int j = 0; j < 4 && eq; ++j) eq = s.data->hatS[q[i]][q[j]] == d.hatS[i][j];
        seen = seen || eq;
      } while (!seen && std::next_permutation(q.begin() + 1, q.end()));
    }
    if (seen) {
      res.trace.reject("relabeling of an earlier survivor", "");
      continue;
    }
    Survivor s;
    s.params = {{"index", Q(static_cast<long>(res.survivors.size()) + 1)}};
    s.data = d;
    s.passed = {"orthogonality", "Verlinde integrality", "distinct up to relabeling"};
    strata_detail::validate(s, res.stratum);
    res.survivors.push_back(std::move(s));
  }
  return res;
}

inline StratumResult search_nonselfdual() {
  StratumResult res;
  res.stratum = "non-self-dual";
  res.ranges = {{"sign", "+i, -i"}};
  res.citation = "non-self-dual: S-hat [[1,1,1,1],[1,1,-1,-1],[1,-1,+-i,-+i],[1,-1,-+i,+-i]] (C(Z4,Q) x sVec)";
  const auto& k = named_field("Q(i)");
  auto one = k.one(), i = k["i"];
  for (int sign : {1, -1}) {
    res.trace.examined++;
    auto z = i * Q(sign);
    Matrix S = {{one, one, one, one}, {one, one, -one, -one}, {one, -one, z, -z}, {one, -one, -z, z}};
    Survivor s;
    s.params = {{"sign", Q(sign)}};
    s.data = make_data("non-self-dual form", S);
    s.passed = {"complex S-hat"};
    strata_detail::validate(s, res.stratum);
    res.survivors.push_back(std::move(s));
  }
  return res;
}

inline std::vector<StratumResult> enumerate_trivial_and_nonselfdual() { return {search_trivial(), search_nonselfdual()}; }

// d1^2 | 1 + 3 d1^2 over 1 <= d1 <= limit.
inline std::vector<long> fixed_zero_dimension_scan(long limit = 10000) {
  std::vector<long> out;
  for (long d = 1; d <= limit; ++d) {
    Z dd = Z(d) * d;
    if ((1 + 3 * dd) % dd == 0) out.push_back(d);
  }
  return out;
}

inline std::vector<StratumResult> nonexistent_strata() {
  std::vector<StratumResult> out;
  {
    StratumResult r;
    r.stratum = "<(123)>";
    r.ranges = {{"d1", "1..10000"}, {"S-hat", "symmetric +-1 matrices with first row 1 (64)"}};
    r.citation = "no rank-8 self-dual super-modular category has Galois group <(123)>";
    auto ds = fixed_zero_dimension_scan();
    r.notes.push_back("d1^2 | 1 + 3 d1^2 holds only for d1 in {" + [&] {
      std::string s;
      for (long d : ds) s += (s.empty() ? "" : ",") + std::to_string(d);
      return s;
    }() + "}");
    const auto z3 = strata_detail::group_from({"(123)"});
    long with_z3 = 0;
    for (const auto& S : sign_matrices()) {
      r.trace.examined++;
      auto d = make_data("+-1 matrix", S, std::nullopt, std::vector<int>{0, 1, 2, 3});
      if (!check_orthogonality(d).pass()) {
        r.trace.reject("orthogonality", "");
        continue;
      }
      auto g = strata_detail::perm_set(compute_galois_group(d));
      if (g == z3) ++with_z3;
      else r.trace.reject("Galois group is <(123)>", strata_detail::perms_string(g));
    }
    r.notes.push_back("+-1 matrices with Galois group <(123)>: " + std::to_string(with_z3));
    r.tallies["d1 values with d1^2 | 1 + 3 d1^2"] = static_cast<long>(ds.size());
    r.tallies["+-1 matrices with group <(123)>"] = with_z3;
    out.push_back(std::move(r));
  }
  for (const auto& [label, text] : std::vector<std::pair<std::string, std::string>>{
           {"<(23)>", "no rank-8 self-dual super-modular category has Galois group <(23)>"},
           {"<(01),(23)>", "no rank-8 self-dual super-modular category has Galois group <(01),(23)>"}}) {
    StratumResult r;
    r.stratum = label;
    r.citation = text;
    r.notes.push_back("citation only; no search is run");
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// catalogue matching and reconciliation

// Finds a rank-8 catalogue entry with the survivor's naive rules (preferring equal S-hat under the relabeling)
// and splits the survivor's naive rules with that entry's twists.
inline std::optional<CatalogueMatch> match_candidate(const SMCData& cand, int threads = 1) {
  NaiveFusion cn;
  try {
    cn = verlinde_naive(cand);
  } catch (const NonIntegralFusion&) {
    return std::nullopt;
  }
  std::optional<CatalogueMatch> best;
  for (const auto& name : entry_names()) {
    const auto& e = load_entry(name);
    if (e.data.r != cand.r || e.data.self_dual() != cand.self_dual()) continue;
    auto en = verlinde_naive(e.data);
    Perm p = identity_perm(cand.r);
    do {
      bool ok = true;
      for (int i = 0; i < cand.r && ok; ++i)
        for (int j = 0; j < cand.r && ok; ++j) {
          ok = e.data.dual[p[i]] == p[cand.dual[i]];
          for (int k = 0; k < cand.r && ok; ++k) ok = en(p[i], p[j], p[k]) == cn(i, j, k);
        }
      if (!ok) continue;
      double dev = 0;
      for (int i = 0; i < cand.r; ++i)
        for (int j = 0; j < cand.r; ++j) dev = std::max(dev, std::abs(e.data.hatS[p[i]][p[j]].approx() - cand.hatS[i][j].approx()));
      CatalogueMatch m{name, e.fusion_class, p, dev < 1e-9, 0, false};
      if (!best || (m.s_agrees && !best->s_agrees)) best = m;
      if (best->s_agrees) break;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    if (best && best->s_agrees) break;
  }
  if (!best) return best;
  const auto& e = load_entry(best->entry);
  SMCData theta = permute_data(e.data, best->perm);
  try {
    SplitOptions so;
    so.theta = &theta;
    so.threads = threads;
    auto classes = split_naive(cn, cand.dual, so);
    best->split_classes = static_cast<int>(classes.size());
    best->fusion_agrees = classes.size() == 1 && same_fusion_class(classes[0].tensor, *theta.fusion);
  } catch (const std::exception&) {
    best->split_classes = 0;
  }
  return best;
}

inline void match_to_catalogue(StratumResult& r, int threads = 1) {
  for (auto& s : r.survivors)
    if (s.data) s.match = match_candidate(*s.data, threads);
}

inline TwistScan twist_scan(const SMCData& d, int max_order) {
  using C = std::complex<double>;
  const int r = d.r;
  if (r < 2) throw std::invalid_argument("twist scan needs rank >= 2");
  const auto nf = verlinde_naive(d);
  std::vector<double> dim(r);
  for (int i = 0; i < r; ++i) dim[i] = d.dims[i].approx().real();
  const double half = d.half_D2().approx().real();
  std::vector<int> self;
  for (int i = 0; i < r; ++i)
    if (d.dual[i] == i) self.push_back(i);
  TwistScan out;
  out.max_order = max_order;
  std::vector<int> a(r, 0);
  std::vector<C> t2(r);
  for (int M = 1; M <= max_order; ++M) {
    std::vector<C> z(M);
    for (int k = 0; k < M; ++k) z[k] = std::polar(1.0, 2 * M_PI * k / M);
    std::fill(a.begin(), a.end(), 0);
    while (true) {
      int g = M;
      for (int j = 1; j < r; ++j) g = std::gcd(g, a[j]);
      bool ok = g == 1;
      for (int j = 0; j < r; ++j) t2[j] = z[a[j]];
      // conjugate labels share a twist
      for (int j = 0; j < r && ok; ++j) ok = a[d.dual[j]] == a[j];
      for (size_t q = 0; q < self.size() && ok; ++q) {
        const int i = self[q];
        C sum = 0;
        for (int j = 0; j < r; ++j)
          for (int k = 0; k < r; ++k)
            if (nf(j, k, i)) sum += static_cast<double>(nf(j, k, i)) * dim[j] * dim[k] * t2[j] / t2[k];
        sum /= half;
        ok = std::abs(std::abs(sum.real()) - 1) < 1e-9 && std::abs(sum.imag()) < 1e-9;
      }
      if (ok) {
        if (out.solutions++ == 0) {
          out.first_order = M;
          out.first_turns.assign(a.begin() + 1, a.end());
        }
      }
      int j = 1;
      while (j < r && ++a[j] == M) a[j++] = 0;
      if (j == r) break;
    }
  }
  return out;
}

struct Reconciliation {
  std::vector<StratumResult> strata;
  std::set<std::string> fusion_classes;  // matched and confirmed by splitting
  std::vector<std::string> unmatched;    // survivors without a confirmed class
};

// Every stratum at its default bound: Z4 below 14, Z3 below 21, dims below 14 for <(01)(23)>.
inline Reconciliation reconcile_rank8(const SearchOptions& opt = {}, int twist_order = 60) {
  Reconciliation out;
  out.strata.push_back(search_trivial());
  out.strata.push_back(search_nonselfdual());
  out.strata.push_back(search_01(opt));
  out.strata.push_back(search_klein4(opt));
  out.strata.push_back(search_z4(14, opt));
  out.strata.push_back(search_z3(21, opt));
  out.strata.push_back(search_0123_pairflip(14, opt));
  for (auto& r : nonexistent_strata()) out.strata.push_back(std::move(r));
  for (auto& r : out.strata) {
    match_to_catalogue(r, opt.threads);
    for (auto& s : r.survivors) {
      if (s.match && s.match->fusion_agrees) {
        out.fusion_classes.insert(s.match->fusion_class);
        continue;
      }
      out.unmatched.push_back(r.stratum + " " + s.param_string());
      if (s.data && twist_order > 0) s.twists = twist_scan(*s.data, twist_order);
    }
  }
  return out;
}

// Accepted --stratum spellings: table labels and aliases, plus "trivial" and "non-self-dual".
inline StratumResult run_stratum(const std::string& label, std::optional<long> bound, const SearchOptions& opt = {}) {
  const std::string s = normalize_stratum(label);
  if (s == "<(0)>") return search_trivial();
  if (s == "non-self-dual") return search_nonselfdual();
  if (s == "<(01)>") return search_01(opt);
  if (s == "<(01)(23),(02)(13)>") return search_klein4(opt);
  if (s == "<(0123)>") return search_z4(bound.value_or(14), opt);
  if (s == "<(012)>") return search_z3(bound.value_or(21), opt);
  if (s == "<(01)(23)>") return search_0123_pairflip(bound.value_or(14), opt);
  for (auto& r : nonexistent_strata())
    if (r.stratum == s) return r;
  throw std::invalid_argument("no search for stratum " + s);
}

}  // namespace smc
