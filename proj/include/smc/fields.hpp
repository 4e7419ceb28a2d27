#pragma once
// The fixed number fields used by the catalogue and the searches, each with a primitive root of unity.
#include <functional>
#include <map>
#include <mutex>

#include "smc/numberfield.hpp"

namespace smc {

struct CyclotomicField {
  FieldPtr field;
  int order = 1;  // zeta is a primitive order-th root of unity
  Element zeta;
  std::map<std::string, Element> named;  // handy elements: "sqrt2", "i", "phi", ...

  // exp(2 pi i t); t * order must be an integer
  Element root_of_unity(const Q& turns) const {
    Q k = turns * Q(order);
    if (!is_integer(k)) throw FieldError("exp(2 pi i " + to_string(turns) + ") is not in " + field->name());
    long e = k.get_num().get_si() % order;
    if (e < 0) e += order;
    return zeta.pow(e);
  }
  const Element& operator[](const std::string& n) const {
    auto it = named.find(n);
    if (it == named.end()) throw FieldError(field->name() + " has no element named " + n);
    return it->second;
  }
  Element one() const { return constant(field, Q(1)); }
};

namespace detail {

inline Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

inline IsolatingBox box_i() { return IsolatingBox::rect(frac(-1, 10), frac(1, 10), frac(9, 10), frac(11, 10)); }
inline IsolatingBox box_real(long lo_num, long hi_num, long den) { return IsolatingBox::real_interval(frac(lo_num, den), frac(hi_num, den)); }

inline CyclotomicField make_qi() {
  FieldBuilder b("Q(i)");
  b.adjoin_rational("i", {Q(1), Q(0), Q(1)}, box_i());
  auto d = b.draft();
  auto f = b.finish({{"conj", {-generator(d, 0)}}});
  CyclotomicField k{f, 4, generator(f, 0), {}};
  k.named["i"] = k.zeta;
  return k;
}

inline CyclotomicField make_q_sqrt2_i() {
  FieldBuilder b("Q(sqrt2,i)");
  b.adjoin_rational("sqrt2", {Q(-2), Q(0), Q(1)}, box_real(141, 142, 100));
  b.adjoin_rational("i", {Q(1), Q(0), Q(1)}, box_i());
  auto d = b.draft();
  auto s2 = generator(d, 0), i = generator(d, 1);
  auto f = b.finish({{"sqrt2->-sqrt2", {-s2, i}}, {"conj", {s2, -i}}});
  s2 = generator(f, 0);
  i = generator(f, 1);
  CyclotomicField k{f, 8, s2 / Q(2) * (i + Q(1)), {}};
  k.named = {{"sqrt2", s2}, {"i", i}};
  return k;
}

inline CyclotomicField make_q_sqrt3_i() {
  FieldBuilder b("Q(sqrt3,i)");
  b.adjoin_rational("sqrt3", {Q(-3), Q(0), Q(1)}, box_real(173, 174, 100));
  b.adjoin_rational("i", {Q(1), Q(0), Q(1)}, box_i());
  auto d = b.draft();
  auto s3 = generator(d, 0), i = generator(d, 1);
  auto f = b.finish({{"sqrt3->-sqrt3", {-s3, i}}, {"conj", {s3, -i}}});
  s3 = generator(f, 0);
  i = generator(f, 1);
  CyclotomicField k{f, 12, (s3 + i) / Q(2), {}};
  k.named = {{"sqrt3", s3}, {"i", i}};
  return k;
}

// Q(sqrt2)(x)(...)(i) with x = sqrt(2 + sqrt2); with_sqrt3 inserts sqrt3 before i.
inline CyclotomicField make_q_x(bool with_sqrt3) {
  FieldBuilder b(with_sqrt3 ? "Q(sqrt2,sqrt(2+sqrt2),sqrt3,i)" : "Q(sqrt2,sqrt(2+sqrt2),i)");
  b.adjoin_rational("sqrt2", {Q(-2), Q(0), Q(1)}, box_real(141, 142, 100));
  {
    auto d = b.draft();
    auto s2 = generator(d, 0);
    b.adjoin("x", std::vector<Element>{-(s2 + Q(2)), constant(d, Q(0)), constant(d, Q(1))}, box_real(184, 185, 100));
  }
  if (with_sqrt3) b.adjoin_rational("sqrt3", {Q(-3), Q(0), Q(1)}, box_real(173, 174, 100));
  b.adjoin_rational("i", {Q(1), Q(0), Q(1)}, box_i());
  auto d = b.draft();
  const int ii = with_sqrt3 ? 3 : 2;
  auto s2 = generator(d, 0), x = generator(d, 1), i = generator(d, ii);
  std::vector<std::pair<std::string, std::vector<Element>>> autos;
  if (with_sqrt3) {
    auto s3 = generator(d, 2);
    autos = {{"x->sqrt2/x", {-s2, s2 / x, s3, i}}, {"sqrt3->-sqrt3", {s2, x, -s3, i}}, {"conj", {s2, x, s3, -i}}};
  } else {
    autos = {{"x->sqrt2/x", {-s2, s2 / x, i}}, {"conj", {s2, x, -i}}};
  }
  auto f = b.finish(autos);
  s2 = generator(f, 0);
  x = generator(f, 1);
  i = generator(f, ii);
  Element z16 = x / Q(2) + i * s2 / (x * Q(2));
  CyclotomicField k{f, 16, z16, {}};
  k.named = {{"sqrt2", s2}, {"x", x}, {"i", i}};
  if (with_sqrt3) {
    auto s3 = generator(f, 2);
    Element z3 = (i * s3 - Q(1)) / Q(2);
    k.order = 48;
    k.zeta = z16.pow(11) * z3;
    k.named["sqrt3"] = s3;
  }
  return k;
}

inline IsolatingBox box_zeta5() { return IsolatingBox::rect(frac(30, 100), frac(32, 100), frac(94, 100), frac(96, 100)); }

// Q(zeta5), optionally extended by i and then sqrt2
inline CyclotomicField make_q_zeta5(int extra) {
  std::string name = extra == 0 ? "Q(zeta5)" : extra == 1 ? "Q(zeta5,i)" : "Q(zeta5,i,sqrt2)";
  FieldBuilder b(name);
  b.adjoin_rational("zeta5", {Q(1), Q(1), Q(1), Q(1), Q(1)}, box_zeta5());
  if (extra >= 1) b.adjoin_rational("i", {Q(1), Q(0), Q(1)}, box_i());
  if (extra >= 2) b.adjoin_rational("sqrt2", {Q(-2), Q(0), Q(1)}, box_real(141, 142, 100));
  auto d = b.draft();
  std::vector<Element> g;
  for (int t = 0; t <= extra; ++t) g.push_back(generator(d, t));
  std::vector<std::pair<std::string, std::vector<Element>>> autos;
  auto with = [&](int slot, Element e) {
    auto v = g;
    v[slot] = std::move(e);
    return v;
  };
  autos.push_back({"zeta5->zeta5^2", with(0, g[0].pow(2))});
  if (extra >= 1) autos.push_back({"i->-i", with(1, -g[1])});
  if (extra >= 2) autos.push_back({"sqrt2->-sqrt2", with(2, -g[2])});
  auto f = b.finish(autos);
  Element z = generator(f, 0);
  CyclotomicField k{f, 10, -z.pow(3), {}};
  k.named = {{"zeta5", z}, {"phi", z + z.pow(4) + Q(1)}};
  if (extra >= 1) {
    Element i = generator(f, 1);
    k.named["i"] = i;
    k.order = 20;
    k.zeta = i * z.pow(4);
  }
  if (extra >= 2) {
    Element s2 = generator(f, 2);
    k.named["sqrt2"] = s2;
    Element z8 = s2 / Q(2) * (k.named["i"] + Q(1));
    k.order = 40;
    k.zeta = z8.pow(5) * z.pow(2);
  }
  return k;
}

inline CyclotomicField make_q_zeta8() {
  FieldBuilder b("Q(zeta8)");
  b.adjoin_rational("zeta8", {Q(1), Q(0), Q(0), Q(0), Q(1)}, IsolatingBox::rect(frac(70, 100), frac(72, 100), frac(70, 100), frac(72, 100)));
  auto d = b.draft();
  auto z = generator(d, 0);
  auto f = b.finish({{"zeta8->zeta8^3", {z.pow(3)}}, {"zeta8->zeta8^5", {z.pow(5)}}});
  z = generator(f, 0);
  CyclotomicField k{f, 8, z, {}};
  k.named = {{"zeta8", z}, {"i", z.pow(2)}, {"sqrt2", z + z.pow(7)}};
  return k;
}

inline CyclotomicField make_q_zeta9() {
  FieldBuilder b("Q(zeta9)");
  b.adjoin_rational("zeta9", {Q(1), Q(0), Q(0), Q(1), Q(0), Q(0), Q(1)},
                    IsolatingBox::rect(frac(76, 100), frac(77, 100), frac(63, 100), frac(65, 100)));
  auto d = b.draft();
  auto z = generator(d, 0);
  auto f = b.finish({{"zeta9->zeta9^2", {z.pow(2)}}});
  z = generator(f, 0);
  CyclotomicField k{f, 18, -z.pow(5), {}};
  // 2 cos(pi/9)
  k.named = {{"zeta9", z}, {"d", -(z.pow(4) + z.pow(5))}};
  return k;
}

}  // namespace detail

inline const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = {
      "Q(i)", "Q(sqrt2,i)", "Q(sqrt3,i)", "Q(sqrt2,sqrt(2+sqrt2),i)", "Q(sqrt2,sqrt(2+sqrt2),sqrt3,i)",
      "Q(zeta5)", "Q(zeta5,i)", "Q(zeta5,i,sqrt2)", "Q(zeta8)", "Q(zeta9)"};
  return names;
}

// Built once per process; the same FieldPtr is returned on every call.
inline const CyclotomicField& named_field(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, CyclotomicField> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  static const std::map<std::string, std::function<CyclotomicField()>> makers = {
      {"Q(i)", detail::make_qi},
      {"Q(sqrt2,i)", detail::make_q_sqrt2_i},
      {"Q(sqrt3,i)", detail::make_q_sqrt3_i},
      {"Q(sqrt2,sqrt(2+sqrt2),i)", [] { return detail::make_q_x(false); }},
      {"Q(sqrt2,sqrt(2+sqrt2),sqrt3,i)", [] { return detail::make_q_x(true); }},
      {"Q(zeta5)", [] { return detail::make_q_zeta5(0); }},
      {"Q(zeta5,i)", [] { return detail::make_q_zeta5(1); }},
      {"Q(zeta5,i,sqrt2)", [] { return detail::make_q_zeta5(2); }},
      {"Q(zeta8)", detail::make_q_zeta8},
      {"Q(zeta9)", detail::make_q_zeta9},
  };
  auto m = makers.find(name);
  if (m == makers.end()) throw FieldError("unknown field " + name);
  return cache.emplace(name, m->second()).first->second;
}

}  // namespace smc
