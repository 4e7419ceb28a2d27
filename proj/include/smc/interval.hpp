#pragma once
// Outward-rounded rational intervals and rectangular complex boxes.
#include <algorithm>

#include "smc/rational.hpp"

namespace smc {

struct Interval {
  Q lo, hi;
  Interval() = default;
  Interval(Q a) : lo(a), hi(a) {}
  Interval(Q a, Q b) : lo(std::move(a)), hi(std::move(b)) {}

  Q mid() const { return (lo + hi) / 2; }
  Q width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool strictly_inside(const Interval& o) const { return lo > o.lo && hi < o.hi; }
  bool contains(const Q& x) const { return lo <= x && x <= hi; }
  Q mag() const { return std::max(abs(lo), abs(hi)); }
};

inline Interval round_out(const Interval& a, long bits) { return {round_down(a.lo, bits), round_up(a.hi, bits)}; }

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator*(const Interval& a, const Interval& b) {
  Q p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}
inline Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }
inline Interval intersect(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

struct CBox {
  Interval re, im;
  CBox() : re(Q(0)), im(Q(0)) {}
  CBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  explicit CBox(const Q& x) : re(x), im(Q(0)) {}

  Q width() const { return std::max(re.width(), im.width()); }
  bool strictly_inside(const CBox& o) const { return re.strictly_inside(o.re) && im.strictly_inside(o.im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

inline CBox round_out(const CBox& a, long bits) { return {round_out(a.re, bits), round_out(a.im, bits)}; }
inline CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
inline CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
inline CBox operator*(const CBox& a, const CBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CBox bmul(const CBox& a, const CBox& b, long bits) { return round_out(a * b, bits); }

// point complex numbers for the non-rigorous Newton phase
struct CPoint {
  Q re, im;
};
inline CPoint cmul(const CPoint& a, const CPoint& b, long bits) {
  return {round_down(a.re * b.re - a.im * b.im, bits), round_down(a.re * b.im + a.im * b.re, bits)};
}
inline CPoint cdiv(const CPoint& a, const CPoint& b, long bits) {
  Q n = b.re * b.re + b.im * b.im;
  if (n == 0) throw std::domain_error("division by zero in Newton step");
  return {round_down((a.re * b.re + a.im * b.im) / n, bits), round_down((a.im * b.re - a.re * b.im) / n, bits)};
}
inline CBox to_box(const CPoint& p) { return {Interval(p.re), Interval(p.im)}; }

}  // namespace smc
