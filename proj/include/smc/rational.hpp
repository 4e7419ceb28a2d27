#pragma once
// Exact integers/rationals (GMP) and their string forms.
#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace smc {

using Z = mpz_class;
using Q = mpq_class;

inline Q parse_rational(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q& q) { return q.get_str(); }
inline std::string to_string(const Z& z) { return z.get_str(); }

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

/// floor(x * 2^bits) / 2^bits
inline Q round_down(const Q& x, long bits) {
  Z num = x.get_num(), out;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  Q r(out);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return r;
}

inline Q round_up(const Q& x, long bits) {
  Z num = x.get_num(), out;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  Q r(out);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return r;
}

inline Q pow2(long e) {
  Q r(1);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
  return r;
}

/// Exact integer square root when n is a perfect square.
inline bool exact_sqrt(const Z& n, Z& root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

inline bool exact_sqrt(const Q& q, Q& root) {
  Z a, b;
  if (!exact_sqrt(Z(q.get_num()), a) || !exact_sqrt(Z(q.get_den()), b)) return false;
  root = Q(a, b);
  root.canonicalize();
  return true;
}

// n = s^2 * m with m square-free (n > 0); trial division is enough at the sizes used here.
inline void squarefree_split(long long n, long long& s, long long& m) {
  if (n <= 0) throw std::invalid_argument("squarefree_split: n must be positive");
  s = 1;
  m = 1;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2) m *= p;
  }
  m *= n;
}

}  // namespace smc
