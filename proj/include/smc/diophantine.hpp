#pragma once
// Pell and Pell-like equations met in the Z4-stratum analysis and the Z3 discriminant conditions.
#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smc/parallel.hpp"
#include "smc/rational.hpp"

namespace smc {

struct PellFamily {
  std::string equation;
  std::pair<Z, Z> fundamental;
  std::string recurrence;
};

inline PellFamily m_beta_family() { return {"m^2 - 8 beta^2 = 1", {Z(3), Z(1)}, "(m, beta) -> (3m + 8 beta, m + 3 beta)"}; }
inline PellFamily a_c_family() { return {"a^2 - 2 c^2 = 2, a >= 0, c <= -1", {Z(2), Z(-1)}, "(a, |c|) -> (3a + 4|c|, 2a + 3|c|)"}; }

// (m_n, beta_n) with m + beta sqrt8 = (3 + sqrt8)^n; multiplying by 3 + 2 sqrt2 gives the recurrence.
inline std::vector<std::pair<Z, Z>> pell_m_beta(int count) {
  std::vector<std::pair<Z, Z>> out;
  Z m = 3, b = 1;
  for (int k = 0; k < count; ++k) {
    out.emplace_back(m, b);
    Z m2 = 3 * m + 8 * b, b2 = m + 3 * b;
    m = m2;
    b = b2;
  }
  return out;
}

// zeta^(2i-1) = p + q sqrt2 with zeta = 1 + sqrt2 gives a = 2q, c = -p; stepping by zeta^2 = 3 + 2 sqrt2.
inline std::vector<std::pair<Z, Z>> pell_a_c(int count) {
  std::vector<std::pair<Z, Z>> out;
  Z a = 2, c = 1;  // c holds |c|
  for (int k = 0; k < count; ++k) {
    out.emplace_back(a, -c);
    Z a2 = 3 * a + 4 * c, c2 = 2 * a + 3 * c;
    a = a2;
    c = c2;
  }
  return out;
}

struct Beq0Report {
  long bound = 0;
  long nonzero_b = 0;                           // solutions with b != 0
  std::vector<std::array<long, 3>> solutions;   // all (a, b, c) found, sorted
  long pairs_tested = 0;
};

namespace detail {
inline bool is_square_u64(std::uint64_t n, std::uint64_t& r) {
  Z z(std::to_string(n)), s;
  mpz_sqrt(s.get_mpz_t(), z.get_mpz_t());
  if (s * s != z) return false;
  r = s.get_ui();
  return true;
}
}  // namespace detail

// All integer (a, b, c) with |a|, |b|, |c| <= bound and a^2 - (b^2 + 2) c^2 = 2.
// a^2 = 2 + (b^2+2) c^2 <= bound^2 caps c for each b, so the scan is over (b, c) only.
inline Beq0Report verify_beq0(long bound, int threads = 1) {
  using Row = std::array<long, 4>;  // a, b, c, tested-count marker (only in the last element of a chunk)
  auto rows = parallel_collect<Row>(bound + 1, threads, [bound](long b) {
    std::vector<Row> found;
    const std::uint64_t B = static_cast<std::uint64_t>(b) * b + 2, lim = static_cast<std::uint64_t>(bound) * bound;
    long tested = 0;
    for (long c = 0; c <= bound; ++c) {
      const std::uint64_t rhs = B * static_cast<std::uint64_t>(c) * c + 2;
      if (rhs > lim) break;
      ++tested;
      std::uint64_t a;
      if (detail::is_square_u64(rhs, a)) found.push_back({static_cast<long>(a), b, c, 0});
    }
    found.push_back({0, 0, 0, -tested - 1});
    return found;
  });
  Beq0Report rep;
  rep.bound = bound;
  for (const auto& r : rows) {
    if (r[3] < 0) {
      rep.pairs_tested += -r[3] - 1;
      continue;
    }
    for (long sa : {1L, -1L})
      for (long sb : {1L, -1L})
        for (long sc : {1L, -1L}) {
          if ((r[0] == 0 && sa < 0) || (r[1] == 0 && sb < 0) || (r[2] == 0 && sc < 0)) continue;
          rep.solutions.push_back({sa * r[0], sb * r[1], sc * r[2]});
          if (r[1] != 0) ++rep.nonzero_b;
        }
  }
  std::sort(rep.solutions.begin(), rep.solutions.end());
  return rep;
}

// c > 0 with (2c)^2 - 27 = t^2: (2c - t)(2c + t) = 27 over the divisor pairs of 27.
inline std::vector<long> n0_discriminant_solutions() {
  std::vector<long> out;
  for (long u = 1; u * u <= 27; ++u) {
    if (27 % u) continue;
    const long v = 27 / u;
    if ((u + v) % 4 == 0) out.push_back((u + v) / 4);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// c in [1, limit] with 5c^2 - 22c - 27 a perfect square.
inline std::vector<long> n1_discriminant_solutions(long limit) {
  std::vector<long> out;
  for (long c = 1; c <= limit; ++c) {
    Z v = Z(5) * c * c - Z(22) * c - 27;
    if (v < 0) continue;
    if (mpz_perfect_square_p(v.get_mpz_t())) out.push_back(c);
  }
  return out;
}

}  // namespace smc
