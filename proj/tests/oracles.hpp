#pragma once

// Reference computations that share no code with the library: a plain
// Eratosthenes sieve, brute-force arithmetic mod p, and permutation algebra on
// raw std::vector images.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mult_order(std::uint64_t a, std::uint64_t m) {
  std::uint64_t acc = a % m, k = 1;
  while (acc != 1 % m) {
    acc = acc * a % m;
    ++k;
  }
  return k;
}

/// Evaluates the integer polynomial (ascending coefficients) at t mod p.
inline std::uint64_t eval_mod(const std::vector<std::int64_t>& f, std::uint64_t t, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    const std::int64_t c = ((*it % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p);
    acc = (acc * t + static_cast<std::uint64_t>(c)) % p;
  }
  return acc;
}

inline int root_count(const std::vector<std::int64_t>& f, std::uint64_t p) {
  int n = 0;
  for (std::uint64_t t = 0; t < p; ++t)
    if (eval_mod(f, t, p) == 0) ++n;
  return n;
}

/// Factor degrees of a monic cubic mod p from its root count.
inline std::vector<int> cubic_factor_degrees(const std::vector<std::int64_t>& f, std::uint64_t p) {
  switch (root_count(f, p)) {
    case 3: return {1, 1, 1};
    case 1: return {1, 2};
    default: return {3};
  }
}

/// Monic polynomials over F_p as coefficient vectors (ascending), used to
/// factor small-degree polynomials by exhaustive trial division.
using ModPoly = std::vector<std::uint64_t>;

inline bool divides(const ModPoly& d, ModPoly f, std::uint64_t p, ModPoly* quotient) {
  const std::size_t n = f.size() - 1, m = d.size() - 1;
  if (m > n) return false;
  ModPoly q(n - m + 1, 0);
  for (std::size_t k = n + 1; k-- > m;) {
    const std::uint64_t c = f[k];
    q[k - m] = c;
    for (std::size_t j = 0; j <= m; ++j) f[k - m + j] = (f[k - m + j] + (p - c) * d[j] % p) % p;
  }
  for (std::size_t j = 0; j < m; ++j)
    if (f[j] != 0) return false;
  if (quotient) *quotient = q;
  return true;
}

/// Sorted degrees of the irreducible factors of monic f mod p (p small).
inline std::vector<int> factor_degrees_bruteforce(const std::vector<std::int64_t>& f, std::uint64_t p) {
  ModPoly g;
  for (auto c : f)
    g.push_back(static_cast<std::uint64_t>(((c % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p)));
  std::vector<int> out;
  for (std::size_t deg = 1; g.size() > 1 && deg < g.size(); ++deg) {
    // all monic polynomials of this degree
    std::vector<std::uint64_t> coeffs(deg, 0);
    while (true) {
      ModPoly d(coeffs.begin(), coeffs.end());
      d.push_back(1);
      ModPoly q;
      while (g.size() > deg && divides(d, g, p, &q)) {
        out.push_back(static_cast<int>(deg));
        g = q;
      }
      std::size_t k = 0;
      while (k < deg && ++coeffs[k] == p) coeffs[k++] = 0;
      if (k == deg) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Permutations as 0-based image vectors; (a*b)(i) = a(b(i)).
using Perm = std::vector<int>;

inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm invert(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

inline std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool is_even(const Perm& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

inline std::size_t centralizer_size(const std::vector<Perm>& g, const Perm& a) {
  return static_cast<std::size_t>(std::count_if(g.begin(), g.end(), [&](const Perm& h) {
    return compose(h, a) == compose(a, h);
  }));
}

/// Number of orbits of `h` acting by conjugation on `s`.
inline std::size_t conjugation_orbits(const std::vector<Perm>& h, const std::vector<Perm>& s) {
  std::set<Perm> seen;
  std::size_t orbits = 0;
  for (const auto& y : s) {
    if (seen.count(y)) continue;
    ++orbits;
    for (const auto& k : h) seen.insert(compose(compose(k, y), invert(k)));
  }
  return orbits;
}

/// Neumaier-free reference: long double, summed in increasing p.
inline long double reciprocal_sum_in_class(std::uint64_t m, std::uint64_t a, std::uint64_t X) {
  long double s = 0;
  for (auto p : primes_upto(X))
    if (p % m == a) s += 1.0L / static_cast<long double>(p);
  return s;
}

}  // namespace oracle
