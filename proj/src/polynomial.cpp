#include "frobdens/polynomial.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace frobdens {

namespace {

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

/// Remainder of a modulo monic-normalisable b.
ModPoly rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const int db = deg(b);
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  for (int i = deg(a); i >= db; --i) {
    const std::uint64_t c = a[i] * lead_inv % p;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + (p - c) * b[j]) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(db)));
  trim(a);
  return a;
}

ModPoly quo(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const int db = deg(b);
  if (deg(a) < db) return {};
  ModPoly q(static_cast<std::size_t>(deg(a) - db + 1), 0);
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  for (int i = deg(a); i >= db; --i) {
    const std::uint64_t c = a[i] * lead_inv % p;
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + (p - c) * b[j]) % p;
  }
  trim(q);
  return q;
}

/// Residues modulo a fixed monic f of degree n <= 8, stored densely.
class ResidueRing {
 public:
  static constexpr int kMax = 8;
  using Elem = std::array<std::uint64_t, kMax>;

  ResidueRing(const ModPoly& f, std::uint64_t p) : n_(deg(f)), p_(p) {
    for (int i = 0; i < n_; ++i) tail_[i] = (p - f[i]) % p;  // x^n = sum tail_i x^i
  }

  ModPoly to_poly(const Elem& a) const {
    ModPoly out(a.begin(), a.begin() + n_);
    trim(out);
    return out;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::array<std::uint64_t, 2 * kMax> c{};
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n_; ++j) c[i + j] = (c[i + j] + a[i] * b[j] % p_) % p_;
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
      const std::uint64_t top = c[k];
      if (top == 0) continue;
      for (int i = 0; i < n_; ++i) c[k - n_ + i] = (c[k - n_ + i] + top * tail_[i] % p_) % p_;
    }
    Elem out{};
    for (int i = 0; i < n_; ++i) out[i] = c[i];
    return out;
  }

  Elem pow(Elem base, std::uint64_t e) const {
    Elem result{};
    result[0] = 1 % p_;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      e >>= 1;
      if (e > 0) base = mul(base, base);
    }
    return result;
  }

 private:
  int n_;
  std::uint64_t p_;
  Elem tail_{};
};

ModPoly gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

ModPoly reduce(const IntPoly& f, std::uint64_t p) {
  ModPoly out(f.size());
  const auto sp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = static_cast<std::uint64_t>(((f[i] % sp) + sp) % sp);
  trim(out);
  return out;
}

}  // namespace

int degree(const IntPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

bool is_monic(const IntPoly& f) {
  const int d = degree(f);
  return d >= 0 && f[d] == 1;
}

IntPoly derivative(const IntPoly& f) {
  IntPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<std::int64_t>(i));
  return out;
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  const int m = degree(f);
  const int n = degree(g);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const int size = m + n;
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size, 0));
  // Sylvester rows: n shifted copies of f, then m shifted copies of g, highest degree first.
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) a[r][r + k] = f[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) a[n + r][r + k] = g[n - k];

  // Bareiss elimination.
  BigInt sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

BigInt discriminant(const IntPoly& f) {
  const int n = degree(f);
  if (n < 2 || !is_monic(f)) throw Error(ErrorCode::BadInput, "discriminant needs a monic polynomial of degree >= 2");
  BigInt r = resultant(f, derivative(f));
  return (n * (n - 1) / 2) % 2 == 0 ? r : BigInt(-r);
}

std::vector<int> factor_degrees_mod_p(const IntPoly& f, std::uint64_t p) {
  if (!is_monic(f)) throw Error(ErrorCode::BadInput, "polynomial must be monic");
  if (p < 2 || p >= (1ull << 32)) throw Error(ErrorCode::BadInput, "prime out of supported range");
  const ModPoly fp = reduce(f, p);
  const int n = deg(fp);
  std::vector<int> out;
  if (n <= 0) return out;
  if (n == 1) return {1};
  if (n > ResidueRing::kMax) throw Error(ErrorCode::BadInput, "factoring mod p supports degree at most 8");

  ModPoly df = reduce(derivative(f), p);
  if (df.empty() || deg(gcd(fp, df, p)) > 0)
    throw Error(ErrorCode::NotSquarefreeModP, "f is not squarefree mod " + std::to_string(p));

  const ResidueRing ring(fp, p);
  ModPoly remaining = fp;
  ResidueRing::Elem h{};  // x^{p^k} mod f
  h[1] = 1;
  for (int k = 1; 2 * k <= deg(remaining); ++k) {
    h = ring.pow(h, p);
    ModPoly hx = ring.to_poly(h);
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    trim(hx);
    ModPoly g = gcd(remaining, hx, p);
    if (deg(g) > 0) {
      for (int c = 0; c < deg(g) / k; ++c) out.push_back(k);
      remaining = quo(remaining, g, p);
    }
  }
  if (deg(remaining) > 0) out.push_back(deg(remaining));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace frobdens
