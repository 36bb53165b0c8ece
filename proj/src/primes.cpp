#include "frobdens/primes.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

namespace frobdens {

namespace {

constexpr std::array<char, 8> kCacheMagic{'F', 'D', 'N', 'S', '1', '\0', '\0', '\0'};

/// Primes up to sqrt(10^9), enough to sieve any admissible window.
const std::vector<std::uint32_t>& base_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 31623;
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
  }();
  return primes;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(b.data()), 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 8)) return false;
  v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | b[k];
  return true;
}

}  // namespace

std::vector<std::uint64_t> primes_in(PrimeWindow w) {
  if (w.hi > kMaxPrimeBound) throw Error(ErrorCode::BoundTooLarge, "prime bound exceeds 10^9");
  std::vector<std::uint64_t> out;
  const std::uint64_t lo = std::max<std::uint64_t>(w.lo, 2);
  if (lo > w.hi) return out;
  std::vector<char> composite(w.hi - lo + 1, 0);
  for (std::uint32_t q : base_primes()) {
    const std::uint64_t qq = std::uint64_t{q} * q;
    if (qq > w.hi) break;
    std::uint64_t start = std::max(qq, (lo + q - 1) / q * q);
    for (std::uint64_t j = start; j <= w.hi; j += q) composite[j - lo] = 1;
  }
  for (std::uint64_t n = lo; n <= w.hi; ++n)
    if (!composite[n - lo]) out.push_back(n);
  return out;
}

std::vector<PrimeWindow> split_window(PrimeWindow w, std::uint64_t span) {
  std::vector<PrimeWindow> out;
  if (w.empty()) return out;
  std::uint64_t lo = w.lo;
  while (lo <= w.hi) {
    const std::uint64_t hi = std::min(w.hi, (lo / span + 1) * span - 1);
    out.push_back(PrimeWindow{lo, hi});
    lo = hi + 1;
  }
  return out;
}

std::vector<std::uint64_t> sieve(std::uint64_t hi) {
  if (hi > kMaxPrimeBound) throw Error(ErrorCode::BoundTooLarge, "prime bound exceeds 10^9");
  std::vector<std::uint64_t> out;
  if (hi >= 2) out.reserve(static_cast<std::size_t>(1.1 * hi / std::log(static_cast<double>(hi))) + 16);
  for (const auto& seg : split_window(PrimeWindow{2, hi})) {
    auto part = primes_in(seg);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<PrimeRecord> stream(const FieldScenario& scenario, PrimeWindow w) {
  std::vector<PrimeRecord> out;
  for (const auto& seg : split_window(w))
    for (auto p : primes_in(seg)) out.push_back(scenario.record_or_flag(p));
  return out;
}

std::vector<PrimeRecord> stream_unramified(const FieldScenario& scenario, PrimeWindow w) {
  std::vector<PrimeRecord> out;
  for (const auto& seg : split_window(w))
    for (auto p : primes_in(seg))
      if (!scenario.is_ramified(p)) out.push_back(scenario.record(p));
  return out;
}

void write_prime_cache(const std::filesystem::path& file, const std::vector<std::uint64_t>& primes) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write sieve cache " + file.string());
  out.write(kCacheMagic.data(), kCacheMagic.size());
  put_u64(out, primes.size());
  for (auto p : primes) put_u64(out, p);
  if (!out) throw Error(ErrorCode::BadInput, "short write to sieve cache " + file.string());
}

std::optional<std::vector<std::uint64_t>> read_prime_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kCacheMagic) return std::nullopt;
  std::uint64_t count = 0;
  if (!get_u64(in, count)) return std::nullopt;
  std::vector<std::uint64_t> primes(static_cast<std::size_t>(count));
  for (auto& p : primes)
    if (!get_u64(in, p)) return std::nullopt;
  return primes;
}

std::vector<std::uint64_t> sieve_cached(std::uint64_t hi, const std::filesystem::path& dir) {
  const auto file = dir / ("primes_" + std::to_string(hi) + ".bin");
  if (auto cached = read_prime_cache(file)) return *cached;
  auto primes = sieve(hi);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  write_prime_cache(file, primes);
  return primes;
}

}  // namespace frobdens
