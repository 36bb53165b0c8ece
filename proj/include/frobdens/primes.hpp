#pragma once

#include "frobdens/field.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace frobdens {

inline constexpr std::uint64_t kMaxPrimeBound = 1'000'000'000;
inline constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 20;

/// Closed interval [lo, hi] of rational primes; empty when lo > hi.
struct PrimeWindow {
  std::uint64_t lo = 2;
  std::uint64_t hi = 1;

  bool empty() const { return lo > hi; }
};

/// All primes <= hi, by segmented sieve. Throws BoundTooLarge above 10^9.
std::vector<std::uint64_t> sieve(std::uint64_t hi);
/// Primes in [lo, hi] sieved as one segment.
std::vector<std::uint64_t> primes_in(PrimeWindow w);

/// Splits w at multiples of `span`, so the pieces depend only on w and span.
std::vector<PrimeWindow> split_window(PrimeWindow w, std::uint64_t span = kSegmentSize);

/// One record per prime in the window, ramified primes flagged.
std::vector<PrimeRecord> stream(const FieldScenario& scenario, PrimeWindow w);
/// Same, restricted to unramified primes.
std::vector<PrimeRecord> stream_unramified(const FieldScenario& scenario, PrimeWindow w);

// Sieve cache: 16-byte header ("FDNS1\0", two zero bytes, little-endian u64
// count) followed by `count` little-endian u64 primes.

void write_prime_cache(const std::filesystem::path& file, const std::vector<std::uint64_t>& primes);
/// nullopt when the file is missing or malformed.
std::optional<std::vector<std::uint64_t>> read_prime_cache(const std::filesystem::path& file);
/// sieve(hi), reading or populating `dir`/primes_<hi>.bin.
std::vector<std::uint64_t> sieve_cached(std::uint64_t hi, const std::filesystem::path& dir);

}  // namespace frobdens
