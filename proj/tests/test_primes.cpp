#include "frobdens/primes.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace frobdens;

namespace {

std::vector<std::uint64_t> ps(const std::vector<PrimeRecord>& recs) {
  std::vector<std::uint64_t> out;
  for (const auto& r : recs) out.push_back(r.p);
  return out;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("frobdens_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("prime_stream") {
  TEST_CASE("sieve: small bounds and pi(10^6)") {
    CHECK(sieve(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve(100).size() == 25);
    CHECK(sieve(100) == oracle::primes_upto(100));
    CHECK(sieve(1'000'000).size() == 78498);
    CHECK(sieve(1'000'000) == oracle::primes_upto(1'000'000));
    CHECK(sieve(1).empty());
    CHECK_ERROR_CODE(sieve(kMaxPrimeBound + 1), ErrorCode::BoundTooLarge);
  }

  TEST_CASE("sieve crosses segment boundaries exactly") {
    const std::uint64_t hi = 3 * kSegmentSize + 17;
    CHECK(sieve(hi) == oracle::primes_upto(hi));
  }

  TEST_CASE("windows") {
    CHECK(primes_in(PrimeWindow{90, 110}) == std::vector<std::uint64_t>{97, 101, 103, 107, 109});
    CHECK(primes_in(PrimeWindow{0, 3}) == std::vector<std::uint64_t>{2, 3});
    CHECK(split_window(PrimeWindow{5, 4}).empty());
    auto pieces = split_window(PrimeWindow{10, 1000}, 100);
    CHECK(pieces.front().lo == 10);
    CHECK(pieces.front().hi == 99);
    CHECK(pieces.back().hi == 1000);
    for (std::size_t i = 1; i < pieces.size(); ++i) CHECK(pieces[i].lo == pieces[i - 1].hi + 1);
  }

  TEST_CASE("stream over Q(zeta_5)") {
    auto sc = FieldScenario::abelian(5, {});
    auto recs = stream(sc, PrimeWindow{2, 20});
    CHECK(ps(recs) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(recs[2].ramified);
    CHECK(ps(stream_unramified(sc, PrimeWindow{2, 20})) == std::vector<std::uint64_t>{2, 3, 7, 11, 13, 17, 19});
    CHECK(stream(sc, PrimeWindow{30, 20}).empty());
  }

  TEST_CASE("stream over the splitting field of x^3 - 2") {
    auto sc = FieldScenario::sn_splitting({-2, 0, 0, 1}, "trivial");
    CHECK(ps(stream_unramified(sc, PrimeWindow{5, 20})) == std::vector<std::uint64_t>{5, 7, 11, 13, 17, 19});
    auto flagged = stream(sc, PrimeWindow{2, 20});
    CHECK(flagged[0].ramified);
    CHECK(flagged[1].ramified);
  }

  TEST_CASE("record count is pi(hi) - pi(lo - 1) - #ramified") {
    auto sc = FieldScenario::abelian(15, {11});
    const PrimeWindow w{2, 50000};
    const auto all = oracle::primes_upto(w.hi);
    CHECK(stream_unramified(sc, w).size() == all.size() - 2);
  }

  TEST_CASE("splitting a window does not change the stream") {
    auto sc = FieldScenario::sn_splitting({-1, -1, 0, 1}, "alternating");
    const PrimeWindow w{2, 200000};
    const auto whole = stream(sc, w);
    std::vector<PrimeRecord> pieces;
    for (const auto& sub : split_window(w, 7919)) {
      auto part = stream(sc, sub);
      pieces.insert(pieces.end(), part.begin(), part.end());
    }
    REQUIRE(whole.size() == pieces.size());
    for (std::size_t i = 0; i < whole.size(); ++i) {
      CHECK(whole[i].p == pieces[i].p);
      CHECK(whole[i].cycle_type == pieces[i].cycle_type);
    }
  }

  TEST_CASE("prime cache round trip and header layout") {
    const auto dir = scratch_dir("cache");
    const auto primes = sieve(5000);
    write_prime_cache(dir / "p.bin", primes);
    CHECK(read_prime_cache(dir / "p.bin") == primes);

    std::ifstream in(dir / "p.bin", std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
    REQUIRE(bytes.size() == 16 + 8 * primes.size());
    CHECK(std::string(bytes.begin(), bytes.begin() + 6) == std::string("FDNS1\0", 6));
    std::uint64_t count = 0;
    for (int k = 7; k >= 0; --k) count = (count << 8) | bytes[8 + k];
    CHECK(count == primes.size());
    std::uint64_t first = 0;
    for (int k = 7; k >= 0; --k) first = (first << 8) | bytes[16 + k];
    CHECK(first == 2);

    CHECK(sieve_cached(5000, dir) == primes);
    CHECK(std::filesystem::exists(dir / "primes_5000.bin"));
    CHECK(sieve_cached(5000, dir) == primes);

    std::ofstream(dir / "bad.bin") << "garbage";
    CHECK_FALSE(read_prime_cache(dir / "bad.bin"));
    CHECK_FALSE(read_prime_cache(dir / "missing.bin"));
    std::filesystem::remove_all(dir);
  }
}
