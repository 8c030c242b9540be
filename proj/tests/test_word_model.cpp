#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "redsim/word_model.hpp"

using namespace redsim;

namespace {

/// Bit-by-bit reference for the reduced-logic adder, built directly from the
/// cell structure: constant-1 bits below L-4, single-gate bits L-4..L-1, a
/// transfer AND from bit L-1 into an exact upper addition.
std::uint64_t bitwise_imprecise(std::uint64_t a, std::uint64_t b, int width, int l,
                                LowPartStrategy strategy) {
  std::uint64_t low = 0;
  for (int i = 0; i < l; ++i) {
    const std::uint64_t ai = (a >> i) & 1u;
    const std::uint64_t bi = (b >> i) & 1u;
    std::uint64_t s;
    if (i < l - 4) {
      s = 1;
    } else if (strategy == LowPartStrategy::OrBits) {
      s = ai | bi;
    } else {
      s = 1;
    }
    low |= s << i;
  }
  const std::uint64_t t = ((a >> (l - 1)) & 1u) & ((b >> (l - 1)) & 1u);
  const std::uint64_t upper = (a >> l) + (b >> l) + t;
  return (upper << l) | low;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_NOTHROW(AdderSpec{8, 0}.check());
  CHECK_NOTHROW(AdderSpec{8, 5}.check());
  CHECK_NOTHROW(AdderSpec{32, 10}.check());
  CHECK_NOTHROW((AdderSpec{8, 4, LowPartStrategy::ConstantOnes}).check());
  CHECK_THROWS_AS((AdderSpec{8, 4}.check()), std::invalid_argument);   // OrBits needs L >= 5
  CHECK_THROWS_AS((AdderSpec{8, 8}.check()), std::invalid_argument);   // L < width
  CHECK_THROWS_AS((AdderSpec{0, 0}.check()), std::invalid_argument);
  CHECK_THROWS_AS((AdderSpec{64, 0}.check()), std::invalid_argument);  // port words are 64-bit
  CHECK(AdderSpec{8, 0}.is_exact());
  CHECK(!AdderSpec{8, 5}.is_exact());
  CHECK(AdderSpec{8, 0}.describe() == "exact[8]");
  CHECK(AdderSpec{32, 10}.describe() == "imprecise[32,L=10]");
}

TEST_CASE("exact_add is plain integer addition with a carry-out bit") {
  CHECK(exact_add(0, 0, 8) == 0);
  CHECK(exact_add(255, 255, 8) == 510);
  CHECK(exact_add(200, 100, 8) == 300);
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) {
      CHECK(exact_add(a, b, 5) == a + b);
    }
  }
}

TEST_CASE("imprecise_add matches the bit-level cell reference exhaustively at 8/5") {
  for (std::uint64_t a = 0; a < 256; ++a) {
    for (std::uint64_t b = 0; b < 256; ++b) {
      CHECK(imprecise_add(a, b, 8, 5) == bitwise_imprecise(a, b, 8, 5,
                                                           LowPartStrategy::OrBits));
      CHECK(imprecise_add(a, b, 8, 4, LowPartStrategy::ConstantOnes) ==
            bitwise_imprecise(a, b, 8, 4, LowPartStrategy::ConstantOnes));
    }
  }
}

TEST_CASE("worked examples") {
  // 63 + 63 at width 8, L = 5: low part ORs to 0b11111, transfer fires,
  // upper 0b1 + 0b1 + 1 = 0b11.
  CHECK(imprecise_add(63, 63, 8, 5) == 0x7f);
  // All-ones operands: OR preserves ones, transfer carries into the top.
  CHECK(imprecise_add(255, 255, 8, 5) == 0x1ff);
  CHECK(imprecise_add(0, 0, 8, 5) == 0b00001);  // constant-1 bit 0 shows up
  CHECK(imprecise_add(1023, 1023, 32, 10) == 2047);
}

TEST_CASE("imprecise result never differs from exact in the upper part by more than one carry") {
  // The only upper-part discrepancy source is the transfer bit replacing the
  // true carry out of the low slice, so upper(imprecise) is upper(exact) or
  // one less/more than it.
  AdderSpec spec{8, 5};
  WordAdder adder(spec);
  for (std::uint64_t a = 0; a < 256; ++a) {
    for (std::uint64_t b = 0; b < 256; ++b) {
      const std::uint64_t upper_exact = (a + b) >> 5;
      const std::uint64_t upper_imprecise = adder.add(a, b) >> 5;
      const std::int64_t delta = static_cast<std::int64_t>(upper_imprecise) -
                                 static_cast<std::int64_t>(upper_exact);
      CHECK(delta >= -1);
      CHECK(delta <= 1);
    }
  }
}

TEST_CASE("WordAdder agrees with the free function and is commutative") {
  AdderSpec spec{32, 10};
  WordAdder adder(spec);
  std::uint64_t x = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < 2000; ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    const std::uint64_t a = x & 0xffffffffull;
    const std::uint64_t b = (x >> 32) & 0xffffffffull;
    const std::uint64_t s = adder.add(a, b);
    CHECK(s == imprecise_add(a, b, 32, 10));
    CHECK(s == adder.add(b, a));
  }
}

TEST_CASE("error statistics on a small scan match an in-test brute force") {
  AdderSpec spec{8, 5};
  std::uint64_t pairs = 0, error_pairs = 0, max_error = 0, total_error = 0;
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) {
      const std::uint64_t exact = a + b;
      const std::uint64_t approx = imprecise_add(a, b, 8, 5);
      const std::uint64_t err =
          approx > exact ? approx - exact : exact - approx;
      pairs += 1;
      if (err != 0) error_pairs += 1;
      if (err > max_error) max_error = err;
      total_error += err;
    }
  }
  const ErrorStats stats = error_stats_exhaustive_low(spec, 5);
  CHECK(stats.pairs == pairs);
  CHECK(stats.error_pairs == error_pairs);
  CHECK(stats.max_error == max_error);
  CHECK(stats.total_error == total_error);
  CHECK(stats.mean_error ==
        static_cast<double>(total_error) / static_cast<double>(pairs));
  CHECK(stats.error_rate ==
        static_cast<double>(error_pairs) / static_cast<double>(pairs));
}

TEST_CASE("pinned error statistics for the 32-bit adder with a 10-bit low part") {
  // Frozen from an independent brute-force run over all 2^20 low-part pairs.
  const ErrorStats stats = error_stats_exhaustive_low(AdderSpec{32, 10}, 10);
  CHECK(stats.pairs == 1048576u);
  CHECK(stats.error_pairs == 1043392u);
  CHECK(stats.max_error == 575u);
  CHECK(stats.total_error == 200014144u);
  // Both ratios are exact binary fractions, so equality is bit-exact.
  CHECK(stats.mean_error == 190.74835205078125);
  CHECK(stats.error_rate == 0.99505615234375);
}

TEST_CASE("sampled error statistics are seed-deterministic") {
  AdderSpec spec{32, 10};
  const ErrorStats a = error_stats_sampled(spec, 10000, 42);
  const ErrorStats b = error_stats_sampled(spec, 10000, 42);
  const ErrorStats c = error_stats_sampled(spec, 10000, 43);
  CHECK(a.total_error == b.total_error);
  CHECK(a.max_error == b.max_error);
  CHECK(a.error_pairs == b.error_pairs);
  CHECK(a.total_error != c.total_error);  // different seed, different draw
  CHECK(a.max_error <= 1023u + (1023u - 31u));  // bounded by the low-part span
}

TEST_CASE("exhaustive scan width is capped") {
  CHECK_THROWS_AS(error_stats_exhaustive_low(AdderSpec{32, 10}, 13),
                  std::invalid_argument);
  CHECK_THROWS_AS(error_stats_exhaustive_low(AdderSpec{8, 5}, 9),
                  std::invalid_argument);  // scan wider than the operands
}
