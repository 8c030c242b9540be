#pragma once

#include <cstdint>
#include <string>

namespace redsim {

/// How the reduced low-part sum bits of the imprecise adder are formed.
/// OrBits: the top four low-part bits are OR(A_i, B_i), everything below is
/// tied to 1. ConstantOnes: the whole low part is tied to 1.
enum class LowPartStrategy : std::uint8_t { OrBits, ConstantOnes };

/// Shape of an adder: `width` input bits per operand, of which the lowest
/// `approx_width` are handled by the reduced-logic low part. approx_width 0
/// selects a plain accurate adder.
struct AdderSpec {
  int width = 32;
  int approx_width = 0;
  LowPartStrategy strategy = LowPartStrategy::OrBits;

  bool is_exact() const { return approx_width == 0; }
  /// Throws std::invalid_argument when the shape is unusable:
  /// width must be 1..63, 0 <= approx_width < width, and the OrBits
  /// strategy needs approx_width == 0 or >= 5 (four OR bits + at least one
  /// tied bit below them).
  void check() const;
  std::string describe() const;  // e.g. "exact[8]" / "imprecise[32,L=10]"
};

/// Unsigned value clipped to a bit width (1..64).
struct Word {
  std::uint64_t value = 0;
  int width = 0;
};

/// Accurate addition: full (width+1)-bit sum including the carry-out bit.
std::uint64_t exact_add(std::uint64_t a, std::uint64_t b, int width);

/// Reduced-logic addition over the same operands. Low `l` bits come from the
/// low-part strategy; a transfer bit AND(a[l-1], b[l-1]) carries into the
/// accurate upper part. Result is width+1 bits like exact_add.
std::uint64_t imprecise_add(std::uint64_t a, std::uint64_t b, int width, int l,
                            LowPartStrategy strategy = LowPartStrategy::OrBits);

/// Word-level adder bound to a fixed spec, with masks precomputed.
class WordAdder {
public:
  explicit WordAdder(const AdderSpec& spec);
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  const AdderSpec& spec() const { return spec_; }

private:
  AdderSpec spec_;
  std::uint64_t in_mask_;
  std::uint64_t low_mask_;
  std::uint64_t or_mask_;
  std::uint64_t const_bits_;
};

/// Deviation of an adder from exact addition over a set of operand pairs.
/// Errors are absolute differences of the full (width+1)-bit sums.
struct ErrorStats {
  std::uint64_t pairs = 0;
  std::uint64_t error_pairs = 0;   // pairs whose sums differ
  std::uint64_t max_error = 0;
  double mean_error = 0.0;         // mean over all pairs, exact ratio
  double error_rate = 0.0;         // error_pairs / pairs

  /// Sum of absolute errors, kept so mean_error can be recomputed exactly.
  std::uint64_t total_error = 0;
};

/// Exhaustive scan over all pairs with both operands below 2^scan_bits
/// (upper operand bits zero). scan_bits is capped at 12 to keep the scan at
/// most 2^24 pairs.
ErrorStats error_stats_exhaustive_low(const AdderSpec& spec, int scan_bits);

/// Monte-Carlo scan over `samples` uniform operand pairs drawn from the full
/// width. Deterministic for a fixed seed.
ErrorStats error_stats_sampled(const AdderSpec& spec, std::uint64_t samples, std::uint64_t seed);

}  // namespace redsim
