#include "redsim/word_model.hpp"

#include <random>
#include <stdexcept>

namespace redsim {

namespace {

std::uint64_t mask_bits(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

void AdderSpec::check() const {
  if (width < 1 || width > 63) {
    throw std::invalid_argument("adder width must be between 1 and 63");
  }
  if (approx_width < 0 || approx_width >= width) {
    throw std::invalid_argument("approximate low-part width must satisfy 0 <= L < width");
  }
  if (approx_width > 0 && strategy == LowPartStrategy::OrBits && approx_width < 5) {
    throw std::invalid_argument("OrBits low part needs L >= 5 (four OR bits plus tied bits)");
  }
}

std::string AdderSpec::describe() const {
  if (is_exact()) return "exact[" + std::to_string(width) + "]";
  std::string s = "imprecise[" + std::to_string(width) + ",L=" + std::to_string(approx_width);
  if (strategy == LowPartStrategy::ConstantOnes) s += ",const1";
  return s + "]";
}

std::uint64_t exact_add(std::uint64_t a, std::uint64_t b, int width) {
  if (width < 1 || width > 63) throw std::invalid_argument("exact_add: width must be 1..63");
  std::uint64_t m = mask_bits(width);
  if ((a & ~m) || (b & ~m)) throw std::invalid_argument("exact_add: operand exceeds width");
  return a + b;
}

std::uint64_t imprecise_add(std::uint64_t a, std::uint64_t b, int width, int l,
                            LowPartStrategy strategy) {
  AdderSpec spec{width, l, strategy};
  spec.check();
  if (l == 0) return exact_add(a, b, width);
  return WordAdder(spec).add(a, b);
}

WordAdder::WordAdder(const AdderSpec& spec) : spec_(spec) {
  spec_.check();
  in_mask_ = mask_bits(spec_.width);
  low_mask_ = mask_bits(spec_.approx_width);
  if (spec_.is_exact()) {
    or_mask_ = 0;
    const_bits_ = 0;
  } else if (spec_.strategy == LowPartStrategy::OrBits) {
    or_mask_ = low_mask_ & ~mask_bits(spec_.approx_width - 4);
    const_bits_ = mask_bits(spec_.approx_width - 4);
  } else {
    or_mask_ = 0;
    const_bits_ = low_mask_;
  }
}

std::uint64_t WordAdder::add(std::uint64_t a, std::uint64_t b) const {
  if ((a & ~in_mask_) || (b & ~in_mask_)) {
    throw std::invalid_argument("WordAdder::add: operand exceeds width");
  }
  if (spec_.is_exact()) return a + b;
  const int l = spec_.approx_width;
  std::uint64_t low = ((a | b) & or_mask_) | const_bits_;
  std::uint64_t t = (a >> (l - 1)) & (b >> (l - 1)) & 1u;
  std::uint64_t upper = (a >> l) + (b >> l) + t;
  return (upper << l) | low;
}

namespace {

ErrorStats finalize(ErrorStats s) {
  if (s.pairs > 0) {
    s.mean_error = static_cast<double>(s.total_error) / static_cast<double>(s.pairs);
    s.error_rate = static_cast<double>(s.error_pairs) / static_cast<double>(s.pairs);
  }
  return s;
}

}  // namespace

ErrorStats error_stats_exhaustive_low(const AdderSpec& spec, int scan_bits) {
  spec.check();
  if (scan_bits < 1 || scan_bits > 12 || scan_bits > spec.width) {
    throw std::invalid_argument("error_stats_exhaustive_low: scan_bits must be 1..12 and <= width");
  }
  WordAdder adder(spec);
  const std::uint64_t n = 1ull << scan_bits;
  ErrorStats s;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      std::uint64_t got = adder.add(a, b);
      std::uint64_t want = a + b;
      std::uint64_t err = abs_diff(got, want);
      ++s.pairs;
      if (err != 0) {
        ++s.error_pairs;
        s.total_error += err;
        if (err > s.max_error) s.max_error = err;
      }
    }
  }
  return finalize(s);
}

ErrorStats error_stats_sampled(const AdderSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  spec.check();
  if (samples == 0) throw std::invalid_argument("error_stats_sampled: need at least one sample");
  WordAdder adder(spec);
  std::mt19937_64 rng(seed);
  const std::uint64_t m = mask_bits(spec.width);
  ErrorStats s;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t a = rng() & m;
    std::uint64_t b = rng() & m;
    std::uint64_t err = abs_diff(adder.add(a, b), a + b);
    ++s.pairs;
    if (err != 0) {
      ++s.error_pairs;
      s.total_error += err;
      if (err > s.max_error) s.max_error = err;
    }
  }
  return finalize(s);
}

}  // namespace redsim
