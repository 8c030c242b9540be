#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "redsim/word_model.hpp"

namespace redsim {

/// Fixed-point complex value: re/im are plain 32-bit two's-complement
/// integers on the pipeline's scaling schedule.
struct ComplexSample {
  std::int32_t re = 0;
  std::int32_t im = 0;
  bool operator==(const ComplexSample&) const = default;
};

/// The 32-bit adder every butterfly addition and subtraction goes through.
/// Operands/results are two's-complement encodings of signed values in
/// unsigned 32-bit words (addition is carry-compatible, so the accurate
/// upper part of the reduced adder behaves correctly on negatives);
/// the carry-out bit is dropped (mod-2^32 wrap).
///
/// Subtraction negates the subtrahend natively and performs one model
/// addition. Counters: additions() counts every add/sub routed through the
/// model; overflow_adds() counts operand pairs whose exact signed sum falls
/// outside int32 (a range violation regardless of model).
class AdderModel {
public:
  static AdderModel exact();
  static AdderModel imprecise(const AdderSpec& spec);  // spec.width must be 32

  std::int32_t add(std::int32_t a, std::int32_t b);
  std::int32_t sub(std::int32_t a, std::int32_t b);

  bool is_exact() const { return exact_; }
  const AdderSpec& spec() const { return spec_; }
  std::uint64_t additions() const { return additions_; }
  std::uint64_t overflow_adds() const { return overflow_adds_; }
  void reset_counters() { additions_ = overflow_adds_ = 0; }

private:
  AdderModel(bool exact, const AdderSpec& spec);
  bool exact_;
  AdderSpec spec_;
  std::optional<WordAdder> word_adder_;
  std::uint64_t additions_ = 0;
  std::uint64_t overflow_adds_ = 0;
};

/// In-place radix-2 decimation-in-time transform, n a power of two <= 4096.
/// Twiddles are Q15 (32768 = 1.0), rounded half away from zero; each complex
/// multiply is exact in 64-bit with one Q15 rounding per component. Butterfly
/// adds/subtracts go through `adder`.
///
/// Scaling: the forward transform right-shifts both butterfly outputs by one
/// each stage (round half to even), computing DFT(x)/n; the inverse uses
/// conjugated twiddles and no shifts, computing conj-DFT with gain n. The
/// round trip ifft(fft(x)) therefore has unit gain, up to rounding noise.
void fft1d(std::span<ComplexSample> samples, AdderModel& adder, bool inverse);

/// Forward 2-D transform: fft1d over rows, then over columns.
void fft2d(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder);
/// Inverse 2-D transform: inverse fft1d over columns, then over rows.
void ifft2d(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder);

}  // namespace redsim
