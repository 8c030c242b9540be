#include "redsim/fft.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace redsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::int32_t wrap32(std::uint64_t v) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(v));
}

/// v/2 rounded half to even (the half case is every odd v).
std::int32_t half_round_even(std::int32_t v) {
  std::int32_t m = v >> 1;
  return (v & 1) ? m + (m & 1) : m;
}

/// x/2^15 rounded half away from zero.
std::int64_t q15_round(std::int64_t x) {
  constexpr std::int64_t half = 1ll << 14;
  return x >= 0 ? (x + half) >> 15 : -((-x + half) >> 15);
}

struct Twiddle {
  std::int32_t re;
  std::int32_t im;
};

/// w_n^j = e^(-2*pi*i*j/n) for j < n/2, Q15, half-away rounding; the inverse
/// transform conjugates these.
std::vector<Twiddle> twiddle_table(int n) {
  std::vector<Twiddle> w(static_cast<std::size_t>(n) / 2);
  for (std::size_t j = 0; j < w.size(); ++j) {
    double angle = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    w[j].re = static_cast<std::int32_t>(std::llround(std::cos(angle) * 32768.0));
    w[j].im = static_cast<std::int32_t>(std::llround(std::sin(angle) * 32768.0));
  }
  return w;
}

ComplexSample cmul_q15(ComplexSample a, Twiddle w) {
  std::int64_t ar = a.re, ai = a.im, br = w.re, bi = w.im;
  std::int64_t re = q15_round(ar * br - ai * bi);
  std::int64_t im = q15_round(ar * bi + ai * br);
  return {wrap32(static_cast<std::uint64_t>(re)), wrap32(static_cast<std::uint64_t>(im))};
}

}  // namespace

AdderModel::AdderModel(bool exact, const AdderSpec& spec) : exact_(exact), spec_(spec) {
  if (!exact_) {
    if (spec_.width != 32) {
      throw std::invalid_argument("AdderModel: the reduced adder must be 32 bits wide here");
    }
    spec_.check();
    if (spec_.is_exact()) {
      throw std::invalid_argument("AdderModel::imprecise: approx_width must be > 0");
    }
    word_adder_.emplace(spec_);
  }
}

AdderModel AdderModel::exact() {
  return AdderModel(true, AdderSpec{32, 0, LowPartStrategy::OrBits});
}

AdderModel AdderModel::imprecise(const AdderSpec& spec) { return AdderModel(false, spec); }

std::int32_t AdderModel::add(std::int32_t a, std::int32_t b) {
  ++additions_;
  const std::uint64_t ua = static_cast<std::uint32_t>(a);
  const std::uint64_t ub = static_cast<std::uint32_t>(b);
  const std::int64_t exact_sum = static_cast<std::int64_t>(a) + b;
  if (exact_sum < INT32_MIN || exact_sum > INT32_MAX) ++overflow_adds_;
  if (exact_) return wrap32(ua + ub);
  return wrap32(word_adder_->add(ua, ub));
}

std::int32_t AdderModel::sub(std::int32_t a, std::int32_t b) {
  return add(a, wrap32(0ull - static_cast<std::uint32_t>(b)));
}

void fft1d(std::span<ComplexSample> samples, AdderModel& adder, bool inverse) {
  const std::size_t n = samples.size();
  if (n == 0 || !std::has_single_bit(n) || n > 4096) {
    throw std::invalid_argument("fft1d: length must be a power of two between 1 and 4096");
  }
  if (n == 1) return;

  // bit-reverse permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(samples[i], samples[j]);
  }

  const auto table = twiddle_table(static_cast<int>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Twiddle w = table[j * stride];
        if (inverse) w.im = -w.im;
        const ComplexSample u = samples[start + j];
        const ComplexSample m = cmul_q15(samples[start + j + len / 2], w);
        ComplexSample lo{adder.add(u.re, m.re), adder.add(u.im, m.im)};
        ComplexSample hi{adder.sub(u.re, m.re), adder.sub(u.im, m.im)};
        if (!inverse) {
          lo = {half_round_even(lo.re), half_round_even(lo.im)};
          hi = {half_round_even(hi.re), half_round_even(hi.im)};
        }
        samples[start + j] = lo;
        samples[start + j + len / 2] = hi;
      }
    }
  }
}

namespace {

void check_grid(const std::vector<ComplexSample>& grid, int width, int height) {
  if (width < 1 || height < 1 ||
      !std::has_single_bit(static_cast<unsigned>(width)) ||
      !std::has_single_bit(static_cast<unsigned>(height)) || width > 4096 || height > 4096) {
    throw std::invalid_argument("2-D transform: dimensions must be powers of two, 1..4096");
  }
  if (grid.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("2-D transform: grid size does not match dimensions");
  }
}

void transform_rows(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder,
                    bool inverse) {
  for (int y = 0; y < height; ++y) {
    fft1d(std::span<ComplexSample>(grid.data() + static_cast<std::size_t>(y) * width,
                                   static_cast<std::size_t>(width)),
          adder, inverse);
  }
}

void transform_cols(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder,
                    bool inverse) {
  std::vector<ComplexSample> column(static_cast<std::size_t>(height));
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) {
      column[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) * width + x];
    }
    fft1d(column, adder, inverse);
    for (int y = 0; y < height; ++y) {
      grid[static_cast<std::size_t>(y) * width + x] = column[static_cast<std::size_t>(y)];
    }
  }
}

}  // namespace

void fft2d(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder) {
  check_grid(grid, width, height);
  transform_rows(grid, width, height, adder, false);
  transform_cols(grid, width, height, adder, false);
}

void ifft2d(std::vector<ComplexSample>& grid, int width, int height, AdderModel& adder) {
  check_grid(grid, width, height);
  transform_cols(grid, width, height, adder, true);
  transform_rows(grid, width, height, adder, true);
}

}  // namespace redsim
