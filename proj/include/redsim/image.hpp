#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redsim/fft.hpp"

namespace redsim {

/// 8-bit grayscale pixel grid, row-major.
struct FixedPointImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const FixedPointImage&) const = default;
};

FixedPointImage make_image(int width, int height, std::uint8_t fill = 0);

/// Binary PGM (P5), maxval 255. Reading rejects other formats; writing is
/// write-then-rename so failures never leave partial files.
FixedPointImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const FixedPointImage& image);

struct ProcessStats {
  std::uint64_t additions = 0;      // adder-model invocations across both transforms
  std::uint64_t overflow_adds = 0;  // operand pairs whose exact sum leaves int32
  std::uint64_t clamped_pixels = 0; // output pixels clipped into [0,255]
};

/// Number of fractional bits pixels gain on ingest (value = pixel << 16).
inline constexpr int kPixelScaleBits = 16;

/// Round trip: pixels scaled into fixed point, forward 2-D transform,
/// inverse 2-D transform, rescale with round-half-away, clamp to [0,255].
/// Dimensions must be powers of two, >= 2, <= 4096.
FixedPointImage process_image(const FixedPointImage& image, AdderModel& adder,
                              ProcessStats* stats = nullptr);

/// Deterministic synthetic test images.
FixedPointImage synth_gradient(int size);
FixedPointImage synth_checker(int size, int cell);
FixedPointImage synth_sines(int size, std::uint64_t seed);
FixedPointImage synth_value_noise(int size, std::uint64_t seed);

struct CorpusEntry {
  std::string name;
  FixedPointImage image;
};

/// The bundled corpus: gradient, checker(16), sines(seed 7), noise(seed 11).
std::vector<CorpusEntry> synthetic_corpus(int size = 512);

}  // namespace redsim
