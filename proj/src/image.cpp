#include "redsim/image.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

namespace redsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dims(int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
  if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) > (1u << 26)) {
    throw std::invalid_argument("image too large");
  }
}

int pgm_token(std::istream& is) {
  // skips whitespace and '#' comments, then reads one decimal token
  int c = is.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = is.get();
    } else if (std::isspace(c)) {
      c = is.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw std::runtime_error("malformed PGM header");
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1 << 26) throw std::runtime_error("PGM header value out of range");
    c = is.get();
  }
  if (c != EOF) is.unget();
  return static_cast<int>(value);
}

}  // namespace

FixedPointImage make_image(int width, int height, std::uint8_t fill) {
  check_dims(width, height);
  FixedPointImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

FixedPointImage read_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open image: " + path);
  char magic[2] = {0, 0};
  f.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') {
    throw std::runtime_error(path + ": not a binary PGM (P5) file");
  }
  const int width = pgm_token(f);
  const int height = pgm_token(f);
  const int maxval = pgm_token(f);
  if (maxval != 255) throw std::runtime_error(path + ": PGM maxval must be 255");
  f.get();  // the single whitespace byte separating header and raster

  FixedPointImage img = make_image(width, height);
  f.read(reinterpret_cast<char*>(img.pixels.data()),
         static_cast<std::streamsize>(img.pixels.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw std::runtime_error(path + ": truncated PGM raster");
  }
  return img;
}

void write_pgm(const std::string& path, const FixedPointImage& image) {
  check_dims(image.width, image.height);
  if (image.pixels.size() !=
      static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height)) {
    throw std::invalid_argument("write_pgm: pixel buffer does not match dimensions");
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write image: " + tmp);
    f << "P5\n" << image.width << " " << image.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
    if (!f.good()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

FixedPointImage process_image(const FixedPointImage& image, AdderModel& adder,
                              ProcessStats* stats) {
  const int w = image.width;
  const int h = image.height;
  if (w < 2 || h < 2 || !std::has_single_bit(static_cast<unsigned>(w)) ||
      !std::has_single_bit(static_cast<unsigned>(h)) || w > 4096 || h > 4096) {
    throw std::invalid_argument("process_image: dimensions must be powers of two, 2..4096");
  }

  const std::uint64_t additions_before = adder.additions();
  const std::uint64_t overflow_before = adder.overflow_adds();

  std::vector<ComplexSample> grid(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i].re = static_cast<std::int32_t>(image.pixels[i]) << kPixelScaleBits;
    grid[i].im = 0;
  }

  fft2d(grid, w, h, adder);
  ifft2d(grid, w, h, adder);

  FixedPointImage out = make_image(w, h);
  constexpr std::int32_t half = 1 << (kPixelScaleBits - 1);
  std::uint64_t clamped = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::int32_t v = grid[i].re;
    const std::int32_t rounded = v >= 0 ? (v + half) >> kPixelScaleBits
                                        : -((-v + half) >> kPixelScaleBits);
    std::int32_t clipped = rounded;
    if (clipped < 0) clipped = 0;
    if (clipped > 255) clipped = 255;
    if (clipped != rounded) ++clamped;
    out.pixels[i] = static_cast<std::uint8_t>(clipped);
  }

  if (stats != nullptr) {
    stats->additions = adder.additions() - additions_before;
    stats->overflow_adds = adder.overflow_adds() - overflow_before;
    stats->clamped_pixels = clamped;
  }
  return out;
}

FixedPointImage synth_gradient(int size) {
  if (size < 2) throw std::invalid_argument("synth_gradient: size must be >= 2");
  FixedPointImage img = make_image(size, size);
  const int span = 2 * (size - 1);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      img.at(x, y) = static_cast<std::uint8_t>(((x + y) * 255 + span / 2) / span);
    }
  }
  return img;
}

FixedPointImage synth_checker(int size, int cell) {
  if (cell < 1) throw std::invalid_argument("synth_checker: cell must be positive");
  FixedPointImage img = make_image(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      img.at(x, y) = ((x / cell + y / cell) % 2 == 0) ? 25 : 230;
    }
  }
  return img;
}

FixedPointImage synth_sines(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
  FixedPointImage img = make_image(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double fx = static_cast<double>(x) / size;
      const double fy = static_cast<double>(y) / size;
      double v = 128.0 + 45.0 * std::sin(2.0 * kPi * 3.0 * fx + p1) +
                 35.0 * std::sin(2.0 * kPi * 5.0 * fy + p2) +
                 20.0 * std::sin(2.0 * kPi * 7.0 * (fx + fy) + p3);
      const long q = std::lround(v);
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(q, 0l, 255l));
    }
  }
  return img;
}

FixedPointImage synth_value_noise(int size, std::uint64_t seed) {
  const int cell = std::max(1, size / 16);
  const int nodes = size / cell + 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(30, 225);
  std::vector<int> grid(static_cast<std::size_t>(nodes) * nodes);
  for (auto& g : grid) g = level(rng);

  FixedPointImage img = make_image(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const int gx = x / cell, gy = y / cell;
      const double tx = static_cast<double>(x % cell) / cell;
      const double ty = static_cast<double>(y % cell) / cell;
      const double a = grid[static_cast<std::size_t>(gy) * nodes + gx];
      const double b = grid[static_cast<std::size_t>(gy) * nodes + gx + 1];
      const double c = grid[static_cast<std::size_t>(gy + 1) * nodes + gx];
      const double d = grid[static_cast<std::size_t>(gy + 1) * nodes + gx + 1];
      const double v = a * (1 - tx) * (1 - ty) + b * tx * (1 - ty) + c * (1 - tx) * ty +
                       d * tx * ty;
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
  }
  return img;
}

std::vector<CorpusEntry> synthetic_corpus(int size) {
  std::vector<CorpusEntry> corpus;
  corpus.push_back({"gradient", synth_gradient(size)});
  corpus.push_back({"checker", synth_checker(size, 16)});
  corpus.push_back({"sines", synth_sines(size, 7)});
  corpus.push_back({"noise", synth_value_noise(size, 11)});
  return corpus;
}

}  // namespace redsim
