#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "redsim/image.hpp"
#include "redsim/metrics.hpp"

using namespace redsim;

namespace {

FixedPointImage random_image(int w, int h, std::uint64_t seed) {
  FixedPointImage img = make_image(w, h);
  std::mt19937_64 rng(seed);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xff);
  return img;
}

/// Direct 2-D windowed SSIM, written independently of the library's
/// separable implementation: one explicit 11x11 weighted pass per window.
double direct_ssim(const FixedPointImage& a, const FixedPointImage& b) {
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = 6.5025;
  constexpr double kC2 = 58.5225;

  std::array<std::array<double, kWin>, kWin> w{};
  double norm = 0.0;
  for (int i = 0; i < kWin; ++i) {
    for (int j = 0; j < kWin; ++j) {
      const double di = i - 5;
      const double dj = j - 5;
      w[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
      norm += w[i][j];
    }
  }
  for (auto& row : w) {
    for (auto& v : row) v /= norm;
  }

  double total = 0.0;
  std::int64_t windows = 0;
  for (int y0 = 0; y0 + kWin <= a.height; ++y0) {
    for (int x0 = 0; x0 + kWin <= a.width; ++x0) {
      double mx = 0, my = 0, exx = 0, eyy = 0, exy = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          const double xv = a.pixels[static_cast<std::size_t>(y0 + i) * a.width + x0 + j];
          const double yv = b.pixels[static_cast<std::size_t>(y0 + i) * b.width + x0 + j];
          mx += w[i][j] * xv;
          my += w[i][j] * yv;
          exx += w[i][j] * xv * xv;
          eyy += w[i][j] * yv * yv;
          exy += w[i][j] * xv * yv;
        }
      }
      const double vx = exx - mx * mx;
      const double vy = eyy - my * my;
      const double cov = exy - mx * my;
      total += ((2 * mx * my + kC1) * (2 * cov + kC2)) /
               ((mx * mx + my * my + kC1) * (vx + vy + kC2));
      windows += 1;
    }
  }
  return total / static_cast<double>(windows);
}

}  // namespace

TEST_CASE("identical images: zero error, infinite PSNR, SSIM exactly one") {
  const FixedPointImage img = random_image(64, 64, 11);
  CHECK(sum_squared_error(img, img) == 0);
  CHECK(mse(img, img) == 0.0);
  CHECK(std::isinf(psnr(img, img)));
  CHECK(psnr(img, img) > 0);
  CHECK(ssim(img, img) == 1.0);
  const QualityReport q = quality_report(img, img);
  CHECK(q.psnr_infinite);
  CHECK(q.ssim == 1.0);
  CHECK(q.mse == 0.0);
}

TEST_CASE("PSNR worked values") {
  // Black vs white: MSE = 255^2, PSNR = 0 dB exactly.
  const FixedPointImage black = make_image(32, 32, 0);
  const FixedPointImage white = make_image(32, 32, 255);
  CHECK(psnr(black, white) == 0.0);

  // Uniform +1 offset: MSE = 1, PSNR = 10*log10(255^2).
  FixedPointImage a = make_image(32, 32, 100);
  FixedPointImage b = make_image(32, 32, 101);
  CHECK(sum_squared_error(a, b) == 1024);
  CHECK(psnr(a, b) == doctest::Approx(48.13080360867910).epsilon(1e-12));
}

TEST_CASE("SSE is order-independent and symmetric") {
  const FixedPointImage a = random_image(48, 32, 3);
  const FixedPointImage b = random_image(48, 32, 4);
  CHECK(sum_squared_error(a, b) == sum_squared_error(b, a));
  // Permuting both images identically leaves the error sum unchanged.
  FixedPointImage ap = a, bp = b;
  std::reverse(ap.pixels.begin(), ap.pixels.end());
  std::reverse(bp.pixels.begin(), bp.pixels.end());
  CHECK(sum_squared_error(ap, bp) == sum_squared_error(a, b));
}

TEST_CASE("metrics reject mismatched or undersized inputs") {
  const FixedPointImage a = make_image(32, 32);
  const FixedPointImage b = make_image(32, 16);
  CHECK_THROWS_AS(sum_squared_error(a, b), std::invalid_argument);
  CHECK_THROWS_AS(psnr(a, b), std::invalid_argument);
  CHECK_THROWS_AS(ssim(a, b), std::invalid_argument);
  const FixedPointImage tiny = make_image(8, 8);
  CHECK_THROWS_AS(ssim(tiny, tiny), std::invalid_argument);
}

TEST_CASE("separable SSIM equals the direct two-dimensional formula") {
  for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
    const FixedPointImage a = random_image(64, 64, seed);
    const FixedPointImage b = random_image(64, 64, seed + 100);
    CHECK(std::abs(ssim(a, b) - direct_ssim(a, b)) < 1e-9);
  }
  // Also on a structured pair: gradient vs its processed-look variant.
  const FixedPointImage g = synth_gradient(64);
  FixedPointImage g2 = g;
  for (auto& p : g2.pixels) p = static_cast<std::uint8_t>(p ^ 3);
  CHECK(std::abs(ssim(g, g2) - direct_ssim(g, g2)) < 1e-9);
}

TEST_CASE("SSIM is symmetric and bounded") {
  const FixedPointImage a = random_image(32, 32, 5);
  const FixedPointImage b = random_image(32, 32, 6);
  const double s1 = ssim(a, b);
  const double s2 = ssim(b, a);
  CHECK(s1 == s2);
  CHECK(s1 <= 1.0);
  CHECK(s1 >= -1.0);
}

TEST_CASE("negating an image destroys structural similarity") {
  const FixedPointImage g = synth_gradient(64);
  FixedPointImage neg = g;
  for (auto& p : neg.pixels) p = static_cast<std::uint8_t>(255 - p);
  CHECK(ssim(g, neg) < 0.5);
  CHECK(ssim(g, g) == 1.0);
}

TEST_CASE("small uniform shifts barely move SSIM but move PSNR") {
  const FixedPointImage g = synth_gradient(64);
  FixedPointImage shifted = g;
  for (auto& p : shifted.pixels) {
    p = static_cast<std::uint8_t>(std::min<int>(255, p + 2));
  }
  CHECK(ssim(g, shifted) > 0.99);       // structure intact
  CHECK(psnr(g, shifted) < 45.0);       // pointwise error visible to PSNR
  CHECK(psnr(g, shifted) > 40.0);
}

TEST_CASE("quality_report bundles the same numbers the scalar calls produce") {
  const FixedPointImage a = random_image(64, 64, 8);
  const FixedPointImage b = random_image(64, 64, 9);
  const QualityReport q = quality_report(a, b);
  CHECK(q.mse == mse(a, b));
  CHECK(q.psnr_db == psnr(a, b));
  CHECK(q.ssim == ssim(a, b));
  CHECK(!q.psnr_infinite);
}
