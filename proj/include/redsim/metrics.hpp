#pragma once

#include <cstdint>

#include "redsim/image.hpp"

namespace redsim {

/// PSNR/SSIM/MSE for a reference/processed pair. psnr_db is +infinity
/// (psnr_infinite set) exactly when the images are identical.
struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  bool psnr_infinite = false;
  double ssim = 1.0;
};

/// Integer-exact sum of squared pixel differences. Dimension mismatch throws.
std::uint64_t sum_squared_error(const FixedPointImage& a, const FixedPointImage& b);

double mse(const FixedPointImage& a, const FixedPointImage& b);

/// 10*log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const FixedPointImage& a, const FixedPointImage& b);

/// Mean local SSIM over 11x11 Gaussian windows (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 255, windows fully inside the image (no
/// padding). Both sides must be >= 11 pixels.
double ssim(const FixedPointImage& a, const FixedPointImage& b);

QualityReport quality_report(const FixedPointImage& reference, const FixedPointImage& processed);

}  // namespace redsim
