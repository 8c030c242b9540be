#include "redsim/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace redsim {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

void check_same_dims(const FixedPointImage& a, const FixedPointImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("metric inputs must have identical dimensions");
  }
}

std::array<double, kWindow> gaussian_kernel() {
  std::array<double, kWindow> k{};
  double total = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - (kWindow - 1) / 2;
    k[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    total += k[i];
  }
  for (auto& v : k) v /= total;
  return k;
}

/// Horizontal valid convolution: (w, h) -> (w - kWindow + 1, h).
std::vector<double> conv_h(const std::vector<double>& in, int w, int h,
                           const std::array<double, kWindow>& kernel) {
  const int ow = w - kWindow + 1;
  std::vector<double> out(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += kernel[k] * in[static_cast<std::size_t>(y) * w + x + k];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

/// Vertical valid convolution: (w, h) -> (w, h - kWindow + 1).
std::vector<double> conv_v(const std::vector<double>& in, int w, int h,
                           const std::array<double, kWindow>& kernel) {
  const int oh = h - kWindow + 1;
  std::vector<double> out(static_cast<std::size_t>(w) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += kernel[k] * in[static_cast<std::size_t>(y + k) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

std::vector<double> smooth(const std::vector<double>& plane, int w, int h,
                           const std::array<double, kWindow>& kernel) {
  return conv_v(conv_h(plane, w, h, kernel), w - kWindow + 1, h, kernel);
}

}  // namespace

std::uint64_t sum_squared_error(const FixedPointImage& a, const FixedPointImage& b) {
  check_same_dims(a, b);
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a.pixels[i]) - b.pixels[i];
    sse += static_cast<std::uint64_t>(d * d);
  }
  return sse;
}

double mse(const FixedPointImage& a, const FixedPointImage& b) {
  return static_cast<double>(sum_squared_error(a, b)) / static_cast<double>(a.pixels.size());
}

double psnr(const FixedPointImage& a, const FixedPointImage& b) {
  const std::uint64_t sse = sum_squared_error(a, b);
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double m = static_cast<double>(sse) / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const FixedPointImage& a, const FixedPointImage& b) {
  check_same_dims(a, b);
  const int w = a.width;
  const int h = a.height;
  if (w < kWindow || h < kWindow) {
    throw std::invalid_argument("ssim: both image sides must be >= 11 pixels");
  }

  const std::size_t n = a.pixels.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xv = a.pixels[i];
    const double yv = b.pixels[i];
    x[i] = xv;
    y[i] = yv;
    xx[i] = xv * xv;
    yy[i] = yv * yv;
    xy[i] = xv * yv;
  }

  const auto kernel = gaussian_kernel();
  const auto mu_x = smooth(x, w, h, kernel);
  const auto mu_y = smooth(y, w, h, kernel);
  const auto e_xx = smooth(xx, w, h, kernel);
  const auto e_yy = smooth(yy, w, h, kernel);
  const auto e_xy = smooth(xy, w, h, kernel);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double var_x = e_xx[i] - mx * mx;
    const double var_y = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
    const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
    total += num / den;
  }
  return total / static_cast<double>(mu_x.size());
}

QualityReport quality_report(const FixedPointImage& reference, const FixedPointImage& processed) {
  QualityReport report;
  const std::uint64_t sse = sum_squared_error(reference, processed);
  report.mse = static_cast<double>(sse) / static_cast<double>(reference.pixels.size());
  if (sse == 0) {
    report.psnr_infinite = true;
    report.psnr_db = std::numeric_limits<double>::infinity();
  } else {
    report.psnr_db = 10.0 * std::log10(255.0 * 255.0 / report.mse);
  }
  report.ssim = ssim(reference, processed);
  return report;
}

}  // namespace redsim
