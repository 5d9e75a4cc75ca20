#include "synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace hdrrt::testing {

RadianceMap make_radiance(std::size_t width, std::size_t height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);

  RadianceMap scene(width, height);
  const double phase = unit(rng) * 2.0 * std::numbers::pi;
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double x = static_cast<double>(c) / w;
      const double y = static_cast<double>(r) / h;
      const double base = 0.06 + 0.18 * y + 0.04 * std::sin(2.0 * std::numbers::pi * x + phase);
      scene(r, c) = Rgb{base * 1.05, base, base * 0.9};
    }
  }

  auto rect = [&](double fx0, double fx1, double fy0, double fy1) {
    return std::array<std::size_t, 4>{static_cast<std::size_t>(fx0 * w), static_cast<std::size_t>(fx1 * w),
                                      static_cast<std::size_t>(fy0 * h), static_cast<std::size_t>(fy1 * h)};
  };

  // Bright window: radiance far above the mid exposure's clipping point.
  const double wx = 0.05 + 0.2 * unit(rng);
  const auto win = rect(wx, wx + 0.3, 0.08, 0.5);
  const std::size_t stripe = 3 + static_cast<std::size_t>(unit(rng) * 3);
  for (std::size_t r = win[2]; r < win[3]; ++r) {
    for (std::size_t c = win[0]; c < win[1]; ++c) {
      const bool mullion = (c - win[0]) % 12 < 2 || (r - win[2]) % 14 < 2;
      const bool band = ((r - win[2]) / stripe) % 2 == 0;
      const double v = mullion ? 0.8 : (band ? 30.0 : 9.0) * (0.8 + 0.4 * unit(rng));
      scene(r, c) = Rgb{v, v * 0.95, v * 0.85};
    }
  }

  // Deep shadow: detail only visible in the long exposure.
  const double sx = 0.55 + 0.15 * unit(rng);
  const auto shadow = rect(sx, std::min(sx + 0.35, 1.0), 0.55, 0.95);
  for (std::size_t r = shadow[2]; r < shadow[3]; ++r) {
    for (std::size_t c = shadow[0]; c < shadow[1]; ++c) {
      const bool check = ((r / 4) + (c / 4)) % 2 == 0;
      const double v = (check ? 0.012 : 0.004) * (0.85 + 0.3 * unit(rng));
      scene(r, c) = Rgb{v * 0.9, v, v * 1.1};
    }
  }

  // Mid-tone disks.
  const int disks = 3 + static_cast<int>(unit(rng) * 3);
  for (int d = 0; d < disks; ++d) {
    const double cx = unit(rng) * w;
    const double cy = unit(rng) * h;
    const double radius = (0.05 + 0.08 * unit(rng)) * std::min(w, h);
    const Rgb tint{0.2 + 0.8 * unit(rng), 0.2 + 0.8 * unit(rng), 0.2 + 0.8 * unit(rng)};
    const double level = 0.1 + 0.6 * unit(rng);
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t c = 0; c < width; ++c) {
        const double dx = static_cast<double>(c) - cx;
        const double dy = static_cast<double>(r) - cy;
        if (dx * dx + dy * dy <= radius * radius) scene(r, c) = tint * level;
      }
    }
  }
  return scene;
}

ImageStack bracket(const RadianceMap& radiance, std::span<const double> exposures, bool quantize) {
  auto encode = [quantize](double v) {
    double out = std::pow(std::clamp(v, 0.0, 1.0), 1.0 / 2.2);
    if (quantize) out = std::floor(out * 255.0 + 0.5) / 255.0;
    return out;
  };
  std::vector<RgbImage> images;
  std::vector<std::string> labels;
  for (double t : exposures) {
    RgbImage img(radiance.width(), radiance.height());
    auto dst = img.values();
    const auto src = radiance.values();
    for (std::size_t p = 0; p < dst.size(); ++p) {
      dst[p] = Rgb{encode(src[p].r * t), encode(src[p].g * t), encode(src[p].b * t)};
    }
    images.push_back(std::move(img));
    labels.push_back("exposure_" + std::to_string(images.size() - 1));
  }
  return ImageStack(std::move(images), std::move(labels));
}

ImageStack make_bracketed_scene(std::size_t width, std::size_t height, std::uint32_t seed) {
  return bracket(make_radiance(width, height, seed), kDefaultExposures);
}

ImageStack random_stack(std::size_t n, std::size_t width, std::size_t height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<RgbImage> images;
  for (std::size_t i = 0; i < n; ++i) {
    RgbImage img(width, height);
    for (Rgb& p : img.values()) p = Rgb{byte(rng) / 255.0, byte(rng) / 255.0, byte(rng) / 255.0};
    images.push_back(std::move(img));
  }
  return ImageStack(std::move(images));
}

}  // namespace hdrrt::testing
