#include "hdrrt/fusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hdrrt/energy.hpp"
#include "hdrrt/errors.hpp"
#include "hdrrt/parallel.hpp"

namespace hdrrt {
namespace {

using RgbPlane = Grid<Rgb, PlaneTag>;

template <class T>
Grid<T, PlaneTag> blur_and_decimate(const Grid<T, PlaneTag>& src) {
  static constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const std::size_t w = src.width();
  const std::size_t h = src.height();
  const std::size_t ow = (w + 1) / 2;
  const std::size_t oh = (h + 1) / 2;
  auto clampi = [](std::ptrdiff_t i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };

  // Horizontal pass evaluated only at kept columns.
  Grid<T, PlaneTag> tmp(ow, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t oc = 0; oc < ow; ++oc) {
      const auto c = static_cast<std::ptrdiff_t>(2 * oc);
      T acc{};
      for (int k = -2; k <= 2; ++k) acc += src(r, clampi(c + k, w)) * kTaps[k + 2];
      tmp(r, oc) = acc;
    }
  }
  Grid<T, PlaneTag> out(ow, oh);
  for (std::size_t orow = 0; orow < oh; ++orow) {
    const auto r = static_cast<std::ptrdiff_t>(2 * orow);
    for (std::size_t c = 0; c < ow; ++c) {
      T acc{};
      for (int k = -2; k <= 2; ++k) acc += tmp(clampi(r + k, h), c) * kTaps[k + 2];
      out(orow, c) = acc;
    }
  }
  return out;
}

// Fine pixel x sits at coarse coordinate x/2: even pixels hit a coarse
// sample, odd ones average the two neighbouring samples.
template <class T>
Grid<T, PlaneTag> expand_impl(const Grid<T, PlaneTag>& coarse, std::size_t width, std::size_t height) {
  if (coarse.width() != (width + 1) / 2 || coarse.height() != (height + 1) / 2) {
    throw Error(ErrorCode::DimensionMismatch, "expand target does not match the coarse level");
  }
  const std::size_t cw = coarse.width();
  const std::size_t ch = coarse.height();
  Grid<T, PlaneTag> tmp(width, ch);
  for (std::size_t r = 0; r < ch; ++r) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t a = x / 2;
      tmp(r, x) = (x % 2 == 0) ? coarse(r, a) : (coarse(r, a) + coarse(r, std::min(a + 1, cw - 1))) * 0.5;
    }
  }
  Grid<T, PlaneTag> out(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t a = y / 2;
    const std::size_t b = std::min(a + 1, ch - 1);
    for (std::size_t x = 0; x < width; ++x) {
      out(y, x) = (y % 2 == 0) ? tmp(a, x) : (tmp(a, x) + tmp(b, x)) * 0.5;
    }
  }
  return out;
}

void check_levels(std::size_t width, std::size_t height, std::size_t levels) {
  const std::size_t max = auto_pyramid_levels(width, height);
  if (levels == 0 || levels > max) {
    throw Error(ErrorCode::TooManyLevels, std::to_string(levels) + " pyramid levels requested, " +
                                              std::to_string(width) + "x" + std::to_string(height) +
                                              " allows 1.." + std::to_string(max));
  }
}

template <class T>
Pyramid<T> gaussian_impl(const Grid<T, PlaneTag>& img, std::size_t levels) {
  check_levels(img.width(), img.height(), levels);
  Pyramid<T> pyr;
  pyr.reserve(levels);
  pyr.push_back(img);
  while (pyr.size() < levels) pyr.push_back(blur_and_decimate(pyr.back()));
  return pyr;
}

template <class T>
Pyramid<T> laplacian_impl(const Grid<T, PlaneTag>& img, std::size_t levels) {
  Pyramid<T> pyr = gaussian_impl(img, levels);
  for (std::size_t l = 0; l + 1 < pyr.size(); ++l) {
    const auto up = expand_impl(pyr[l + 1], pyr[l].width(), pyr[l].height());
    auto dst = pyr[l].values();
    const auto sub = up.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= sub[i];
  }
  return pyr;
}

template <class T>
Grid<T, PlaneTag> collapse_impl(const Pyramid<T>& lap) {
  if (lap.empty()) throw Error(ErrorCode::EmptyInput, "cannot collapse an empty pyramid");
  Grid<T, PlaneTag> img = lap.back();
  for (std::size_t l = lap.size() - 1; l-- > 0;) {
    Grid<T, PlaneTag> up = expand_impl(img, lap[l].width(), lap[l].height());
    auto dst = up.values();
    const auto band = lap[l].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += band[i];
    img = std::move(up);
  }
  return img;
}

double saturation(const Rgb& p) {
  const double mean = (p.r + p.g + p.b) / 3.0;
  const double dr = p.r - mean;
  const double dg = p.g - mean;
  const double db = p.b - mean;
  return std::sqrt((dr * dr + dg * dg + db * db) / 3.0);
}

double well_exposedness(const Rgb& p, double sigma) {
  const double denom = 2.0 * sigma * sigma;
  auto f = [denom](double v) { return std::exp(-(v - 0.5) * (v - 0.5) / denom); };
  return f(p.r) * f(p.g) * f(p.b);
}

}  // namespace

void FusionConfig::validate() const {
  if (exponent_contrast < 0 || exponent_saturation < 0 || exponent_wellexposed < 0) {
    throw Error(ErrorCode::InvalidArgument, "fusion exponents must be nonnegative");
  }
  if (!(wellexposed_sigma > 0)) throw Error(ErrorCode::InvalidArgument, "fusion sigma must be positive");
  if (pyramid_levels && *pyramid_levels < 1) {
    throw Error(ErrorCode::InvalidArgument, "pyramid needs at least one level");
  }
}

std::size_t auto_pyramid_levels(std::size_t width, std::size_t height) {
  const std::size_t m = std::min(width, height);
  if (m < 2) return 1;
  return static_cast<std::size_t>(std::bit_width(m) - 1);
}

WeightMapStack quality_weights(const ImageStack& stack, const FusionConfig& cfg) {
  cfg.validate();
  WeightMapStack weights(stack.size());
  parallel_for(stack.size(), [&](std::size_t i) {
    const RgbImage& img = stack[i];
    const Plane contrast = abs_laplacian(to_luminance(img));
    Plane w(img.width(), img.height());
    const auto px = img.values();
    const auto con = contrast.values();
    auto dst = w.values();
    for (std::size_t p = 0; p < dst.size(); ++p) {
      const double value = std::pow(con[p], cfg.exponent_contrast) *
                           std::pow(saturation(px[p]), cfg.exponent_saturation) *
                           std::pow(well_exposedness(px[p], cfg.wellexposed_sigma), cfg.exponent_wellexposed);
      dst[p] = std::max(value, kWeightFloor);
    }
    weights[i] = std::move(w);
  });
  return weights;
}

WeightMapStack normalize_weights(const WeightMapStack& w) {
  if (w.empty()) return {};
  const std::size_t n = w.size();
  for (const auto& plane : w) {
    if (!plane.same_dims(w.front())) throw Error(ErrorCode::DimensionMismatch, "weight planes differ in size");
  }
  const double uniform = 1.0 / static_cast<double>(n);
  const double threshold = static_cast<double>(n) * kWeightFloor * (1.0 + 1e-9);
  WeightMapStack out(n, Plane(w.front().width(), w.front().height()));
  const std::size_t pixels = w.front().size();
  for (std::size_t p = 0; p < pixels; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += w[i].values()[p];
    if (sum <= threshold) {
      for (std::size_t i = 0; i < n; ++i) out[i].values()[p] = uniform;
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i].values()[p] = w[i].values()[p] / sum;
    }
  }
  return out;
}

Pyramid<double> gaussian_pyramid(const Plane& img, std::size_t levels) { return gaussian_impl(img, levels); }
Pyramid<Rgb> gaussian_pyramid(const RgbPlane& img, std::size_t levels) { return gaussian_impl(img, levels); }
Pyramid<double> laplacian_pyramid(const Plane& img, std::size_t levels) { return laplacian_impl(img, levels); }
Pyramid<Rgb> laplacian_pyramid(const RgbPlane& img, std::size_t levels) { return laplacian_impl(img, levels); }
Plane collapse(const Pyramid<double>& lap) { return collapse_impl(lap); }
RgbPlane collapse(const Pyramid<Rgb>& lap) { return collapse_impl(lap); }
Plane expand(const Plane& coarse, std::size_t width, std::size_t height) {
  return expand_impl(coarse, width, height);
}
RgbPlane expand(const RgbPlane& coarse, std::size_t width, std::size_t height) {
  return expand_impl(coarse, width, height);
}

FusionResult fuse_stack_detailed(const ImageStack& stack, const FusionConfig& cfg) {
  cfg.validate();
  if (stack.size() == 1) return {stack[0], 0.0};

  const std::size_t w = stack.width();
  const std::size_t h = stack.height();
  const std::size_t levels = cfg.pyramid_levels.value_or(auto_pyramid_levels(w, h));
  check_levels(w, h, levels);

  const WeightMapStack weights = normalize_weights(quality_weights(stack, cfg));
  const std::size_t n = stack.size();

  // Weighted band pyramids per image, summed afterwards in index order so
  // the result does not depend on scheduling.
  std::vector<Pyramid<Rgb>> contributions(n);
  parallel_for(n, [&](std::size_t i) {
    Pyramid<Rgb> lap = laplacian_impl(retag<RgbPlane>(stack[i]), levels);
    const Pyramid<double> gw = gaussian_impl(weights[i], levels);
    for (std::size_t l = 0; l < levels; ++l) {
      auto band = lap[l].values();
      const auto wl = gw[l].values();
      for (std::size_t p = 0; p < band.size(); ++p) band[p] *= wl[p];
    }
    contributions[i] = std::move(lap);
  });

  Pyramid<Rgb> blended = std::move(contributions[0]);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t l = 0; l < levels; ++l) {
      auto dst = blended[l].values();
      const auto src = contributions[i][l].values();
      for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += src[p];
    }
  }

  const RgbPlane merged = collapse_impl(blended);
  FusionResult result{RgbImage(w, h), 0.0};
  auto dst = result.image.values();
  const auto src = merged.values();
  auto clamp_channel = [&result](double v) {
    result.overshoot = std::max({result.overshoot, v - 1.0, -v});
    return std::clamp(v, 0.0, 1.0);
  };
  for (std::size_t p = 0; p < dst.size(); ++p) {
    dst[p] = Rgb{clamp_channel(src[p].r), clamp_channel(src[p].g), clamp_channel(src[p].b)};
  }
  return result;
}

RgbImage fuse_stack(const ImageStack& stack, const FusionConfig& cfg) {
  return fuse_stack_detailed(stack, cfg).image;
}

}  // namespace hdrrt
