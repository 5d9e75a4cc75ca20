#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hdrrt/grid.hpp"
#include "hdrrt/stack_io.hpp"

namespace hdrrt {

/// Quality-measure exponents and pyramid depth for exposure fusion.
struct FusionConfig {
  double exponent_contrast = 1.0;
  double exponent_saturation = 1.0;
  double exponent_wellexposed = 1.0;
  double wellexposed_sigma = 0.2;
  /// Total number of pyramid levels including the full-resolution base.
  /// Empty selects floor(log2(min(width, height))).
  std::optional<std::size_t> pyramid_levels;

  /// Throws InvalidArgument on negative exponents, sigma <= 0 or levels < 1.
  void validate() const;
};

/// One weight plane per stack image.
using WeightMapStack = std::vector<Plane>;

inline constexpr double kWeightFloor = 1e-12;

/// contrast^ec * saturation^es * wellexposedness^ew per pixel, floored at
/// kWeightFloor. Not normalized.
WeightMapStack quality_weights(const ImageStack& stack, const FusionConfig& cfg);

/// Divides by the per-pixel sum across images; pixels whose sum does not
/// exceed N * kWeightFloor get uniform weights.
WeightMapStack normalize_weights(const WeightMapStack& w);

/// floor(log2(min(width, height))), at least 1.
std::size_t auto_pyramid_levels(std::size_t width, std::size_t height);

template <class T>
using Pyramid = std::vector<Grid<T, PlaneTag>>;

/// Level 0 is the input; each further level is a [1 4 6 4 1]/16 separable
/// blur with replicated borders followed by keeping every other sample
/// (ceil of half the size). Throws TooManyLevels if levels is zero or
/// exceeds auto_pyramid_levels.
Pyramid<double> gaussian_pyramid(const Plane& img, std::size_t levels);
Pyramid<Rgb> gaussian_pyramid(const Grid<Rgb, PlaneTag>& img, std::size_t levels);

/// Band-pass levels G_l - expand(G_{l+1}); the last level is the coarsest
/// Gaussian level.
Pyramid<double> laplacian_pyramid(const Plane& img, std::size_t levels);
Pyramid<Rgb> laplacian_pyramid(const Grid<Rgb, PlaneTag>& img, std::size_t levels);

/// Inverse of laplacian_pyramid.
Plane collapse(const Pyramid<double>& lap);
Grid<Rgb, PlaneTag> collapse(const Pyramid<Rgb>& lap);

/// Bilinear expansion of a decimated level back to width x height.
Plane expand(const Plane& coarse, std::size_t width, std::size_t height);
Grid<Rgb, PlaneTag> expand(const Grid<Rgb, PlaneTag>& coarse, std::size_t width, std::size_t height);

struct FusionResult {
  RgbImage image;
  /// Largest distance of any channel outside [0,1] before clamping.
  double overshoot = 0.0;
};

/// Exposure fusion by weighted Laplacian-pyramid blending. A single-image
/// stack is returned unchanged.
FusionResult fuse_stack_detailed(const ImageStack& stack, const FusionConfig& cfg);
RgbImage fuse_stack(const ImageStack& stack, const FusionConfig& cfg);

}  // namespace hdrrt
