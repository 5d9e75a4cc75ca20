#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdrrt/grid.hpp"
#include "hdrrt/stack_io.hpp"

namespace hdrrt::testing {

/// Per-channel scene radiance, unbounded above.
using RadianceMap = Grid<Rgb, PlaneTag>;

/// Seeded HDR scene: smooth mid-tone background, a very bright window with
/// mullions and stripes, a deep shadow with fine texture, and a few mid-tone
/// disks with random tints.
RadianceMap make_radiance(std::size_t width, std::size_t height, std::uint32_t seed);

/// clip(radiance * t, 0, 1)^(1/2.2) per exposure t, optionally quantized to
/// the 8-bit grid.
ImageStack bracket(const RadianceMap& radiance, std::span<const double> exposures, bool quantize = true);

inline constexpr double kDefaultExposures[3] = {1.0 / 16.0, 1.0, 16.0};

ImageStack make_bracketed_scene(std::size_t width, std::size_t height, std::uint32_t seed);

/// Uniform random stack with values on the 8-bit grid.
ImageStack random_stack(std::size_t n, std::size_t width, std::size_t height, std::uint32_t seed);

}  // namespace hdrrt::testing
