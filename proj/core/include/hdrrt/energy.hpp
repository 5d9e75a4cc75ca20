#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hdrrt/grid.hpp"

namespace hdrrt {

/// Convex weights over the N images of a stack.
class WeightVector {
 public:
  /// Throws InvalidArgument unless every weight is >= 0 and they sum to 1
  /// within 1e-9.
  explicit WeightVector(std::vector<double> alphas);

  std::size_t size() const noexcept { return alphas_.size(); }
  double operator[](std::size_t i) const { return alphas_[i]; }
  const std::vector<double>& values() const noexcept { return alphas_; }

 private:
  std::vector<double> alphas_;
};

/// |dI/dx| + |dI/dy| with half-weight central differences in the interior
/// and one-sided differences on the border. Requires width, height >= 2.
EnergyMap gradient_energy(const LuminanceImage& img);

/// |4-neighbour Laplacian| with replicated borders. Requires width,
/// height >= 3.
EnergyMap laplacian_map(const LuminanceImage& img);

/// Same stencil as laplacian_map without the size precondition; used as
/// the contrast measure in exposure fusion, where carved images may be
/// narrower than three pixels.
Plane abs_laplacian(const LuminanceImage& img);

/// Gradient energy of the Rec. 601 luminance of an RGB image.
EnergyMap image_energy(const RgbImage& img);

double average_energy_per_pixel(const EnergyMap& e);

/// Per-pixel sum of alpha_i * E_i.
EnergyMap aggregate_energy_weighted(std::span<const EnergyMap> energies, const WeightVector& alphas);

/// alpha_i proportional to the average energy per pixel of E_i, normalized
/// to sum 1. A stack whose averages are all zero gets uniform weights.
WeightVector weights_from_average_energy(std::span<const EnergyMap> energies);

/// Per-pixel sum of (L_i / sum_j L_j) * E_i. Pixels where every L_i is
/// zero use uniform weights 1/N.
EnergyMap aggregate_energy_laplacian(std::span<const EnergyMap> energies,
                                     std::span<const EnergyMap> laplacians);

}  // namespace hdrrt
