#include "hdrrt/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hdrrt/errors.hpp"
#include "hdrrt/stack_io.hpp"

namespace hdrrt {
namespace {

void check_same_dims(std::span<const EnergyMap> maps, const char* what) {
  for (const auto& m : maps) {
    if (!m.same_dims(maps.front())) {
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": energy maps differ in size");
    }
  }
}

void check_min_size(const LuminanceImage& img, std::size_t min, const char* what) {
  if (img.width() < min || img.height() < min) {
    throw Error(ErrorCode::ImageTooSmall, std::string(what) + " needs at least " +
                                              std::to_string(min) + "x" + std::to_string(min) +
                                              " pixels, got " + std::to_string(img.width()) + "x" +
                                              std::to_string(img.height()));
  }
}

}  // namespace

WeightVector::WeightVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw Error(ErrorCode::InvalidArgument, "weight vector is empty");
  double sum = 0.0;
  for (double a : alphas_) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be finite and nonnegative");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "weights sum to " + std::to_string(sum) + ", not 1");
  }
}

EnergyMap gradient_energy(const LuminanceImage& img) {
  check_min_size(img, 2, "gradient_energy");
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  EnergyMap out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      double dx;
      if (c == 0) dx = img(r, 1) - img(r, 0);
      else if (c == w - 1) dx = img(r, c) - img(r, c - 1);
      else dx = (img(r, c + 1) - img(r, c - 1)) * 0.5;

      double dy;
      if (r == 0) dy = img(1, c) - img(0, c);
      else if (r == h - 1) dy = img(r, c) - img(r - 1, c);
      else dy = (img(r + 1, c) - img(r - 1, c)) * 0.5;

      out(r, c) = std::abs(dx) + std::abs(dy);
    }
  }
  return out;
}

Plane abs_laplacian(const LuminanceImage& img) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  Plane out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t up = r == 0 ? 0 : r - 1;
    const std::size_t down = r + 1 == h ? r : r + 1;
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t left = c == 0 ? 0 : c - 1;
      const std::size_t right = c + 1 == w ? c : c + 1;
      const double lap =
          img(up, c) + img(down, c) + img(r, left) + img(r, right) - 4.0 * img(r, c);
      out(r, c) = std::abs(lap);
    }
  }
  return out;
}

EnergyMap laplacian_map(const LuminanceImage& img) {
  check_min_size(img, 3, "laplacian_map");
  return retag<EnergyMap>(abs_laplacian(img));
}

EnergyMap image_energy(const RgbImage& img) { return gradient_energy(to_luminance(img)); }

double average_energy_per_pixel(const EnergyMap& e) {
  if (e.empty()) throw Error(ErrorCode::EmptyInput, "average_energy_per_pixel of an empty map");
  const auto v = e.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

EnergyMap aggregate_energy_weighted(std::span<const EnergyMap> energies, const WeightVector& alphas) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energy maps to aggregate");
  if (alphas.size() != energies.size()) {
    throw Error(ErrorCode::LengthMismatch, "weight count differs from energy map count");
  }
  check_same_dims(energies, "aggregate_energy_weighted");
  EnergyMap out(energies.front().width(), energies.front().height());
  auto dst = out.values();
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const auto src = energies[i].values();
    const double a = alphas[i];
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += a * src[p];
  }
  return out;
}

WeightVector weights_from_average_energy(std::span<const EnergyMap> energies) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energy maps to weight");
  const std::size_t n = energies.size();
  std::vector<double> alphas(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    alphas[i] = average_energy_per_pixel(energies[i]);
    total += alphas[i];
  }
  if (total <= 0.0) return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  for (double& a : alphas) a /= total;
  return WeightVector(std::move(alphas));
}

EnergyMap aggregate_energy_laplacian(std::span<const EnergyMap> energies,
                                     std::span<const EnergyMap> laplacians) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energy maps to aggregate");
  if (laplacians.size() != energies.size()) {
    throw Error(ErrorCode::LengthMismatch, "laplacian count differs from energy map count");
  }
  check_same_dims(energies, "aggregate_energy_laplacian");
  check_same_dims(laplacians, "aggregate_energy_laplacian");
  if (!laplacians.front().same_dims(energies.front())) {
    throw Error(ErrorCode::DimensionMismatch, "laplacian and energy maps differ in size");
  }

  const std::size_t n = energies.size();
  const double uniform = 1.0 / static_cast<double>(n);
  EnergyMap out(energies.front().width(), energies.front().height());
  auto dst = out.values();
  for (std::size_t p = 0; p < dst.size(); ++p) {
    double lap_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) lap_sum += laplacians[i].values()[p];
    double acc = 0.0;
    if (lap_sum > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        acc += laplacians[i].values()[p] / lap_sum * energies[i].values()[p];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) acc += uniform * energies[i].values()[p];
    }
    dst[p] = acc;
  }
  return out;
}

}  // namespace hdrrt
