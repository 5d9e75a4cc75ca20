#include <doctest.h>

#include <cmath>
#include <random>

#include "hdrrt/energy.hpp"
#include "hdrrt/errors.hpp"
#include "support/oracles.hpp"

using namespace hdrrt;
using namespace hdrrt::testing;

namespace {

LuminanceImage random_luminance(std::size_t w, std::size_t h, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LuminanceImage img(w, h);
  for (double& v : img.values()) v = unit(rng);
  return img;
}

EnergyMap random_energy(std::size_t w, std::size_t h, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, scale);
  EnergyMap e(w, h);
  for (double& v : e.values()) v = unit(rng);
  return e;
}

}  // namespace

TEST_CASE("gradient energy: constant and ramp images") {
  CHECK(gradient_energy(LuminanceImage(4, 3, 0.42)) == EnergyMap(4, 3, 0.0));

  LuminanceImage ramp(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) ramp(r, c) = static_cast<double>(c) * 0.1;
  const EnergyMap e = gradient_energy(ramp);
  for (double v : e.values()) CHECK(v == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("gradient energy matches the finite-difference oracle exactly") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const LuminanceImage img = random_luminance(5, 5, rng);
    CHECK(to_matrix(gradient_energy(img)) == gradient_oracle(to_matrix(img)));
  }
  const LuminanceImage wide = random_luminance(7, 2, rng);
  CHECK(to_matrix(gradient_energy(wide)) == gradient_oracle(to_matrix(wide)));
}

TEST_CASE("gradient energy rejects images under 2x2") {
  CHECK_THROWS_AS(gradient_energy(LuminanceImage(1, 5)), Error);
  CHECK_THROWS_AS(gradient_energy(LuminanceImage(5, 1)), Error);
}

TEST_CASE("gradient energy is invariant to a global offset") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    LuminanceImage img = random_luminance(6, 5, rng);
    for (double& v : img.values()) v *= 0.5;
    LuminanceImage shifted = img;
    for (double& v : shifted.values()) v += 0.3;
    const EnergyMap a = gradient_energy(img);
    const EnergyMap b = gradient_energy(shifted);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.values()[i] - b.values()[i]) < 1e-12);
  }
}

TEST_CASE("laplacian map") {
  CHECK(laplacian_map(LuminanceImage(3, 3, 0.7)) == EnergyMap(3, 3, 0.0));

  LuminanceImage dot(3, 3, 0.0);
  dot(1, 1) = 1.0;
  CHECK(laplacian_map(dot)(1, 1) == 4.0);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const LuminanceImage img = random_luminance(5, 5, rng);
    CHECK(max_abs_diff(to_matrix(laplacian_map(img)), laplacian_oracle(to_matrix(img))) < 1e-14);
  }
  CHECK_THROWS_AS(laplacian_map(LuminanceImage(2, 5)), Error);
}

TEST_CASE("average energy per pixel") {
  const EnergyMap e = from_matrix<EnergyMap>({{1, 2, 3}, {4, 1, 6}, {7, 8, 1}});
  CHECK(average_energy_per_pixel(e) == doctest::Approx(33.0 / 9.0));
  CHECK(average_energy_per_pixel(EnergyMap(4, 4, 0.0)) == 0.0);
  CHECK(average_energy_per_pixel(EnergyMap(4, 4, 2.5)) == 2.5);
}

TEST_CASE("weight vector invariants") {
  CHECK_NOTHROW(WeightVector({0.25, 0.75}));
  CHECK_THROWS_AS(WeightVector({0.5, 0.6}), Error);
  CHECK_THROWS_AS(WeightVector({-0.5, 1.5}), Error);
  CHECK_THROWS_AS(WeightVector({}), Error);
}

TEST_CASE("weighted aggregation") {
  const std::vector<EnergyMap> maps{EnergyMap(3, 2, 2.0), EnergyMap(3, 2, 4.0)};
  CHECK(aggregate_energy_weighted(maps, WeightVector({0.25, 0.75})) == EnergyMap(3, 2, 3.5));

  std::mt19937 rng(8);
  const std::vector<EnergyMap> three{random_energy(4, 4, rng), random_energy(4, 4, rng), random_energy(4, 4, rng)};
  CHECK(aggregate_energy_weighted(three, WeightVector({1.0, 0.0, 0.0})) == three[0]);

  CHECK_THROWS_AS(aggregate_energy_weighted(three, WeightVector({0.5, 0.5})), Error);
  const std::vector<EnergyMap> mixed{EnergyMap(3, 3), EnergyMap(3, 4)};
  CHECK_THROWS_AS(aggregate_energy_weighted(mixed, WeightVector({0.5, 0.5})), Error);
}

TEST_CASE("weights from average energy") {
  const std::vector<EnergyMap> maps{EnergyMap(2, 2, 2.0), EnergyMap(2, 2, 6.0)};
  const WeightVector w = weights_from_average_energy(maps);
  CHECK(w[0] == 0.25);
  CHECK(w[1] == 0.75);

  // Normalized averages, then combination, against direct evaluation.
  const EnergyMap combined = aggregate_energy_weighted(maps, w);
  CHECK(combined == EnergyMap(2, 2, 0.25 * 2.0 + 0.75 * 6.0));

  CHECK(weights_from_average_energy(std::vector<EnergyMap>{EnergyMap(3, 3, 5.0)})[0] == 1.0);

  const std::vector<EnergyMap> flat(4, EnergyMap(3, 3, 0.0));
  const WeightVector u = weights_from_average_energy(flat);
  for (std::size_t i = 0; i < 4; ++i) CHECK(u[i] == 0.25);
}

TEST_CASE("laplacian-weighted aggregation") {
  const std::vector<EnergyMap> e{EnergyMap(1, 1, 2.0), EnergyMap(1, 1, 4.0)};
  CHECK(aggregate_energy_laplacian(e, std::vector<EnergyMap>{EnergyMap(1, 1, 1.0), EnergyMap(1, 1, 3.0)})(0, 0) == 3.5);
  CHECK(aggregate_energy_laplacian(e, std::vector<EnergyMap>{EnergyMap(1, 1, 0.0), EnergyMap(1, 1, 0.0)})(0, 0) == 3.0);

  std::mt19937 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<EnergyMap> energies, laps;
    for (int i = 0; i < 3; ++i) {
      energies.push_back(random_energy(4, 4, rng));
      laps.push_back(random_energy(4, 4, rng, 4.0));
    }
    // A pixel with all-zero Laplacians exercises the uniform fallback.
    for (auto& l : laps) l(2, 1) = 0.0;
    const EnergyMap got = aggregate_energy_laplacian(energies, laps);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const double denom = laps[0](r, c) + laps[1](r, c) + laps[2](r, c);
        double expect = 0.0;
        for (int i = 0; i < 3; ++i) {
          const double weight = denom > 0 ? laps[i](r, c) / denom : 1.0 / 3.0;
          expect += weight * energies[i](r, c);
        }
        CHECK(got(r, c) == doctest::Approx(expect).epsilon(1e-14));
      }
    }
  }
  CHECK_THROWS_AS(aggregate_energy_laplacian(e, std::vector<EnergyMap>{EnergyMap(1, 1, 1.0)}), Error);
}

TEST_CASE("aggregation properties on random inputs") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<EnergyMap> energies;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) {
      energies.push_back(random_energy(5, 4, rng, 3.0));
      raw.push_back(unit(rng) + 1e-3);
    }
    double total = 0.0;
    for (double v : raw) total += v;
    for (double& v : raw) v /= total;
    const EnergyMap agg = aggregate_energy_weighted(energies, WeightVector(raw));
    for (std::size_t p = 0; p < agg.size(); ++p) {
      double lo = energies[0].values()[p], hi = lo;
      for (const auto& e : energies) {
        lo = std::min(lo, e.values()[p]);
        hi = std::max(hi, e.values()[p]);
      }
      CHECK(agg.values()[p] >= lo - 1e-12);
      CHECK(agg.values()[p] <= hi + 1e-12);
      CHECK(std::isfinite(agg.values()[p]));
    }

    // Identical Laplacians reduce to the plain mean.
    const EnergyMap lap = random_energy(5, 4, rng, 2.0);
    const std::vector<EnergyMap> same(n, lap);
    const EnergyMap mean_agg = aggregate_energy_laplacian(energies, same);
    for (std::size_t p = 0; p < mean_agg.size(); ++p) {
      if (lap.values()[p] <= 0) continue;
      double mean = 0.0;
      for (const auto& e : energies) mean += e.values()[p];
      mean /= static_cast<double>(n);
      CHECK(mean_agg.values()[p] == doctest::Approx(mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy outputs are nonnegative and finite") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const LuminanceImage img = random_luminance(6, 6, rng);
    const EnergyMap g = gradient_energy(img);
    const EnergyMap l = laplacian_map(img);
    for (double v : g.values()) CHECK((v >= 0 && std::isfinite(v)));
    for (double v : l.values()) CHECK((v >= 0 && std::isfinite(v)));
  }
}
