#include "hdrrt/seam.hpp"

#include <limits>

namespace hdrrt {

void validate_seam(const Seam& s, std::size_t width, std::size_t height, bool require_connected) {
  if (s.columns.size() != height) {
    throw Error(ErrorCode::DimensionMismatch, "seam has " + std::to_string(s.columns.size()) +
                                                  " rows, image has " + std::to_string(height));
  }
  for (std::size_t r = 0; r < height; ++r) {
    if (s.columns[r] >= width) {
      throw Error(ErrorCode::DimensionMismatch, "seam column " + std::to_string(s.columns[r]) +
                                                    " out of range in row " + std::to_string(r));
    }
    if (require_connected && r > 0) {
      const std::size_t a = s.columns[r - 1];
      const std::size_t b = s.columns[r];
      if ((a > b ? a - b : b - a) > 1) {
        throw Error(ErrorCode::InvalidArgument, "seam is disconnected at row " + std::to_string(r));
      }
    }
  }
}

CumulativeEnergyMap cumulative_energy(const EnergyMap& e) {
  const std::size_t w = e.width();
  const std::size_t h = e.height();
  CumulativeEnergyMap m(w, h);
  if (e.empty()) return m;
  std::copy(e.row(0).begin(), e.row(0).end(), m.row(0).begin());
  for (std::size_t r = 1; r < h; ++r) {
    const auto prev = m.row(r - 1);
    const auto src = e.row(r);
    auto cur = m.row(r);
    for (std::size_t c = 0; c < w; ++c) {
      double best = prev[c];
      if (c > 0) best = std::min(best, prev[c - 1]);
      if (c + 1 < w) best = std::min(best, prev[c + 1]);
      cur[c] = src[c] + best;
    }
  }
  return m;
}

Seam backtrack_min_seam(const CumulativeEnergyMap& m, const EnergyMap& e) {
  if (!m.same_dims(e)) throw Error(ErrorCode::DimensionMismatch, "cumulative map and energy map differ in size");
  if (m.empty()) throw Error(ErrorCode::EmptyInput, "cannot find a seam in an empty map");
  const std::size_t w = m.width();
  const std::size_t h = m.height();
  Seam seam;
  seam.columns.resize(h);

  const auto bottom = m.row(h - 1);
  std::size_t col = static_cast<std::size_t>(std::min_element(bottom.begin(), bottom.end()) - bottom.begin());
  seam.columns[h - 1] = col;
  for (std::size_t r = h - 1; r > 0; --r) {
    const auto prev = m.row(r - 1);
    const std::size_t lo = col == 0 ? 0 : col - 1;
    const std::size_t hi = std::min(col + 1, w - 1);
    std::size_t best = lo;
    for (std::size_t c = lo + 1; c <= hi; ++c) {
      if (prev[c] < prev[best]) best = c;
    }
    col = best;
    seam.columns[r - 1] = col;
  }
  seam.energy = seam_energy_in(seam, e);
  return seam;
}

Seam find_min_seam(const EnergyMap& e) { return backtrack_min_seam(cumulative_energy(e), e); }

double seam_energy_in(const Seam& s, const EnergyMap& e) {
  validate_seam(s, e.width(), e.height(), false);
  double total = 0.0;
  for (std::size_t r = 0; r < e.height(); ++r) total += e(r, s.columns[r]);
  return total;
}

}  // namespace hdrrt
