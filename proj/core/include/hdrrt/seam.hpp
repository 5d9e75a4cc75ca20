#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdrrt/errors.hpp"
#include "hdrrt/grid.hpp"

namespace hdrrt {

enum class SeamOrientation { vertical, horizontal };

/// One pixel per row, stored in the coordinates of a vertical seam.
/// Horizontal seams are vertical seams of the transposed image and carry
/// orientation == horizontal only as a label.
struct Seam {
  SeamOrientation orientation = SeamOrientation::vertical;
  std::vector<std::size_t> columns;
  double energy = 0.0;
};

/// Throws DimensionMismatch unless the seam has one in-range column per
/// row. With require_connected, also rejects steps larger than one column.
void validate_seam(const Seam& s, std::size_t width, std::size_t height, bool require_connected = true);

/// M(0,c) = E(0,c); M(r,c) = E(r,c) + min over the up-to-three neighbours
/// of the previous row.
CumulativeEnergyMap cumulative_energy(const EnergyMap& e);

/// Minimal vertical seam. Ties at the bottom row and while walking upward
/// resolve to the leftmost column.
Seam backtrack_min_seam(const CumulativeEnergyMap& m, const EnergyMap& e);

/// cumulative_energy followed by backtrack_min_seam.
Seam find_min_seam(const EnergyMap& e);

/// Sum of e along the seam's coordinates (a replica seam when e belongs to
/// a different image than the one the seam was found in).
double seam_energy_in(const Seam& s, const EnergyMap& e);

/// Deletes the seam pixel from each row; pixels to its right move left.
template <class T, class Tag>
Grid<T, Tag> remove_seam(const Grid<T, Tag>& img, const Seam& s) {
  if (img.width() < 2) throw Error(ErrorCode::WidthTooSmall, "cannot remove a seam from width " + std::to_string(img.width()));
  validate_seam(s, img.width(), img.height(), false);
  Grid<T, Tag> out(img.width() - 1, img.height());
  for (std::size_t r = 0; r < img.height(); ++r) {
    const auto src = img.row(r);
    auto dst = out.row(r);
    const std::size_t cut = s.columns[r];
    std::copy(src.begin(), src.begin() + cut, dst.begin());
    std::copy(src.begin() + cut + 1, src.end(), dst.begin() + cut);
  }
  return out;
}

/// Inserts, right of the seam pixel of each row, the mean of that pixel and
/// its right neighbour (the pixel itself on the last column).
template <class T, class Tag>
Grid<T, Tag> insert_seam(const Grid<T, Tag>& img, const Seam& s) {
  validate_seam(s, img.width(), img.height(), false);
  Grid<T, Tag> out(img.width() + 1, img.height());
  for (std::size_t r = 0; r < img.height(); ++r) {
    const auto src = img.row(r);
    auto dst = out.row(r);
    const std::size_t at = s.columns[r];
    const std::size_t right = std::min(at + 1, img.width() - 1);
    std::copy(src.begin(), src.begin() + at + 1, dst.begin());
    dst[at + 1] = (src[at] + src[right]) * 0.5;
    std::copy(src.begin() + at + 1, src.end(), dst.begin() + at + 2);
  }
  return out;
}

/// Inserts several seams in one pass. Seams must be given in the
/// coordinates of img and be pairwise disjoint in every row; each new pixel
/// is the mean of its seam pixel and that pixel's original right neighbour.
template <class T, class Tag>
Grid<T, Tag> insert_seams(const Grid<T, Tag>& img, std::span<const Seam> seams) {
  for (const auto& s : seams) validate_seam(s, img.width(), img.height(), false);
  Grid<T, Tag> out(img.width() + seams.size(), img.height());
  std::vector<std::size_t> cols(seams.size());
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t k = 0; k < seams.size(); ++k) cols[k] = seams[k].columns[r];
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) {
      throw Error(ErrorCode::InvalidArgument, "insertion seams overlap in row " + std::to_string(r));
    }
    const auto src = img.row(r);
    auto dst = out.row(r);
    std::size_t o = 0;
    std::size_t next = 0;
    for (std::size_t c = 0; c < img.width(); ++c) {
      dst[o++] = src[c];
      if (next < cols.size() && cols[next] == c) {
        dst[o++] = (src[c] + src[std::min(c + 1, img.width() - 1)]) * 0.5;
        ++next;
      }
    }
  }
  return out;
}

}  // namespace hdrrt
