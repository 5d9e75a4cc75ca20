#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hdrrt {

/// Linear RGB triple. Channels are nominally in [0,1]; intermediate
/// pyramid arithmetic may leave that range.
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend bool operator==(const Rgb&, const Rgb&) = default;

  Rgb& operator+=(const Rgb& o) { r += o.r; g += o.g; b += o.b; return *this; }
  Rgb& operator-=(const Rgb& o) { r -= o.r; g -= o.g; b -= o.b; return *this; }
  Rgb& operator*=(double s) { r *= s; g *= s; b *= s; return *this; }

  friend Rgb operator+(Rgb a, const Rgb& b) { return a += b; }
  friend Rgb operator-(Rgb a, const Rgb& b) { return a -= b; }
  friend Rgb operator*(Rgb a, double s) { return a *= s; }
  friend Rgb operator*(double s, Rgb a) { return a *= s; }
};

/// Row-major 2-D grid. The Tag parameter keeps semantically different
/// scalar grids (luminance, energy, cumulative cost) from being mixed up.
template <class T, class Tag>
class Grid {
 public:
  using value_type = T;
  using tag_type = Tag;

  Grid() = default;
  Grid(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * width_, width_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * width_, width_}; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  bool same_dims(std::size_t w, std::size_t h) const noexcept { return width_ == w && height_ == h; }
  template <class U, class OtherTag>
  bool same_dims(const Grid<U, OtherTag>& o) const noexcept {
    return width_ == o.width() && height_ == o.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

struct RgbTag {};
struct LuminanceTag {};
struct EnergyTag {};
struct CumulativeTag {};
struct PlaneTag {};

using RgbImage = Grid<Rgb, RgbTag>;
using LuminanceImage = Grid<double, LuminanceTag>;
using EnergyMap = Grid<double, EnergyTag>;
using CumulativeEnergyMap = Grid<double, CumulativeTag>;
/// Untyped scalar plane used for weights and pyramid bands.
using Plane = Grid<double, PlaneTag>;

/// Reinterpret the values of one scalar grid kind as another.
template <class To, class T, class Tag>
To retag(const Grid<T, Tag>& src) {
  To out(src.width(), src.height());
  auto dst = out.values();
  auto in = src.values();
  for (std::size_t i = 0; i < in.size(); ++i) dst[i] = in[i];
  return out;
}

/// (r,c) -> (c,r). An involution.
template <class T, class Tag>
Grid<T, Tag> transpose(const Grid<T, Tag>& g) {
  Grid<T, Tag> out(g.height(), g.width());
  for (std::size_t r = 0; r < g.height(); ++r)
    for (std::size_t c = 0; c < g.width(); ++c) out(c, r) = g(r, c);
  return out;
}

}  // namespace hdrrt
