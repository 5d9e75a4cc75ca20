#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hdrrt/grid.hpp"

namespace hdrrt {

/// N registered, equally sized LDR exposures of one static scene. Channel
/// values are normalized to [0,1]. Exposure times are not tracked.
class ImageStack {
 public:
  /// Empty labels default to "0", "1", ... Throws EmptyStack,
  /// DimensionMismatch, LengthMismatch, ImageTooSmall (under 2x2) or
  /// InvalidArgument (channel value outside [0,1]).
  explicit ImageStack(std::vector<RgbImage> images, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t width() const noexcept { return images_.front().width(); }
  std::size_t height() const noexcept { return images_.front().height(); }

  const RgbImage& operator[](std::size_t i) const { return images_[i]; }
  const std::vector<RgbImage>& images() const noexcept { return images_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<RgbImage> images_;
  std::vector<std::string> labels_;
};

/// Loads a stack from a directory (every .png/.jpg/.jpeg, ordered by
/// filename) or from a manifest file listing one path per line relative
/// to the manifest. Lines starting with '#' and blank lines are skipped.
ImageStack load_stack(const std::filesystem::path& source);

/// Decodes one 8-bit PNG or JPEG into [0,1] channels (v/255).
RgbImage load_image(const std::filesystem::path& path);

/// Rec. 601 luma: 0.299 R + 0.587 G + 0.114 B.
LuminanceImage to_luminance(const RgbImage& img);

/// round(v*255) with halves rounded up, clamped to [0,255].
unsigned char quantize_channel(double v) noexcept;

/// Writes an 8-bit RGB PNG without alpha.
void save_image(const RgbImage& img, const std::filesystem::path& path);
/// Writes an 8-bit single-channel PNG from values in [0,1].
void save_gray(const Plane& img, const std::filesystem::path& path);

}  // namespace hdrrt
