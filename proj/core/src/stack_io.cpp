#include "hdrrt/stack_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include "hdrrt/errors.hpp"
#include "hdrrt/parallel.hpp"

namespace fs = std::filesystem;

namespace hdrrt {
namespace {

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

bool is_png(const fs::path& p) { return lower_extension(p) == ".png"; }
bool is_jpeg(const fs::path& p) {
  const auto ext = lower_extension(p);
  return ext == ".jpg" || ext == ".jpeg";
}

RgbImage from_bytes(const unsigned char* bytes, std::size_t width, std::size_t height) {
  RgbImage img(width, height);
  auto px = img.values();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = Rgb{bytes[3 * i] / 255.0, bytes[3 * i + 1] / 255.0, bytes[3 * i + 2] / 255.0};
  }
  return img;
}

RgbImage decode_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::DecodeError, path.string() + ": " + msg);
  }
  return from_bytes(buffer.data(), image.width, image.height);
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// No C++ objects with nontrivial destructors may be created between
// setjmp and the last libjpeg call.
RgbImage decode_jpeg(const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorCode::DecodeError, path.string() + ": cannot open");

  jpeg_decompress_struct cinfo{};
  JpegErrorManager jerr{};
  cinfo.err = jpeg_std_error(&jerr.base);
  jerr.base.error_exit = jpeg_error_exit;
  std::vector<unsigned char> buffer;
  std::size_t width = 0;
  std::size_t height = 0;

  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::DecodeError, path.string() + ": " + jerr.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = cinfo.output_width;
  height = cinfo.output_height;
  buffer.resize(width * height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = buffer.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_bytes(buffer.data(), width, height);
}

std::vector<fs::path> list_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (is_png(entry.path()) || is_jpeg(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

std::vector<fs::path> read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::IoError, "cannot read manifest " + manifest.string());
  std::vector<fs::path> files;
  const fs::path base = manifest.parent_path();
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    files.push_back(base / line.substr(first, last - first + 1));
  }
  return files;
}

void write_png(const fs::path& path, const std::vector<unsigned char>& bytes, std::size_t width,
               std::size_t height, png_uint_32 format) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, path.string() + ": " + msg);
  }
}

}  // namespace

ImageStack::ImageStack(std::vector<RgbImage> images, std::vector<std::string> labels)
    : images_(std::move(images)), labels_(std::move(labels)) {
  if (images_.empty()) throw Error(ErrorCode::EmptyStack, "stack has no images");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < images_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != images_.size()) {
    throw Error(ErrorCode::LengthMismatch, "label count differs from image count");
  }
  const auto& first = images_.front();
  if (first.width() < 2 || first.height() < 2) {
    throw Error(ErrorCode::ImageTooSmall, "images must be at least 2x2 pixels");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto& img = images_[i];
    if (!img.same_dims(first)) {
      throw Error(ErrorCode::DimensionMismatch,
                  labels_[i] + " is " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()) + ", expected " +
                      std::to_string(first.width()) + "x" + std::to_string(first.height()));
    }
    for (const Rgb& p : img.values()) {
      for (double v : {p.r, p.g, p.b}) {
        if (!(v >= 0.0 && v <= 1.0)) {
          throw Error(ErrorCode::InvalidArgument, labels_[i] + " has a channel outside [0,1]");
        }
      }
    }
  }
}

RgbImage load_image(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::DecodeError, path.string() + ": not a file");
  if (is_png(path)) return decode_png(path);
  if (is_jpeg(path)) return decode_jpeg(path);
  throw Error(ErrorCode::DecodeError, path.string() + ": unsupported extension");
}

ImageStack load_stack(const fs::path& source) {
  if (!fs::exists(source)) throw Error(ErrorCode::IoError, source.string() + " does not exist");
  const std::vector<fs::path> files =
      fs::is_directory(source) ? list_directory(source) : read_manifest(source);
  if (files.empty()) throw Error(ErrorCode::EmptyStack, "no images found in " + source.string());

  std::vector<RgbImage> images(files.size());
  parallel_for(files.size(), [&](std::size_t i) { images[i] = load_image(files[i]); });

  std::vector<std::string> labels;
  labels.reserve(files.size());
  for (const auto& f : files) labels.push_back(f.filename().string());
  return ImageStack(std::move(images), std::move(labels));
}

LuminanceImage to_luminance(const RgbImage& img) {
  LuminanceImage out(img.width(), img.height());
  auto src = img.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = 0.299 * src[i].r + 0.587 * src[i].g + 0.114 * src[i].b;
  }
  return out;
}

unsigned char quantize_channel(double v) noexcept {
  const double scaled = std::floor(v * 255.0 + 0.5);
  return static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
}

void save_image(const RgbImage& img, const fs::path& path) {
  std::vector<unsigned char> bytes;
  bytes.reserve(img.size() * 3);
  for (const Rgb& p : img.values()) {
    bytes.push_back(quantize_channel(p.r));
    bytes.push_back(quantize_channel(p.g));
    bytes.push_back(quantize_channel(p.b));
  }
  write_png(path, bytes, img.width(), img.height(), PNG_FORMAT_RGB);
}

void save_gray(const Plane& img, const fs::path& path) {
  std::vector<unsigned char> bytes;
  bytes.reserve(img.size());
  for (double v : img.values()) bytes.push_back(quantize_channel(v));
  write_png(path, bytes, img.width(), img.height(), PNG_FORMAT_GRAY);
}

}  // namespace hdrrt
