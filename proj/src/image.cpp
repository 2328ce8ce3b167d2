#include "pioucrypt/image.hpp"

#include <algorithm>

#include "pioucrypt/error.hpp"

namespace pioucrypt {

RgbImage::RgbImage(std::size_t width, std::size_t height) : width_(width), height_(height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be at least 1x1");
  }
  for (auto& p : planes_) p = Plane(width, height);
}

RgbImage RgbImage::from_interleaved(std::size_t width, std::size_t height,
                                    std::span<const std::uint8_t> rgb) {
  RgbImage image(width, height);
  if (rgb.size() != width * height * 3) {
    throw Error(ErrorCode::kDimensionMismatch, "interleaved buffer does not match dimensions");
  }
  for (std::size_t i = 0; i < width * height; ++i) {
    for (std::size_t c = 0; c < 3; ++c) image.planes_[c].data[i] = rgb[3 * i + c];
  }
  return image;
}

RgbImage RgbImage::from_gray(std::size_t width, std::size_t height,
                             std::span<const std::uint8_t> gray) {
  RgbImage image(width, height);
  if (gray.size() != width * height) {
    throw Error(ErrorCode::kDimensionMismatch, "gray buffer does not match dimensions");
  }
  for (auto& p : image.planes_) std::copy(gray.begin(), gray.end(), p.data.begin());
  return image;
}

std::vector<std::uint8_t> RgbImage::interleaved() const {
  std::vector<std::uint8_t> out(width_ * height_ * 3);
  for (std::size_t i = 0; i < width_ * height_; ++i) {
    for (std::size_t c = 0; c < 3; ++c) out[3 * i + c] = planes_[c].data[i];
  }
  return out;
}

}  // namespace pioucrypt
