#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pioucrypt {

/// One 8-bit channel, height x width, row-major.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> data;

  Plane() = default;
  Plane(std::size_t w, std::size_t h, std::uint8_t fill = 0) : width(w), height(h), data(w * h, fill) {}

  std::uint8_t& at(std::size_t row, std::size_t col) { return data[row * width + col]; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return data[row * width + col]; }

  friend bool operator==(const Plane&, const Plane&) = default;
};

enum class Channel : std::size_t { kRed = 0, kGreen = 1, kBlue = 2 };

inline constexpr std::array<Channel, 3> kChannels = {Channel::kRed, Channel::kGreen, Channel::kBlue};

/// Three equally sized planes. Width and height are at least 1.
class RgbImage {
 public:
  /// InvalidArgument for a zero dimension.
  RgbImage(std::size_t width, std::size_t height);

  /// From packed R,G,B triples in row-major pixel order (the PPM payload).
  static RgbImage from_interleaved(std::size_t width, std::size_t height,
                                   std::span<const std::uint8_t> rgb);
  /// Grayscale promotion: every plane receives a copy of `gray`.
  static RgbImage from_gray(std::size_t width, std::size_t height,
                            std::span<const std::uint8_t> gray);

  std::vector<std::uint8_t> interleaved() const;

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  Plane& plane(Channel c) { return planes_[static_cast<std::size_t>(c)]; }
  const Plane& plane(Channel c) const { return planes_[static_cast<std::size_t>(c)]; }
  std::array<Plane, 3>& planes() { return planes_; }
  const std::array<Plane, 3>& planes() const { return planes_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::array<Plane, 3> planes_;
};

}  // namespace pioucrypt
