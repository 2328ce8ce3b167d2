#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pioucrypt/image.hpp"

namespace pioucrypt {

/// h(r_k) = n_k for k in [0, 255], per channel.
struct HistogramReport {
  std::size_t width = 0;
  std::size_t height = 0;
  std::array<std::array<std::uint64_t, 256>, 3> counts{};

  const std::array<std::uint64_t, 256>& channel(Channel c) const {
    return counts[static_cast<std::size_t>(c)];
  }
};

HistogramReport histogram(const RgbImage& image);

/// Header "channel,level,count" and 768 rows; channels are named
/// red, green, blue.
std::string histogram_csv(const HistogramReport& report);

std::string_view channel_name(Channel c);

}  // namespace pioucrypt
