#pragma once

// Binary Netpbm I/O: P6 (RGB) in and out, P5 (gray) in, maxval 255 only.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pioucrypt/image.hpp"

namespace pioucrypt {

/// UnsupportedFormat for any magic other than P5/P6 or a maxval other than
/// 255; MalformedHeader for an unreadable header; IoError for a short payload.
RgbImage decode_netpbm(std::span<const std::uint8_t> bytes);

/// "P6\n<w> <h>\n255\n" followed by the interleaved payload.
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);

RgbImage read_image(const std::filesystem::path& path);
void write_image(const RgbImage& image, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);

}  // namespace pioucrypt
