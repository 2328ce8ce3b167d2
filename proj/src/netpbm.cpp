#include "pioucrypt/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string_view>

#include "pioucrypt/error.hpp"

namespace pioucrypt {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one decimal field.
  std::uint64_t field(const char* what) {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      if (value > (std::numeric_limits<std::uint32_t>::max() - 9) / 10) {
        throw Error(ErrorCode::kMalformedHeader, std::string(what) + " is too large");
      }
      value = value * 10 + (bytes_[pos_++] - '0');
      ++digits;
    }
    if (digits == 0) throw Error(ErrorCode::kMalformedHeader, std::string("missing ") + what);
    return value;
  }

  // Exactly one whitespace byte separates the header from the payload.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader, "header must end with a single whitespace byte");
    }
    return pos_ + 1;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

RgbImage decode_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorCode::kUnsupportedFormat, "only binary PPM (P6) and PGM (P5) are supported");
  }
  const bool rgb = bytes[1] == '6';
  HeaderReader header(bytes);
  const std::uint64_t width = header.field("width");
  const std::uint64_t height = header.field("height");
  const std::uint64_t maxval = header.field("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::kMalformedHeader, "image dimensions must be positive");
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedFormat, "maxval " + std::to_string(maxval) + " is not 255");
  }
  const std::size_t offset = header.payload_offset();
  const std::uint64_t available = bytes.size() - offset;
  const std::uint64_t channels = rgb ? 3 : 1;
  if (width > available || height > available / width || width * height > available / channels) {
    throw Error(ErrorCode::kIoError, "pixel payload is truncated");
  }
  const std::uint64_t payload = width * height * channels;
  if (available < payload) {
    throw Error(ErrorCode::kIoError, "pixel payload is truncated");
  }
  const auto data = bytes.subspan(offset, payload);
  return rgb ? RgbImage::from_interleaved(width, height, data) : RgbImage::from_gray(width, height, data);
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto payload = image.interleaved();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading " + path.string());
  return bytes;
}

std::string read_file_text(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

RgbImage read_image(const std::filesystem::path& path) { return decode_netpbm(read_file_bytes(path)); }

void write_image(const RgbImage& image, const std::filesystem::path& path) {
  const auto bytes = encode_ppm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace pioucrypt
