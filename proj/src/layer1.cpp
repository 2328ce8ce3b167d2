#include "pioucrypt/layer1.hpp"

#include <algorithm>
#include <numeric>

#include "pioucrypt/error.hpp"
#include "text_format.hpp"

namespace pioucrypt {

SubstitutionTable::SubstitutionTable() { std::iota(entries_.begin(), entries_.end(), 0); }

bool SubstitutionTable::is_bijective() const {
  std::array<bool, 256> seen{};
  for (const auto z : entries_) {
    if (seen[z]) return false;
    seen[z] = true;
  }
  return true;
}

SubstitutionTable SubstitutionTable::inverse() const {
  if (!is_bijective()) throw Error(ErrorCode::kNonBijectiveTable, "substitution table is not a permutation");
  Entries inv{};
  for (std::size_t v = 0; v < 256; ++v) inv[entries_[v]] = static_cast<std::uint8_t>(v);
  return SubstitutionTable(inv);
}

Layer1Key generate_layer1_key(Xorshift1024Star& rng, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::kInvalidArgument, "key dimensions must be at least 1x1");
  }
  Layer1Key key;
  key.width = width;
  key.height = height;

  auto draw_pairs = [&rng](SwapAxis axis, std::size_t count, std::vector<SwapRecord>& out) {
    const auto hi = static_cast<std::int64_t>(count) - 1;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto i = static_cast<std::size_t>(rng.next_in_range(0, hi));
      const auto j = static_cast<std::size_t>(rng.next_in_range(0, hi));
      out.push_back({axis, i, j});
    }
  };
  draw_pairs(SwapAxis::kRow, height, key.row_swaps);
  draw_pairs(SwapAxis::kColumn, width, key.col_swaps);

  SubstitutionTable::Entries entries{};
  std::array<bool, 256> taken{};
  for (int counter = 255; counter >= 0; --counter) {
    std::uint8_t z = 0;
    do {
      z = static_cast<std::uint8_t>(rng.next_in_range(0, 255));
    } while (taken[z]);
    taken[z] = true;
    entries[static_cast<std::size_t>(counter)] = z;
  }
  key.lut = SubstitutionTable(entries);
  return key;
}

Plane apply_swaps(Plane plane, std::span<const SwapRecord> records) {
  for (const auto& r : records) {
    const std::size_t limit = r.axis == SwapAxis::kRow ? plane.height : plane.width;
    if (r.i >= limit || r.j >= limit) {
      throw Error(ErrorCode::kIndexOutOfRange, "swap record (" + std::to_string(r.i) + ", " +
                                                   std::to_string(r.j) + ") exceeds dimension " +
                                                   std::to_string(limit));
    }
    if (r.i == r.j) continue;
    if (r.axis == SwapAxis::kRow) {
      auto row_i = plane.data.begin() + static_cast<std::ptrdiff_t>(r.i * plane.width);
      auto row_j = plane.data.begin() + static_cast<std::ptrdiff_t>(r.j * plane.width);
      std::swap_ranges(row_i, row_i + static_cast<std::ptrdiff_t>(plane.width), row_j);
    } else {
      for (std::size_t row = 0; row < plane.height; ++row) std::swap(plane.at(row, r.i), plane.at(row, r.j));
    }
  }
  return plane;
}

RgbImage apply_lut(const RgbImage& image, const SubstitutionTable& lut) {
  if (!lut.is_bijective()) throw Error(ErrorCode::kNonBijectiveTable, "substitution table is not a permutation");
  RgbImage out = image;
  for (auto& plane : out.planes()) {
    for (auto& px : plane.data) px = lut[px];
  }
  return out;
}

Layer1Result encrypt_layer1(const RgbImage& image, Xorshift1024Star& rng) {
  Layer1Key key = generate_layer1_key(rng, image.width(), image.height());
  RgbImage shuffled = image;
  for (auto& plane : shuffled.planes()) {
    plane = apply_swaps(std::move(plane), key.row_swaps);
    plane = apply_swaps(std::move(plane), key.col_swaps);
  }
  RgbImage cipher = apply_lut(shuffled, key.lut);
  return {std::move(cipher), std::move(key)};
}

RgbImage decrypt_layer1(const RgbImage& cipher, const Layer1Key& key) {
  if (key.width != cipher.width() || key.height != cipher.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "key is for " + std::to_string(key.width) + "x" + std::to_string(key.height) +
                    ", cipher image is " + std::to_string(cipher.width()) + "x" +
                    std::to_string(cipher.height()));
  }
  if (key.row_swaps.size() != key.height || key.col_swaps.size() != key.width) {
    throw Error(ErrorCode::kDimensionMismatch, "swap schedule length does not match key dimensions");
  }
  RgbImage plain = apply_lut(cipher, key.lut.inverse());
  const std::vector<SwapRecord> cols(key.col_swaps.rbegin(), key.col_swaps.rend());
  const std::vector<SwapRecord> rows(key.row_swaps.rbegin(), key.row_swaps.rend());
  for (auto& plane : plain.planes()) {
    plane = apply_swaps(std::move(plane), cols);
    plane = apply_swaps(std::move(plane), rows);
  }
  return plain;
}

std::string serialize_layer1_key(const Layer1Key& key) {
  std::string out;
  out.reserve(16 + 16 * (key.width + key.height) + 256 * 10);
  auto line = [&out](std::string_view tag, std::uint64_t a, std::uint64_t b) {
    out += tag;
    out += ' ';
    detail::append_int(out, static_cast<std::int64_t>(a));
    out += ' ';
    detail::append_int(out, static_cast<std::int64_t>(b));
    out += '\n';
  };
  line("PIOU1", key.width, key.height);
  for (const auto& r : key.row_swaps) line("R", r.i, r.j);
  for (const auto& r : key.col_swaps) line("C", r.i, r.j);
  for (int v = 255; v >= 0; --v) line("L", static_cast<std::uint64_t>(v), key.lut[static_cast<std::uint8_t>(v)]);
  return out;
}

namespace {

struct Triple {
  std::uint64_t a;
  std::uint64_t b;
};

Triple parse_tagged(detail::LineCursor& cursor, std::string_view tag, std::string_view what) {
  const std::string_view line = cursor.next(what);
  const auto fields = detail::split_fields(line, cursor.line());
  if (fields.size() != 3 || fields[0] != tag) {
    throw ParseError(cursor.line(), "expected '" + std::string(tag) + " <a> <b>' for " + std::string(what));
  }
  return {detail::parse_unsigned(fields[1], cursor.line(), "integer"),
          detail::parse_unsigned(fields[2], cursor.line(), "integer")};
}

}  // namespace

Layer1Key parse_layer1_key(std::string_view text) {
  detail::LineCursor cursor(text);
  const Triple header = parse_tagged(cursor, "PIOU1", "header");
  if (header.a == 0 || header.b == 0) throw ParseError(cursor.line(), "dimensions must be at least 1");
  // Cap dimensions at something the remaining input could possibly describe.
  if (header.a > text.size() || header.b > text.size()) {
    throw ParseError(cursor.line(), "dimensions exceed the size of the key file");
  }
  Layer1Key key;
  key.width = header.a;
  key.height = header.b;

  auto read_swaps = [&cursor](std::string_view tag, SwapAxis axis, std::size_t count, std::size_t limit,
                              std::vector<SwapRecord>& out) {
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const Triple t = parse_tagged(cursor, tag, tag == "R" ? "row swap" : "column swap");
      if (t.a >= limit || t.b >= limit) throw ParseError(cursor.line(), "swap index out of range");
      out.push_back({axis, t.a, t.b});
    }
  };
  read_swaps("R", SwapAxis::kRow, key.height, key.height, key.row_swaps);
  read_swaps("C", SwapAxis::kColumn, key.width, key.width, key.col_swaps);

  SubstitutionTable::Entries entries{};
  for (int v = 255; v >= 0; --v) {
    const Triple t = parse_tagged(cursor, "L", "substitution entry");
    if (t.a != static_cast<std::uint64_t>(v)) {
      throw ParseError(cursor.line(), "substitution entries must run from 255 down to 0");
    }
    if (t.b > 255) throw ParseError(cursor.line(), "substitution value exceeds 255");
    entries[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(t.b);
  }
  key.lut = SubstitutionTable(entries);
  if (!key.lut.is_bijective()) throw ParseError(cursor.line(), "substitution table is not a permutation");
  cursor.expect_end();
  return key;
}

}  // namespace pioucrypt
