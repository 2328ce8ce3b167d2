#pragma once

// First security layer: PRNG-driven row/column swaps applied to every
// channel, followed by one bijective 256-entry substitution over all pixels.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pioucrypt/image.hpp"
#include "pioucrypt/prng.hpp"

namespace pioucrypt {

enum class SwapAxis { kRow, kColumn };

struct SwapRecord {
  SwapAxis axis = SwapAxis::kRow;
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const SwapRecord&, const SwapRecord&) = default;
};

/// Entry v is the cipher value for plain value v.
class SubstitutionTable {
 public:
  using Entries = std::array<std::uint8_t, 256>;

  SubstitutionTable();  // identity
  explicit SubstitutionTable(const Entries& entries) : entries_(entries) {}

  std::uint8_t operator[](std::uint8_t plain) const { return entries_[plain]; }
  const Entries& entries() const { return entries_; }

  bool is_bijective() const;
  /// NonBijectiveTable if the entries are not a permutation.
  SubstitutionTable inverse() const;

  friend bool operator==(const SubstitutionTable&, const SubstitutionTable&) = default;

 private:
  Entries entries_;
};

struct Layer1Key {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<SwapRecord> row_swaps;  // exactly `height` records
  std::vector<SwapRecord> col_swaps;  // exactly `width` records
  SubstitutionTable lut;

  friend bool operator==(const Layer1Key&, const Layer1Key&) = default;
};

/// Draw order is part of the key contract: h row pairs (i then j, each in
/// [0, h-1]), then w column pairs in [0, w-1], then one substitution value
/// per counter 255 down to 0, redrawn while already taken.
Layer1Key generate_layer1_key(Xorshift1024Star& rng, std::size_t width, std::size_t height);

/// Applies records in list order. IndexOutOfRange if a record does not fit.
Plane apply_swaps(Plane plane, std::span<const SwapRecord> records);

/// Maps every pixel of every channel through the table in a single pass
/// keyed on the original value. NonBijectiveTable if `lut` is not a permutation.
RgbImage apply_lut(const RgbImage& image, const SubstitutionTable& lut);

struct Layer1Result {
  RgbImage cipher;
  Layer1Key key;
};

Layer1Result encrypt_layer1(const RgbImage& image, Xorshift1024Star& rng);

/// Inverse substitution, then column records reversed, then row records
/// reversed. DimensionMismatch if the key was made for another size.
RgbImage decrypt_layer1(const RgbImage& cipher, const Layer1Key& key);

/// Layer_1-Keys text: "PIOU1 <w> <h>", h "R i j" lines, w "C i j" lines,
/// 256 "L v z" lines with v from 255 down to 0. LF endings.
std::string serialize_layer1_key(const Layer1Key& key);
Layer1Key parse_layer1_key(std::string_view text);

}  // namespace pioucrypt
