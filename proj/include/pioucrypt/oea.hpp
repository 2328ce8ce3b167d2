#pragma once

// Odd/even attribute (OEA) cipher: splits a byte string by byte parity,
// offsets and prefix-sums each half with a master key, and frames the
// result with key-derived redundancy sections.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pioucrypt {

/// The secret key text and its weight (sum of byte values).
class OeaKey {
 public:
  /// EmptyKey for an empty string.
  explicit OeaKey(std::string bytes);

  const std::string& bytes() const { return bytes_; }
  std::int64_t weight() const { return weight_; }
  std::size_t redundancy_length() const { return static_cast<std::size_t>(weight_ % 10); }

 private:
  std::string bytes_;
  std::int64_t weight_;
};

/// Sum of the unsigned byte values. EmptyKey for an empty string.
std::int64_t key_weight(std::string_view key);

/// weight * length. OverflowGuard unless the product is below 2^62.
std::int64_t master_key(std::int64_t weight, std::size_t plaintext_length);

struct OeaCipher {
  std::string red1;               // '0'/'1', |red1| = weight mod 10
  std::string sc;                 // marker per plaintext byte: '1' odd, '0' even
  std::vector<std::int64_t> se;   // transformed even bytes
  std::vector<std::int64_t> so;   // transformed odd bytes
  std::vector<std::int64_t> red2; // key byte + master key

  friend bool operator==(const OeaCipher&, const OeaCipher&) = default;
};

OeaCipher oea_encrypt(std::string_view plaintext, const OeaKey& key);

/// MalformedCipher for inconsistent section lengths or markers, KeyMismatch
/// when the redundancy sections or byte parities disagree with `key`,
/// NonByteValue when a recovered value leaves [0, 255].
std::string oea_decrypt(const OeaCipher& cipher, const OeaKey& key);

/// "PIOU2 <|red1|> <|sc|> <|se|> <|so|> <|red2|>", then one line per
/// section in that order. LF endings; empty sections are empty lines.
std::string serialize_oea(const OeaCipher& cipher);
OeaCipher parse_oea(std::string_view text);

}  // namespace pioucrypt
