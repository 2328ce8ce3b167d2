#include "pioucrypt/oea.hpp"

#include <algorithm>
#include <array>

#include "pioucrypt/error.hpp"
#include "text_format.hpp"

namespace pioucrypt {

namespace {

constexpr std::int64_t kMasterKeyLimit = std::int64_t{1} << 62;

std::uint8_t byte_at(std::string_view s, std::size_t i) { return static_cast<std::uint8_t>(s[i]); }

// In place: subtract the master key from the first element, running prefix
// sums from index 1, then add `last_adjust` to the final element.
void forward_transform(std::vector<std::int64_t>& xs, std::int64_t master, std::int64_t last_adjust) {
  if (xs.empty()) return;
  xs.front() -= master;
  for (std::size_t i = 1; i < xs.size(); ++i) xs[i] += xs[i - 1];
  xs.back() += last_adjust;
}

// Parsed ciphers are untrusted, so this runs in wrapping unsigned
// arithmetic; out-of-range results are rejected by the byte check later.
void inverse_transform(std::vector<std::int64_t>& xs, std::int64_t master, std::int64_t last_adjust) {
  if (xs.empty()) return;
  auto wrap = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
  auto u = [](std::int64_t v) { return static_cast<std::uint64_t>(v); };
  xs.back() = wrap(u(xs.back()) - u(last_adjust));
  for (std::size_t i = xs.size() - 1; i >= 1; --i) xs[i] = wrap(u(xs[i]) - u(xs[i - 1]));
  xs.front() = wrap(u(xs.front()) + u(master));
}

std::string redundancy_bits(const OeaKey& key) {
  std::string bits(key.redundancy_length(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (byte_at(key.bytes(), i % key.bytes().size()) % 2 == 0) bits[i] = '1';
  }
  return bits;
}

std::vector<std::int64_t> redundancy_values(const OeaKey& key, std::int64_t master) {
  std::vector<std::int64_t> values(key.redundancy_length());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = byte_at(key.bytes(), i % key.bytes().size()) + master;
  }
  return values;
}

}  // namespace

std::int64_t key_weight(std::string_view key) {
  if (key.empty()) throw Error(ErrorCode::kEmptyKey, "OEA key must not be empty");
  std::int64_t weight = 0;
  for (std::size_t i = 0; i < key.size(); ++i) weight += byte_at(key, i);
  return weight;
}

OeaKey::OeaKey(std::string bytes) : bytes_(std::move(bytes)), weight_(key_weight(bytes_)) {}

std::int64_t master_key(std::int64_t weight, std::size_t plaintext_length) {
  if (plaintext_length != 0 &&
      static_cast<std::uint64_t>(weight) >= static_cast<std::uint64_t>(kMasterKeyLimit) / plaintext_length) {
    throw Error(ErrorCode::kOverflowGuard, "key weight times plaintext length must stay below 2^62");
  }
  return weight * static_cast<std::int64_t>(plaintext_length);
}

OeaCipher oea_encrypt(std::string_view plaintext, const OeaKey& key) {
  const std::int64_t master = master_key(key.weight(), plaintext.size());
  OeaCipher out;
  out.sc.reserve(plaintext.size());
  for (std::size_t i = 0; i < plaintext.size(); ++i) {
    const std::uint8_t c = byte_at(plaintext, i);
    if (c % 2 != 0) {
      out.so.push_back(c);
      out.sc += '1';
    } else {
      out.se.push_back(c);
      out.sc += '0';
    }
  }
  forward_transform(out.se, master, -master);
  forward_transform(out.so, master, +master);
  out.red1 = redundancy_bits(key);
  out.red2 = redundancy_values(key, master);
  return out;
}

std::string oea_decrypt(const OeaCipher& cipher, const OeaKey& key) {
  if (cipher.sc.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::kMalformedCipher, "marker string contains characters other than 0/1");
  }
  const auto odd = static_cast<std::size_t>(std::count(cipher.sc.begin(), cipher.sc.end(), '1'));
  if (odd != cipher.so.size() || cipher.sc.size() - odd != cipher.se.size()) {
    throw Error(ErrorCode::kMalformedCipher, "marker string does not match the SE/SO section lengths");
  }
  if (cipher.red1.size() != cipher.red2.size()) {
    throw Error(ErrorCode::kMalformedCipher, "redundancy sections differ in length");
  }

  const std::int64_t master = master_key(key.weight(), cipher.sc.size());
  if (cipher.red1 != redundancy_bits(key) || cipher.red2 != redundancy_values(key, master)) {
    throw Error(ErrorCode::kKeyMismatch, "redundancy sections do not match the key");
  }

  std::vector<std::int64_t> se = cipher.se;
  std::vector<std::int64_t> so = cipher.so;
  inverse_transform(se, master, -master);
  inverse_transform(so, master, +master);

  std::string plain(cipher.sc.size(), '\0');
  std::size_t next_even = 0;
  std::size_t next_odd = 0;
  for (std::size_t i = 0; i < cipher.sc.size(); ++i) {
    const bool is_odd = cipher.sc[i] == '1';
    const std::int64_t value = is_odd ? so[next_odd++] : se[next_even++];
    if (value < 0 || value > 255) {
      throw Error(ErrorCode::kNonByteValue, "recovered value " + std::to_string(value) + " at position " +
                                                std::to_string(i) + " is not a byte");
    }
    if ((value % 2 != 0) != is_odd) {
      throw Error(ErrorCode::kKeyMismatch, "recovered byte parity disagrees with the marker string");
    }
    plain[i] = static_cast<char>(static_cast<std::uint8_t>(value));
  }
  return plain;
}

std::string serialize_oea(const OeaCipher& c) {
  std::string out = "PIOU2";
  for (const std::size_t n : {c.red1.size(), c.sc.size(), c.se.size(), c.so.size(), c.red2.size()}) {
    out += ' ';
    detail::append_int(out, static_cast<std::int64_t>(n));
  }
  out += '\n';
  out += c.red1;
  out += '\n';
  out += c.sc;
  out += '\n';
  for (const auto* values : {&c.se, &c.so, &c.red2}) {
    for (std::size_t i = 0; i < values->size(); ++i) {
      if (i > 0) out += ' ';
      detail::append_int(out, (*values)[i]);
    }
    out += '\n';
  }
  return out;
}

OeaCipher parse_oea(std::string_view text) {
  detail::LineCursor cursor(text);
  const auto header = detail::split_fields(cursor.next("header"), cursor.line());
  if (header.size() != 6 || header[0] != "PIOU2") {
    throw ParseError(cursor.line(), "expected 'PIOU2 <red1> <sc> <se> <so> <red2>'");
  }
  std::array<std::size_t, 5> lengths{};
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    const std::uint64_t n = detail::parse_unsigned(header[k + 1], cursor.line(), "section length");
    if (n > text.size()) throw ParseError(cursor.line(), "section length exceeds the input size");
    lengths[k] = n;
  }

  auto read_bits = [&cursor](std::string_view name, std::size_t expected) {
    const std::string_view line = cursor.next("section " + std::string(name));
    if (line.size() != expected) {
      throw ParseError(cursor.line(), "section " + std::string(name) + ": expected " + std::to_string(expected) +
                                          " bits, found " + std::to_string(line.size()));
    }
    if (line.find_first_not_of("01") != std::string_view::npos) {
      throw ParseError(cursor.line(), "section " + std::string(name) + ": bits must be 0 or 1");
    }
    return std::string(line);
  };
  auto read_values = [&cursor](std::string_view name, std::size_t expected) {
    const auto fields = detail::split_fields(cursor.next("section " + std::string(name)), cursor.line());
    if (fields.size() != expected) {
      throw ParseError(cursor.line(), "section " + std::string(name) + ": expected " + std::to_string(expected) +
                                          " values, found " + std::to_string(fields.size()));
    }
    std::vector<std::int64_t> values;
    values.reserve(expected);
    for (const auto f : fields) values.push_back(detail::parse_signed(f, cursor.line(), "value in " + std::string(name)));
    return values;
  };

  OeaCipher c;
  c.red1 = read_bits("red1", lengths[0]);
  c.sc = read_bits("SC", lengths[1]);
  c.se = read_values("SE", lengths[2]);
  c.so = read_values("SO", lengths[3]);
  c.red2 = read_values("red2", lengths[4]);
  cursor.expect_end();
  if (lengths[1] != lengths[2] + lengths[3]) {
    throw ParseError(1, "SC length must equal SE length plus SO length");
  }
  return c;
}

}  // namespace pioucrypt
