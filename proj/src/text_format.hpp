#pragma once

// Strict helpers shared by the PIOU1 / PIOUW / PIOU2 text grammars. Every
// grammar has exactly one spelling per value, so the parsers reject anything
// the serializers would not have produced.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pioucrypt/error.hpp"

namespace pioucrypt::detail {

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : rest_(text) {}

  bool done() const { return rest_.empty(); }
  std::size_t line() const { return line_; }

  std::string_view next(std::string_view what) {
    if (rest_.empty()) {
      throw ParseError(line_ + 1, "unexpected end of input, expected " + std::string(what));
    }
    ++line_;
    const auto end = rest_.find('\n');
    if (end == std::string_view::npos) {
      throw ParseError(line_, std::string(what) + " is not terminated by LF");
    }
    std::string_view out = rest_.substr(0, end);
    rest_.remove_prefix(end + 1);
    if (out.find('\r') != std::string_view::npos) {
      throw ParseError(line_, "carriage return in " + std::string(what));
    }
    return out;
  }

  void expect_end() const {
    if (!rest_.empty()) throw ParseError(line_ + 1, "trailing data after last section");
  }

 private:
  std::string_view rest_;
  std::size_t line_ = 0;
};

inline std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> fields;
  if (line.empty()) return fields;
  std::size_t start = 0;
  while (true) {
    const auto space = line.find(' ', start);
    const auto field = line.substr(start, space == std::string_view::npos ? line.npos : space - start);
    if (field.empty()) throw ParseError(line_no, "fields must be separated by single spaces");
    fields.push_back(field);
    if (space == std::string_view::npos) break;
    start = space + 1;
  }
  return fields;
}

inline std::uint64_t parse_unsigned(std::string_view token, std::size_t line_no, std::string_view what) {
  const bool canonical = !token.empty() && (token.size() == 1 || token.front() != '0') &&
                         token.find_first_not_of("0123456789") == std::string_view::npos;
  std::uint64_t value = 0;
  if (canonical) {
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc() && ptr == token.data() + token.size()) return value;
  }
  throw ParseError(line_no, "invalid " + std::string(what) + " '" + std::string(token) + "'");
}

inline std::int64_t parse_signed(std::string_view token, std::size_t line_no, std::string_view what) {
  const bool negative = !token.empty() && token.front() == '-';
  const std::string_view digits = negative ? token.substr(1) : token;
  const bool canonical = !digits.empty() && (digits.size() == 1 || digits.front() != '0') &&
                         digits.find_first_not_of("0123456789") == std::string_view::npos &&
                         !(negative && digits == "0");
  std::int64_t value = 0;
  if (canonical) {
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc() && ptr == token.data() + token.size()) return value;
  }
  throw ParseError(line_no, "invalid " + std::string(what) + " '" + std::string(token) + "'");
}

inline void append_int(std::string& out, std::int64_t value) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace pioucrypt::detail
