#include "pioucrypt/prng.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "pioucrypt/error.hpp"

namespace pioucrypt {

__extension__ typedef unsigned __int128 u128;

Xorshift1024Star::Xorshift1024Star(const State& words, unsigned position)
    : words_(words), position_(position) {
  if (position_ > 15) {
    throw Error(ErrorCode::kInvalidArgument, "xorshift position must be in [0, 15]");
  }
  if (std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; })) {
    throw Error(ErrorCode::kAllZeroState, "xorshift state must not be all zero");
  }
}

Xorshift1024Star Xorshift1024Star::from_seed(std::uint64_t seed) {
  State words{};
  std::uint64_t x = seed;
  for (auto& w : words) {
    x = kSeedMultiplier * x + kSeedIncrement;
    w = x;
  }
  return Xorshift1024Star(words, 0);
}

std::uint64_t Xorshift1024Star::next() {
  const std::uint64_t s0 = words_[position_];
  position_ = (position_ + 1) & 15;
  std::uint64_t s1 = words_[position_];
  s1 ^= s1 << 31;
  words_[position_] = s1 ^ s0 ^ (s1 >> 11) ^ (s0 >> 30);
  return words_[position_] * kMultiplier;
}

std::int64_t Xorshift1024Star::next_in_range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::kInvalidRange, "next_in_range requires lo <= hi");
  const std::uint64_t raw = next();
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  // span wraps to 0 only for the full 64-bit range.
  const std::uint64_t offset = span == 0 ? raw : raw % span;
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

void LcgParams::validate() const {
  if (modulus == 0) throw Error(ErrorCode::kInvalidArgument, "LCG modulus must be > 0");
  if (multiplier == 0 || multiplier >= modulus) {
    throw Error(ErrorCode::kInvalidArgument, "LCG multiplier must satisfy 0 < a < m");
  }
  if (increment >= modulus) throw Error(ErrorCode::kInvalidArgument, "LCG increment must be < m");
  if (seed >= modulus) throw Error(ErrorCode::kInvalidArgument, "LCG seed must be < m");
}

std::uint64_t lcg_next(const LcgParams& params, std::uint64_t x) {
  if (params.modulus == 0 || x >= params.modulus) {
    throw Error(ErrorCode::kInvalidArgument, "LCG value must be < m");
  }
  const u128 wide = static_cast<u128>(params.multiplier) * x + params.increment;
  return static_cast<std::uint64_t>(wide % params.modulus);
}

Tlcg::Tlcg(const Streams& streams) : streams_(streams) {
  for (const auto& s : streams_) s.validate();
}

Tlcg Tlcg::from_seed(std::uint64_t seed, const Streams& params) {
  Streams seeded = params;
  for (std::size_t k = 0; k < seeded.size(); ++k) {
    if (seeded[k].modulus == 0) throw Error(ErrorCode::kInvalidArgument, "LCG modulus must be > 0");
    const u128 wide = static_cast<u128>(seed) + kTlcgSeedOffsets[k];
    seeded[k].seed = static_cast<std::uint64_t>(wide % seeded[k].modulus);
  }
  return Tlcg(seeded);
}

Tlcg Tlcg::from_seed(std::uint64_t seed) { return from_seed(seed, default_tlcg_params()); }

std::int64_t Tlcg::next(std::int64_t min, std::int64_t max) {
  if (max <= min) throw Error(ErrorCode::kInvalidRange, "TLCG requires max > min");
  u128 sum = 0;
  for (auto& s : streams_) {
    s.seed = lcg_next(s, s.seed);
    sum += s.seed;
  }
  const std::uint64_t range = static_cast<std::uint64_t>(max) - static_cast<std::uint64_t>(min);
  const auto offset = static_cast<std::uint64_t>(sum % range);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(min) + offset);
}

Tlcg::Streams default_tlcg_params() {
  constexpr std::uint64_t kMersenne31 = 2147483647ULL;
  return {{
      {kMersenne31, 16807, 12345, 1},
      {kMersenne31, 48271, 1013904223, 1},
      {kMersenne31, 69621, 2531011, 1},
  }};
}

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0, 1]");
  }
}

// 53 high bits scaled into [0, 1).
double unit_interval(std::uint64_t raw) { return static_cast<double>(raw >> 11) * 0x1.0p-53; }

}  // namespace

double xor_bias_expected(const BitBiasSpec& spec) {
  check_probability(spec.mu, "mu");
  check_probability(spec.nu, "nu");
  return spec.mu + spec.nu - 2.0 * spec.mu * spec.nu;
}

double xor_bias_empirical(const BitBiasSpec& spec, std::uint64_t n, Xorshift1024Star& rng) {
  check_probability(spec.mu, "mu");
  check_probability(spec.nu, "nu");
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const bool x = unit_interval(rng.next()) < spec.mu;
    const bool y = unit_interval(rng.next()) < spec.nu;
    ones += static_cast<std::uint64_t>(x != y);
  }
  return static_cast<double>(ones) / static_cast<double>(n);
}

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError(0, "invalid seed '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace pioucrypt
