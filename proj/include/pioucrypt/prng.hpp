#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pioucrypt {

/// Xorshift1024* generator: 16 words of state, a rotating index, and a
/// fixed output multiplier. The state is a plain value; copying it forks the
/// stream.
class Xorshift1024Star {
 public:
  using State = std::array<std::uint64_t, 16>;

  static constexpr std::uint64_t kMultiplier = 0x106689D45497FDB5ULL;

  // Seed expansion recurrence x <- a*x + c (mod 2^64).
  static constexpr std::uint64_t kSeedMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kSeedIncrement = 1442695040888963407ULL;

  /// Throws AllZeroState if every word is zero, InvalidArgument if position > 15.
  Xorshift1024Star(const State& words, unsigned position);

  /// s[0..15] are the 16 successive iterates of the seed recurrence starting
  /// from `seed`; position 0.
  static Xorshift1024Star from_seed(std::uint64_t seed);

  std::uint64_t next();

  /// lo + (next() mod (hi - lo + 1)). Plain modulo: the bias is at most
  /// span / 2^64 and is accepted for bit-exact reproducibility.
  std::int64_t next_in_range(std::int64_t lo, std::int64_t hi);

  const State& words() const { return words_; }
  unsigned position() const { return position_; }

  friend bool operator==(const Xorshift1024Star&, const Xorshift1024Star&) = default;

 private:
  State words_;
  unsigned position_;
};

/// One linear congruential stream x <- (a*x + c) mod m. `seed` is the
/// stream's current value.
struct LcgParams {
  std::uint64_t modulus = 0;
  std::uint64_t multiplier = 0;
  std::uint64_t increment = 0;
  std::uint64_t seed = 0;

  /// m > 0, 0 < a < m, 0 <= c < m, 0 <= seed < m; InvalidArgument otherwise.
  void validate() const;

  friend bool operator==(const LcgParams&, const LcgParams&) = default;
};

/// (a*x + c) mod m with 128-bit intermediates. Requires x < m.
std::uint64_t lcg_next(const LcgParams& params, std::uint64_t x);

/// Three independent LCG streams whose outputs are summed and reduced.
class Tlcg {
 public:
  using Streams = std::array<LcgParams, 3>;

  explicit Tlcg(const Streams& streams);

  /// Seeds each stream of `params` at (seed + fixed offset_k) mod m_k.
  static Tlcg from_seed(std::uint64_t seed, const Streams& params);
  static Tlcg from_seed(std::uint64_t seed);

  /// Advances all three streams once and returns ((x1+x2+x3) mod range) + min
  /// with range = max - min. The result lies in [min, max): the upper bound
  /// is exclusive. InvalidRange if max <= min.
  std::int64_t next(std::int64_t min, std::int64_t max);

  const Streams& streams() const { return streams_; }

  friend bool operator==(const Tlcg&, const Tlcg&) = default;

 private:
  Streams streams_;
};

/// m = 2^31 - 1 for every stream, with distinct primitive-root multipliers
/// and distinct increments.
Tlcg::Streams default_tlcg_params();

/// Offsets added to a master seed to produce the three stream seeds.
inline constexpr std::array<std::uint64_t, 3> kTlcgSeedOffsets = {
    0x2545F491ULL, 0x9E3779B9ULL, 0x68E31DA4ULL};

struct BitBiasSpec {
  double mu = 0.5;  // E(X)
  double nu = 0.5;  // E(Y)
};

/// mu + nu - 2 mu nu: expected XOR of two independent biased bits.
double xor_bias_expected(const BitBiasSpec& spec);

/// Mean of X xor Y over n independent pairs, X ~ Bernoulli(mu) and
/// Y ~ Bernoulli(nu), each bit drawn by thresholding one generator output
/// scaled to [0, 1).
double xor_bias_empirical(const BitBiasSpec& spec, std::uint64_t n, Xorshift1024Star& rng);

/// Accepts decimal or 0x-prefixed hexadecimal 64-bit unsigned integers.
std::uint64_t parse_seed(std::string_view text);

}  // namespace pioucrypt
