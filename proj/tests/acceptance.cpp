// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "oracles.hpp"
#include "pioucrypt/histogram.hpp"
#include "pioucrypt/lattice.hpp"
#include "pioucrypt/layer1.hpp"
#include "pioucrypt/netpbm.hpp"
#include "pioucrypt/nmf.hpp"
#include "pioucrypt/oea.hpp"
#include "pioucrypt/pipeline.hpp"
#include "pioucrypt/prng.hpp"

using namespace pioucrypt;
namespace fs = std::filesystem;

namespace {

__extension__ typedef unsigned __int128 u128;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. decrypt(encrypt(img)) == img for 25 images x 4 seeds.
Outcome end_to_end() {
  const std::size_t sizes[][2] = {{1, 1}, {2, 3}, {17, 5}, {64, 64}, {128, 128}};
  const std::uint64_t seeds[] = {1, 42, 0xDEADBEEF, 18446744073709551615ULL};
  oracle::TestRng rng(1001);
  int ok = 0;
  int total = 0;
  for (int i = 0; i < 25; ++i) {
    const RgbImage img = oracle::random_image(sizes[i % 5][0], sizes[i % 5][1], rng);
    for (std::uint64_t seed : seeds) {
      const EncryptionBundle b = encrypt_image(img, PipelineConfig::with_seed(seed));
      const RgbImage back = decrypt_bundle(b.cipher_image, b.oea_cipher_text, b.oea_key_text);
      ok += encode_ppm(back) == encode_ppm(img);
      ++total;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " byte-identical"};
}

// 2. Lattice point count for the example vectors.
Outcome lattice_count() {
  const auto v = LatticeVectors::make({-40, -1}, {18, -37});
  const auto pts = generate_lattice_points(*v, {1000, 1000});
  const auto brute = oracle::brute_force_lattice(-40, -1, 18, -37, 1000, 1000);
  const auto m = static_cast<long long>(pts.rows());
  const bool equal = pts.rows() == brute.size();
  const bool near = std::llabs(m - 668) <= 2;
  return {equal && near, "count " + std::to_string(m) + ", brute force " + std::to_string(brute.size()) +
                             ", expected 668 +/- 2" + (near ? "" : " (outside tolerance)")};
}

// 3. NMF error monotone (1e-9 relative slack) and rank-2-exact inputs
// converging below 1e-4 relative error within 500 iterations.
Outcome nmf_behaviour() {
  oracle::TestRng rng(303);
  int monotone = 0;
  int converged = 0;
  double worst_increase = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + rng.below(199);
    Matrix w0(m, 2);
    Matrix h0(2, 2);
    for (double& x : w0.values()) x = rng.unit() * 10.0;
    for (double& x : h0.values()) x = rng.unit() * 10.0;
    Matrix v(m, 2);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < 2; ++j) v(i, j) = w0(i, 0) * h0(0, j) + w0(i, 1) * h0(1, j);
    double norm = 0.0;
    for (double x : v.values()) norm += x * x;
    norm = std::sqrt(norm);

    NmfConfig config;
    config.initialization_seed = rng.next();
    const NmfResult r = nmf_multiplicative(v, config);
    bool mono = true;
    for (std::size_t i = 1; i < r.error_history.size(); ++i) {
      const double prev = r.error_history[i - 1];
      if (r.error_history[i] > prev * (1.0 + 1e-9)) {
        mono = false;
        worst_increase = std::max(worst_increase, (r.error_history[i] - prev) / prev);
      }
    }
    monotone += mono;
    converged += norm == 0.0 || r.error_history.back() / norm < 1e-4;
  }
  std::string detail = "monotone " + std::to_string(monotone) + "/50, converged " + std::to_string(converged) + "/50";
  if (worst_increase > 0) detail += ", worst relative increase " + fmt(worst_increase);
  return {monotone == 50 && converged == 50, detail};
}

// 4. Sorted per-channel bin counts survive Layer-1 encryption.
Outcome histogram_invariance() {
  oracle::TestRng rng(404);
  int ok = 0;
  for (int t = 0; t < 20; ++t) {
    const RgbImage img = oracle::random_image(1 + rng.below(128), 1 + rng.below(128), rng);
    auto prng = Xorshift1024Star::from_seed(rng.next());
    const HistogramReport plain = histogram(img);
    const HistogramReport cipher = histogram(encrypt_layer1(img, prng).cipher);
    bool same = true;
    for (Channel c : kChannels) {
      auto a = plain.channel(c);
      auto b = cipher.channel(c);
      const std::uint64_t sum = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      same = same && a == b && sum == img.width() * img.height();
    }
    ok += same;
  }
  return {ok == 20, std::to_string(ok) + "/20 images"};
}

// 5. OEA round trips, section lengths, and the hand-traced vector.
Outcome oea_round_trip() {
  oracle::TestRng rng(505);
  int ok = 0;
  for (int t = 0; t < 1000; ++t) {
    std::string plain(rng.below(2001), '\0');
    std::string key(1 + rng.below(200), '\0');
    for (char& c : plain) c = static_cast<char>(rng.below(256));
    for (char& c : key) c = static_cast<char>(rng.below(256));
    const OeaKey k(key);
    const OeaCipher c = oea_encrypt(plain, k);
    const auto red = static_cast<std::size_t>(k.weight() % 10);
    ok += oea_decrypt(parse_oea(serialize_oea(c)), k) == plain && c.sc.size() == plain.size() &&
          c.red1.size() == red && c.red2.size() == red;
  }
  const OeaCipher hand = oea_encrypt("Hi", OeaKey("A"));
  const bool hand_ok = hand.sc == "01" && hand.se == std::vector<std::int64_t>{-188} &&
                       hand.so == std::vector<std::int64_t>{105} && hand.red1 == "00000" &&
                       hand.red2 == std::vector<std::int64_t>(5, 195);
  return {ok == 1000 && hand_ok,
          std::to_string(ok) + "/1000 pairs, hand vector " + (hand_ok ? "matches" : "differs")};
}

// 6. Generators against direct transcriptions.
Outcome prng_oracles() {
  auto rng = Xorshift1024Star::from_seed(42);
  oracle::ReferenceXorshift ref(42);
  int ok = 0;
  std::uint64_t last = 0;
  for (int i = 0; i < 1000; ++i) {
    last = rng.next();
    ok += last == ref.next();
  }
  const bool anchor = last == 12695829280658668441ULL;

  const std::array<Tlcg::Streams, 3> sets = {{
      {{{16, 5, 3, 7}, {31, 3, 11, 2}, {97, 10, 1, 50}}},
      {{{2147483647, 16807, 12345, 1}, {2147483647, 48271, 1013904223, 2}, {2147483647, 69621, 2531011, 3}}},
      {{{1000, 21, 0, 999}, {1000, 999, 999, 0}, {7, 6, 6, 6}}},
  }};
  int tlcg_ok = 0;
  for (const auto& streams : sets) {
    Tlcg t(streams);
    std::array<std::uint64_t, 3> x = {streams[0].seed, streams[1].seed, streams[2].seed};
    bool same = true;
    for (int step = 0; step < 1000; ++step) {
      std::uint64_t sum = 0;
      for (int k = 0; k < 3; ++k) {
        const auto& p = streams[k];
        x[k] = static_cast<std::uint64_t>((static_cast<u128>(p.multiplier) * x[k] + p.increment) % p.modulus);
        sum += x[k];
      }
      const std::int64_t min = -40 + step % 7;
      const std::int64_t max = min + 2 + step % 90;
      same = same && t.next(min, max) == static_cast<std::int64_t>(sum % static_cast<std::uint64_t>(max - min)) + min;
    }
    tlcg_ok += same;
  }
  return {ok == 1000 && anchor && tlcg_ok == 3,
          "xorshift " + std::to_string(ok) + "/1000, TLCG parameter sets " + std::to_string(tlcg_ok) + "/3"};
}

// 7. Empirical XOR bias within 3 sigma of mu + nu - 2 mu nu.
Outcome bias_law() {
  const BitBiasSpec cases[] = {{0.3, 0.8}, {0.1, 0.1}, {0.5, 0.9}};
  const std::uint64_t n = 1000000;
  auto rng = Xorshift1024Star::from_seed(7);
  bool all = true;
  std::string detail;
  for (const auto& c : cases) {
    const double q = xor_bias_expected(c);
    const double got = xor_bias_empirical(c, n, rng);
    const double tol = 3.0 * std::sqrt(q * (1.0 - q) / double(n));
    const bool ok = std::abs(got - q) <= tol;
    all = all && ok;
    if (!detail.empty()) detail += "; ";
    detail += "q=" + fmt(q) + " got " + fmt(got) + (ok ? "" : " (outside " + fmt(tol) + ")");
  }
  return {all, detail};
}

// 8. Two pipeline runs with identical input and seed write identical files.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("pioucrypt-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  oracle::TestRng rng(808);
  write_image(oracle::random_image(64, 48, rng), root / "in.ppm");
  bool same = true;
  for (std::uint64_t seed : {3ULL, 42ULL}) {
    PipelineConfig a = PipelineConfig::with_seed(seed);
    PipelineConfig b = a;
    a.output_dir = root / ("a" + std::to_string(seed));
    b.output_dir = root / ("b" + std::to_string(seed));
    encrypt_pipeline(root / "in.ppm", a);
    encrypt_pipeline(root / "in.ppm", b);
    for (auto name : {kCipherImageFile, kOeaCipherFile, kOeaKeyFile}) {
      same = same && read_file_bytes(a.output_dir / name) == read_file_bytes(b.output_dir / name);
    }
  }
  fs::remove_all(root);
  return {same, same ? "bundle files identical" : "bundle files differ"};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"end-to-end losslessness", 30, end_to_end},
      {"lattice point count", 5, lattice_count},
      {"NMF monotonicity and convergence", 60, nmf_behaviour},
      {"histogram permutation invariance", 10, histogram_invariance},
      {"OEA round trip", 10, oea_round_trip},
      {"PRNG oracle equivalence", 1, prng_oracles},
      {"XOR bias law", 5, bias_law},
      {"pipeline determinism", 60, determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail += ", over the " + fmt(c.budget_seconds) + " s budget";
    }
    failures += !out.pass;
    std::printf("[%s] %d. %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str(), secs);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
