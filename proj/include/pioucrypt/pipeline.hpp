#pragma once

// End-to-end sender and receiver flows.
//
// Sender: Layer-1 encryption of the image, then a lattice over the image's
// window whose point matrix is factorized; the serialized W factor is the
// OEA key, and the Layer-1 key file is OEA-encrypted with it. One master
// seed drives the Xorshift stream, the lattice TLCG, and the NMF start.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "pioucrypt/image.hpp"
#include "pioucrypt/lattice.hpp"
#include "pioucrypt/nmf.hpp"
#include "pioucrypt/prng.hpp"

namespace pioucrypt {

inline constexpr std::string_view kCipherImageFile = "cipher.ppm";
inline constexpr std::string_view kOeaCipherFile = "cipher.oea";
inline constexpr std::string_view kOeaKeyFile = "OEA-key.txt";

/// Windows narrower than this are widened so the lattice can supply at
/// least `rank` points.
inline constexpr std::int64_t kMinLatticeWindow = 8;

struct PipelineConfig {
  std::uint64_t seed = 0;
  Tlcg::Streams tlcg_params = default_tlcg_params();
  NmfConfig nmf;
  std::filesystem::path output_dir = ".";

  /// Sets `seed` and seeds the NMF initializer from it too.
  static PipelineConfig with_seed(std::uint64_t seed);

  void validate() const;
};

struct EncryptionBundle {
  RgbImage cipher_image;
  std::string oea_cipher_text;
  std::string oea_key_text;
};

struct LatticeKeyMaterial {
  WindowSpec window;
  LatticeVectors vectors;
  PointMatrix points;
  NmfResult nmf;
};

WindowSpec lattice_window(std::size_t width, std::size_t height);

/// Derives vectors from the TLCG, redrawing while the window holds fewer
/// points than the NMF rank, and factorizes the point matrix.
LatticeKeyMaterial derive_lattice_key(std::size_t width, std::size_t height, const PipelineConfig& config);

EncryptionBundle encrypt_image(const RgbImage& image, const PipelineConfig& config);

/// KeyMismatch when the OEA key does not open the ciphertext into a valid
/// Layer-1 key; DimensionMismatch when that key is for another image size;
/// ParseError for malformed ciphertext or key files.
RgbImage decrypt_bundle(const RgbImage& cipher_image, std::string_view oea_cipher_text,
                        std::string_view oea_key_text);

/// Writes cipher.ppm, cipher.oea and OEA-key.txt into config.output_dir.
/// Nothing is left behind if any step fails.
EncryptionBundle encrypt_pipeline(const std::filesystem::path& image_path, const PipelineConfig& config);

RgbImage decrypt_pipeline(const std::filesystem::path& cipher_image_path,
                          const std::filesystem::path& oea_cipher_path,
                          const std::filesystem::path& oea_key_path,
                          const std::filesystem::path& output_path);

/// Histogram CSV of the image at `image_path`, written to `csv_path`.
void analyze(const std::filesystem::path& image_path, const std::filesystem::path& csv_path);

}  // namespace pioucrypt
