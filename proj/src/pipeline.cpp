#include "pioucrypt/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>
#include <utility>
#include <vector>

#include "pioucrypt/error.hpp"
#include "pioucrypt/histogram.hpp"
#include "pioucrypt/layer1.hpp"
#include "pioucrypt/netpbm.hpp"
#include "pioucrypt/oea.hpp"

namespace pioucrypt {

namespace fs = std::filesystem;

PipelineConfig PipelineConfig::with_seed(std::uint64_t seed) {
  PipelineConfig config;
  config.seed = seed;
  config.nmf.initialization_seed = seed;
  return config;
}

void PipelineConfig::validate() const {
  for (const auto& p : tlcg_params) {
    LcgParams probe = p;
    probe.seed = 0;
    probe.validate();
  }
  nmf.validate();
}

WindowSpec lattice_window(std::size_t width, std::size_t height) {
  return {std::max<std::int64_t>(kMinLatticeWindow, static_cast<std::int64_t>(width)),
          std::max<std::int64_t>(kMinLatticeWindow, static_cast<std::int64_t>(height))};
}

LatticeKeyMaterial derive_lattice_key(std::size_t width, std::size_t height, const PipelineConfig& config) {
  config.validate();
  const WindowSpec window = lattice_window(width, height);
  Tlcg tlcg = Tlcg::from_seed(config.seed, config.tlcg_params);
  for (int attempt = 0; attempt < kMaxVectorRejections; ++attempt) {
    const LatticeVectors vectors = derive_lattice_vectors(tlcg, window);
    PointMatrix points = generate_lattice_points(vectors, window);
    if (points.rows() < config.nmf.rank) continue;
    NmfResult nmf = nmf_multiplicative(points.to_matrix(), config.nmf);
    return {window, vectors, std::move(points), std::move(nmf)};
  }
  throw Error(ErrorCode::kDegenerateVectors, "no lattice with enough in-window points for the NMF rank");
}

EncryptionBundle encrypt_image(const RgbImage& image, const PipelineConfig& config) {
  config.validate();
  Xorshift1024Star rng = Xorshift1024Star::from_seed(config.seed);
  Layer1Result layer1 = encrypt_layer1(image, rng);

  const LatticeKeyMaterial lattice = derive_lattice_key(image.width(), image.height(), config);
  std::string key_text = serialize_w(lattice.nmf.factors.w);

  const OeaCipher cipher = oea_encrypt(serialize_layer1_key(layer1.key), OeaKey(key_text));
  return {std::move(layer1.cipher), serialize_oea(cipher), std::move(key_text)};
}

RgbImage decrypt_bundle(const RgbImage& cipher_image, std::string_view oea_cipher_text,
                        std::string_view oea_key_text) {
  parse_w(oea_key_text);
  const OeaKey key{std::string(oea_key_text)};
  const OeaCipher cipher = parse_oea(oea_cipher_text);

  Layer1Key layer1_key;
  try {
    layer1_key = parse_layer1_key(oea_decrypt(cipher, key));
  } catch (const Error& e) {
    // Any failure past the framing means the key does not open this bundle.
    if (e.code() == ErrorCode::kNonByteValue || e.code() == ErrorCode::kParseError) {
      throw Error(ErrorCode::kKeyMismatch, std::string("OEA key does not open this ciphertext (") + e.what() + ")");
    }
    throw;
  }
  return decrypt_layer1(cipher_image, layer1_key);
}

namespace {

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

fs::path staging_path(const fs::path& final_path) {
  fs::path staged = final_path;
  staged += ".partial";
  return staged;
}

// Stages every file next to its destination, then renames them into place.
// On failure all staged and already-renamed files are removed.
void publish_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> staged;
  std::vector<fs::path> published;
  try {
    for (const auto& [path, content] : files) {
      staged.push_back(staging_path(path));
      write_text(staged.back(), content);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::error_code ec;
      fs::rename(staged[i], files[i].first, ec);
      if (ec) throw Error(ErrorCode::kIoError, "cannot publish " + files[i].first.string() + ": " + ec.message());
      published.push_back(files[i].first);
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& p : staged) fs::remove(p, ignored);
    for (const auto& p : published) fs::remove(p, ignored);
    throw;
  }
}

std::string as_text(const std::vector<std::uint8_t>& bytes) { return std::string(bytes.begin(), bytes.end()); }

}  // namespace

EncryptionBundle encrypt_pipeline(const fs::path& image_path, const PipelineConfig& config) {
  const RgbImage image = read_image(image_path);
  EncryptionBundle bundle = encrypt_image(image, config);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + config.output_dir.string() + ": " + ec.message());
  publish_atomically({
      {config.output_dir / kCipherImageFile, as_text(encode_ppm(bundle.cipher_image))},
      {config.output_dir / kOeaCipherFile, bundle.oea_cipher_text},
      {config.output_dir / kOeaKeyFile, bundle.oea_key_text},
  });
  return bundle;
}

RgbImage decrypt_pipeline(const fs::path& cipher_image_path, const fs::path& oea_cipher_path,
                          const fs::path& oea_key_path, const fs::path& output_path) {
  const RgbImage cipher = read_image(cipher_image_path);
  RgbImage plain = decrypt_bundle(cipher, read_file_text(oea_cipher_path), read_file_text(oea_key_path));
  publish_atomically({{output_path, as_text(encode_ppm(plain))}});
  return plain;
}

void analyze(const fs::path& image_path, const fs::path& csv_path) {
  const std::string csv = histogram_csv(histogram(read_image(image_path)));
  publish_atomically({{csv_path, csv}});
}

}  // namespace pioucrypt
