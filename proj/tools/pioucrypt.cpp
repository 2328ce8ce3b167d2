// pioucrypt: command-line front end for the two-layer image cipher.
//
//   pioucrypt encrypt <image> --seed <n> [--out <dir>]
//   pioucrypt decrypt <cipher.ppm> <cipher.oea> <OEA-key.txt> [--out <file>]
//   pioucrypt analyze <image> [--csv <file>]
//   pioucrypt lattice --v0 x,y --v1 x,y --window WxH [--seed <n>] [--points]

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pioucrypt/error.hpp"
#include "pioucrypt/histogram.hpp"
#include "pioucrypt/lattice.hpp"
#include "pioucrypt/netpbm.hpp"
#include "pioucrypt/nmf.hpp"
#include "pioucrypt/pipeline.hpp"
#include "pioucrypt/prng.hpp"

namespace {

using namespace pioucrypt;

Vec2 parse_vec2(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("vector", "expected x,y but got '" + text + "'");
  try {
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    const std::string xs = text.substr(0, comma);
    const std::string ys = text.substr(comma + 1);
    const Vec2 v{std::stoll(xs, &used_x), std::stoll(ys, &used_y)};
    if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("vector", "expected x,y but got '" + text + "'");
  }
}

WindowSpec parse_window(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const std::string ws = text.substr(0, x);
    const std::string hs = text.substr(x + 1);
    const WindowSpec window{std::stoll(ws, &used_w), std::stoll(hs, &used_h)};
    if (used_w != ws.size() || used_h != hs.size()) throw std::invalid_argument(text);
    return window;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("window", "expected WxH but got '" + text + "'");
  }
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag);
  if (const char* env = std::getenv("PIOUCRYPT_SEED")) return parse_seed(env);
  throw Error(ErrorCode::kInvalidArgument, "a seed is required: pass --seed or set PIOUCRYPT_SEED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer lossless image cipher"};
  app.require_subcommand(1);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a PPM/PGM image into a three-file bundle");
  std::string encrypt_image_path;
  std::optional<std::string> encrypt_seed;
  std::string encrypt_out = ".";
  encrypt->add_option("image", encrypt_image_path, "Input image (binary PPM or PGM)")->required();
  encrypt->add_option("--seed", encrypt_seed, "Master seed, decimal or 0x-hex (falls back to PIOUCRYPT_SEED)");
  encrypt->add_option("--out", encrypt_out, "Output directory");

  auto* decrypt = app.add_subcommand("decrypt", "Recover the original image from a bundle");
  std::string cipher_path;
  std::string oea_path;
  std::string key_path;
  std::string decrypt_out = "decrypted.ppm";
  decrypt->add_option("cipher", cipher_path, "Cipher image (cipher.ppm)")->required();
  decrypt->add_option("oea", oea_path, "OEA ciphertext (cipher.oea)")->required();
  decrypt->add_option("key", key_path, "OEA key (OEA-key.txt)")->required();
  decrypt->add_option("--out", decrypt_out, "Output PPM path");

  auto* analyze = app.add_subcommand("analyze", "Per-channel histogram as CSV");
  std::string analyze_image;
  std::optional<std::string> csv_path;
  analyze->add_option("image", analyze_image, "Input image")->required();
  analyze->add_option("--csv", csv_path, "Write CSV here instead of stdout");

  auto* lattice = app.add_subcommand("lattice", "Dump lattice points and their NMF factors");
  std::string v0_text;
  std::string v1_text;
  std::string window_text;
  std::string lattice_seed = "0";
  bool dump_points = false;
  lattice->add_option("--v0", v0_text, "First vector x,y")->required();
  lattice->add_option("--v1", v1_text, "Second vector x,y")->required();
  lattice->add_option("--window", window_text, "Window WxH")->required();
  lattice->add_option("--seed", lattice_seed, "NMF initialization seed");
  lattice->add_flag("--points", dump_points, "Also print every point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encrypt) {
      PipelineConfig config = PipelineConfig::with_seed(resolve_seed(encrypt_seed));
      config.output_dir = encrypt_out;
      const EncryptionBundle bundle = encrypt_pipeline(encrypt_image_path, config);
      std::cout << "wrote " << (config.output_dir / kCipherImageFile).string() << ", "
                << (config.output_dir / kOeaCipherFile).string() << ", "
                << (config.output_dir / kOeaKeyFile).string() << " (" << bundle.cipher_image.width() << "x"
                << bundle.cipher_image.height() << ")\n";
    } else if (*decrypt) {
      const RgbImage plain = decrypt_pipeline(cipher_path, oea_path, key_path, decrypt_out);
      std::cout << "wrote " << decrypt_out << " (" << plain.width() << "x" << plain.height() << ")\n";
    } else if (*analyze) {
      if (csv_path) {
        pioucrypt::analyze(analyze_image, *csv_path);
      } else {
        std::cout << histogram_csv(histogram(read_image(analyze_image)));
      }
    } else if (*lattice) {
      const auto vectors = LatticeVectors::make(parse_vec2(v0_text), parse_vec2(v1_text));
      if (!vectors) throw Error(ErrorCode::kDegenerateVectors, "vectors are zero or collinear");
      const WindowSpec window = parse_window(window_text);
      const PointMatrix points = generate_lattice_points(*vectors, window);
      std::cout << "determinant " << vectors->determinant() << "\npoints " << points.rows() << "\n";
      if (dump_points) {
        for (const auto& p : points.points) std::cout << p.x << " " << p.y << "\n";
      }
      NmfConfig nmf;
      nmf.initialization_seed = parse_seed(lattice_seed);
      if (points.rows() >= nmf.rank) {
        const Matrix v = points.to_matrix();
        const NmfResult result = nmf_multiplicative(v, nmf);
        std::cout << "iterations " << result.iterations << "\nerror " << result.error_history.back() << "\n";
        std::cout << "H\n";
        for (std::size_t i = 0; i < result.factors.h.rows(); ++i) {
          for (std::size_t j = 0; j < result.factors.h.cols(); ++j) {
            std::cout << (j ? " " : "") << result.factors.h(i, j);
          }
          std::cout << "\n";
        }
        std::cout << serialize_w(result.factors.w);
      } else {
        std::cout << "too few points for a rank-" << nmf.rank << " factorization\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "pioucrypt: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pioucrypt: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
