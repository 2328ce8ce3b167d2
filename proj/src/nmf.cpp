#include "pioucrypt/nmf.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "pioucrypt/error.hpp"
#include "pioucrypt/prng.hpp"
#include "text_format.hpp"

namespace pioucrypt {

namespace {

constexpr std::int64_t kUnitSteps = 2147483647;

// A^T B
Matrix transpose_times(const Matrix& a, const Matrix& b) {
  Matrix out(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) sum += a(k, i) * b(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

// A B^T
Matrix times_transpose(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(j, k);
      out(i, j) = sum;
    }
  }
  return out;
}

Matrix times(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

double frobenius(const Matrix& m) {
  double sum = 0.0;
  for (const double x : m.values()) sum += x * x;
  return std::sqrt(sum);
}

void check_factors(const Matrix& v, const FactorPair& f, std::size_t rank) {
  if (f.w.rows() != v.rows() || f.w.cols() != rank || f.h.rows() != rank || f.h.cols() != v.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "initial factors do not match V and the rank");
  }
  for (const auto* m : {&f.w, &f.h}) {
    for (const double x : m->values()) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::kInvalidArgument, "initial factors must be finite and non-negative");
      }
    }
  }
}

}  // namespace

void NmfConfig::validate() const {
  if (rank < 1) throw Error(ErrorCode::kInvalidArgument, "rank must be >= 1");
  if (max_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha and beta must be >= 0");
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
}

FactorPair initialize_factors(std::size_t rows, std::size_t cols, const NmfConfig& config) {
  Tlcg tlcg = Tlcg::from_seed(config.initialization_seed);
  auto fill = [&tlcg](Matrix& m) {
    for (double& x : m.values()) x = static_cast<double>(tlcg.next(0, kUnitSteps) + 1) / double(kUnitSteps);
  };
  FactorPair f{Matrix(rows, config.rank), Matrix(config.rank, cols)};
  fill(f.w);
  fill(f.h);
  return f;
}

void multiplicative_step(const Matrix& v, FactorPair& f, double epsilon) {
  {
    const Matrix num = transpose_times(f.w, v);
    const Matrix den = times(transpose_times(f.w, f.w), f.h);
    auto& h = f.h.values();
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = h[i] * num.values()[i] / (den.values()[i] + epsilon);
  }
  {
    const Matrix num = times_transpose(v, f.h);
    const Matrix den = times(f.w, times_transpose(f.h, f.h));
    auto& w = f.w.values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] * num.values()[i] / (den.values()[i] + epsilon);
  }
}

void regularized_step(const Matrix& v, FactorPair& f, double epsilon, double alpha, double beta) {
  {
    const Matrix num = transpose_times(f.w, v);
    const Matrix den = times(transpose_times(f.w, f.w), f.h);
    auto& h = f.h.values();
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double penalty = beta * 2.0 * h[i];
      h[i] = h[i] * num.values()[i] / (den.values()[i] + penalty + epsilon);
    }
  }
  {
    const Matrix num = times_transpose(v, f.h);
    const Matrix den = times(f.w, times_transpose(f.h, f.h));
    auto& w = f.w.values();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double penalty = alpha * 2.0 * w[i];
      w[i] = w[i] * num.values()[i] / (den.values()[i] + penalty + epsilon);
    }
  }
}

NmfResult nmf_multiplicative(const Matrix& v, const NmfConfig& config) {
  config.validate();
  if (v.empty()) throw Error(ErrorCode::kEmptyMatrix, "cannot factorize an empty matrix");
  return nmf_multiplicative(v, initialize_factors(v.rows(), v.cols(), config), config);
}

NmfResult nmf_multiplicative(const Matrix& v, FactorPair initial, const NmfConfig& config) {
  config.validate();
  if (v.empty()) throw Error(ErrorCode::kEmptyMatrix, "cannot factorize an empty matrix");
  for (const double x : v.values()) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "V must be finite and non-negative");
    }
  }
  if (v.rows() < config.rank) {
    throw Error(ErrorCode::kInvalidArgument, "V has fewer rows (" + std::to_string(v.rows()) +
                                                 ") than the rank (" + std::to_string(config.rank) + ")");
  }
  check_factors(v, initial, config.rank);

  const bool regularized = config.alpha > 0.0 || config.beta > 0.0;
  const double norm_v = frobenius(v);
  const double scale = norm_v > 0.0 ? norm_v : 1.0;

  NmfResult result;
  result.factors = std::move(initial);
  result.error_history.reserve(config.max_iterations + 1);
  result.error_history.push_back(reconstruction_error(v, result.factors.w, result.factors.h));
  while (result.iterations < config.max_iterations) {
    if (regularized) {
      regularized_step(v, result.factors, config.epsilon, config.alpha, config.beta);
    } else {
      multiplicative_step(v, result.factors, config.epsilon);
    }
    ++result.iterations;
    const double previous = result.error_history.back();
    const double current = reconstruction_error(v, result.factors.w, result.factors.h);
    result.error_history.push_back(current);
    if (std::abs(previous - current) / scale < config.tolerance) break;
  }
  return result;
}

double reconstruction_error(const Matrix& v, const Matrix& w, const Matrix& h) {
  if (w.rows() != v.rows() || w.cols() != h.rows() || h.cols() != v.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "V, W and H shapes do not chain");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
      double wh = 0.0;
      for (std::size_t k = 0; k < w.cols(); ++k) wh += w(i, k) * h(k, j);
      const double d = v(i, j) - wh;
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

std::string serialize_w(const Matrix& w) {
  std::string out = "PIOUW ";
  detail::append_int(out, static_cast<std::int64_t>(w.rows()));
  out += ' ';
  detail::append_int(out, static_cast<std::int64_t>(w.cols()));
  out += '\n';
  char buf[64];
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const double x = w(i, j);
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::kInvalidArgument, "W entries must be finite and non-negative");
      }
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x + 0.0, std::chars_format::fixed, 5);
      if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "W entry too large to print");
      if (j > 0) out += ' ';
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

namespace {

double parse_fixed5(std::string_view token, std::size_t line) {
  const auto dot = token.find('.');
  const bool canonical = dot != std::string_view::npos && dot > 0 && token.size() == dot + 6 &&
                         (dot == 1 || token.front() != '0') &&
                         token.substr(0, dot).find_first_not_of("0123456789") == std::string_view::npos &&
                         token.substr(dot + 1).find_first_not_of("0123456789") == std::string_view::npos;
  double value = 0.0;
  if (canonical) {
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value, std::chars_format::fixed);
    if (ec == std::errc() && ptr == token.data() + token.size()) return value;
  }
  throw ParseError(line, "invalid W entry '" + std::string(token) + "'");
}

}  // namespace

Matrix parse_w(std::string_view text) {
  detail::LineCursor cursor(text);
  const auto header = detail::split_fields(cursor.next("PIOUW header"), cursor.line());
  if (header.size() != 3 || header[0] != "PIOUW") throw ParseError(cursor.line(), "expected 'PIOUW <m> <r>'");
  const std::uint64_t rows = detail::parse_unsigned(header[1], cursor.line(), "row count");
  const std::uint64_t cols = detail::parse_unsigned(header[2], cursor.line(), "column count");
  if (rows == 0 || cols == 0) throw ParseError(cursor.line(), "W must have at least one row and column");
  if (rows > text.size() || cols > text.size()) throw ParseError(cursor.line(), "W shape exceeds the input size");

  Matrix w(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto fields = detail::split_fields(cursor.next("W row"), cursor.line());
    if (fields.size() != cols) {
      throw ParseError(cursor.line(), "expected " + std::to_string(cols) + " entries, found " +
                                          std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) w(i, j) = parse_fixed5(fields[j], cursor.line());
  }
  cursor.expect_end();
  return w;
}

}  // namespace pioucrypt
