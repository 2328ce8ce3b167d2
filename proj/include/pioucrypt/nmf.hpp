#pragma once

// Non-negative matrix factorization V ~= W H by multiplicative updates, and
// the text form of W that serves as the second-layer secret key.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pioucrypt/matrix.hpp"

namespace pioucrypt {

struct NmfConfig {
  std::size_t rank = 2;
  std::size_t max_iterations = 500;
  double epsilon = 1e-9;  // denominator guard
  double alpha = 0.0;     // Frobenius penalty on W; 0 gives the plain update
  double beta = 0.0;      // Frobenius penalty on H
  /// Stop once |e(t-1) - e(t)| / ||V||_F falls below this (absolute when V = 0).
  double tolerance = 1e-9;
  std::uint64_t initialization_seed = 0;

  void validate() const;
};

struct FactorPair {
  Matrix w;  // m x r
  Matrix h;  // r x n
};

struct NmfResult {
  FactorPair factors;
  /// error_history[0] is the error of the initial factors, then one entry
  /// per completed iteration.
  std::vector<double> error_history;
  std::size_t iterations = 0;
};

/// W then H, row-major, every entry uniform in (0, 1] from a TLCG seeded by
/// config.initialization_seed.
FactorPair initialize_factors(std::size_t rows, std::size_t cols, const NmfConfig& config);

/// H <- H * (W^T V) / (W^T W H + eps), then W <- W * (V H^T) / (W H H^T + eps).
void multiplicative_step(const Matrix& v, FactorPair& factors, double epsilon);

/// Same update with 2*beta*H and 2*alpha*W added to the respective
/// denominators: the gradients of beta*||H||_F^2 and alpha*||W||_F^2.
void regularized_step(const Matrix& v, FactorPair& factors, double epsilon, double alpha, double beta);

/// EmptyMatrix for an empty V; InvalidArgument for negative or non-finite
/// entries, or fewer rows than the rank.
NmfResult nmf_multiplicative(const Matrix& v, const NmfConfig& config);
NmfResult nmf_multiplicative(const Matrix& v, FactorPair initial, const NmfConfig& config);

/// ||V - W H||_F. ShapeMismatch if the shapes do not chain.
double reconstruction_error(const Matrix& v, const Matrix& w, const Matrix& h);

/// "PIOUW <m> <r>" then m lines of r fixed 5-decimal entries.
std::string serialize_w(const Matrix& w);
Matrix parse_w(std::string_view text);

}  // namespace pioucrypt
