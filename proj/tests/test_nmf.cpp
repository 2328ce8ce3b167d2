#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "pioucrypt/error.hpp"
#include "pioucrypt/nmf.hpp"

using namespace pioucrypt;

namespace {

Matrix matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values) {
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.values().begin());
  return m;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, oracle::TestRng& rng, double lo = 0.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& x : m.values()) x = lo + (hi - lo) * rng.unit();
  return m;
}

// Reference Lee-Seung update for rank 2 and two columns, written with
// explicit 2x2 algebra rather than the generic products.
void reference_step(const Matrix& v, Matrix& w, Matrix& h) {
  const std::size_t m = v.rows();
  double wtw[2][2] = {};
  double wtv[2][2] = {};
  for (std::size_t i = 0; i < m; ++i) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        wtw[a][b] += w(i, a) * w(i, b);
        wtv[a][b] += w(i, a) * v(i, b);
      }
    }
  }
  double hn[2][2];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double den = wtw[a][0] * h(0, b) + wtw[a][1] * h(1, b);
      hn[a][b] = h(a, b) * wtv[a][b] / (den + 1e-9);
    }
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) h(a, b) = hn[a][b];
  double hht[2][2] = {};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) hht[a][b] = h(a, 0) * h(b, 0) + h(a, 1) * h(b, 1);
  for (std::size_t i = 0; i < m; ++i) {
    double next[2];
    for (int a = 0; a < 2; ++a) {
      const double num = v(i, 0) * h(a, 0) + v(i, 1) * h(a, 1);
      const double den = w(i, 0) * hht[0][a] + w(i, 1) * hht[1][a];
      next[a] = w(i, a) * num / (den + 1e-9);
    }
    w(i, 0) = next[0];
    w(i, 1) = next[1];
  }
}

double frobenius(const Matrix& m) {
  double s = 0;
  for (double x : m.values()) s += x * x;
  return std::sqrt(s);
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("initialization") {
  NmfConfig config;
  config.initialization_seed = 5;
  const FactorPair a = initialize_factors(30, 2, config);
  const FactorPair b = initialize_factors(30, 2, config);
  CHECK(a.w == b.w);
  CHECK(a.h == b.h);
  CHECK(a.w.rows() == 30);
  CHECK(a.h.rows() == 2);
  for (const auto* m : {&a.w, &a.h}) {
    for (double x : m->values()) CHECK((x > 0.0 && x <= 1.0));
  }
  config.initialization_seed = 6;
  CHECK_FALSE(initialize_factors(30, 2, config).w == a.w);
}

TEST_CASE("exact factorization is a fixed point") {
  oracle::TestRng rng(1);
  const Matrix w0 = random_matrix(12, 2, rng, 0.5, 2.0);
  const Matrix h0 = random_matrix(2, 2, rng, 0.5, 2.0);
  Matrix v(12, 2);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 2; ++j) v(i, j) = w0(i, 0) * h0(0, j) + w0(i, 1) * h0(1, j);

  NmfConfig config;
  config.max_iterations = 10;
  config.tolerance = 0.0;
  const NmfResult r = nmf_multiplicative(v, {w0, h0}, config);
  CHECK(r.iterations == 10);
  for (std::size_t k = 0; k < w0.values().size(); ++k)
    CHECK(r.factors.w.values()[k] == doctest::Approx(w0.values()[k]).epsilon(1e-6));
  for (std::size_t k = 0; k < h0.values().size(); ++k)
    CHECK(r.factors.h.values()[k] == doctest::Approx(h0.values()[k]).epsilon(1e-6));
}

TEST_CASE("all-zero V collapses immediately") {
  const NmfResult r = nmf_multiplicative(Matrix(5, 2), NmfConfig{});
  REQUIRE(r.error_history.size() >= 2);
  CHECK(r.error_history[0] > 0.0);
  CHECK(r.error_history[1] == 0.0);
  for (double x : r.factors.h.values()) CHECK(x == 0.0);
}

TEST_CASE("rank-one input with rank two") {
  const Matrix v = matrix(4, 2, {1, 2, 2, 4, 3, 6, 4, 8});
  const NmfResult r = nmf_multiplicative(v, NmfConfig{});
  CHECK(r.iterations <= 500);
  CHECK(r.error_history.back() / frobenius(v) < 1e-4);
  CHECK(reconstruction_error(v, r.factors.w, r.factors.h) == r.error_history.back());
}

TEST_CASE("matches an independent reference update") {
  oracle::TestRng rng(9);
  for (int t = 0; t < 10; ++t) {
    const Matrix v = random_matrix(2 + rng.below(60), 2, rng, 0.0, 50.0);
    NmfConfig config;
    config.initialization_seed = rng.next();
    config.max_iterations = 50;
    config.tolerance = 0.0;
    FactorPair start = initialize_factors(v.rows(), 2, config);
    Matrix w = start.w;
    Matrix h = start.h;
    for (int i = 0; i < 50; ++i) reference_step(v, w, h);
    const NmfResult r = nmf_multiplicative(v, start, config);
    for (std::size_t k = 0; k < w.values().size(); ++k)
      REQUIRE(r.factors.w.values()[k] == doctest::Approx(w.values()[k]).epsilon(1e-9));
    for (std::size_t k = 0; k < h.values().size(); ++k)
      REQUIRE(r.factors.h.values()[k] == doctest::Approx(h.values()[k]).epsilon(1e-9));
  }
}

TEST_CASE("error is non-increasing and factors stay non-negative") {
  oracle::TestRng rng(42);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 2 + rng.below(100);
    const std::size_t n = 1 + rng.below(4);
    const Matrix v = random_matrix(m, n, rng, 0.0, rng.below(2) ? 1.0 : 1000.0);
    NmfConfig config;
    config.initialization_seed = rng.next();
    const NmfResult r = nmf_multiplicative(v, config);
    // The error itself is only accurate to a few ulps of ||V||.
    const double floor = 64 * std::numeric_limits<double>::epsilon() * frobenius(v);
    for (std::size_t i = 1; i < r.error_history.size(); ++i) {
      REQUIRE(r.error_history[i] <= r.error_history[i - 1] * (1.0 + 1e-9) + floor);
    }
    for (const auto* f : {&r.factors.w, &r.factors.h})
      for (double x : f->values()) REQUIRE((x >= 0.0 && std::isfinite(x)));
  }
}

TEST_CASE("each update step preserves non-negativity") {
  oracle::TestRng rng(4);
  Matrix v = random_matrix(40, 2, rng);
  v(3, 0) = 0.0;
  v(7, 1) = 0.0;
  NmfConfig config;
  FactorPair f = initialize_factors(40, 2, config);
  for (int i = 0; i < 100; ++i) {
    multiplicative_step(v, f, 1e-9);
    for (double x : f.w.values()) REQUIRE(x >= 0.0);
    for (double x : f.h.values()) REQUIRE(x >= 0.0);
  }
}

TEST_CASE("regularized step with zero weights equals the plain step") {
  oracle::TestRng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Matrix v = random_matrix(2 + rng.below(50), 2, rng, 0.0, 10.0);
    NmfConfig config;
    config.initialization_seed = rng.next();
    FactorPair plain = initialize_factors(v.rows(), 2, config);
    FactorPair reg = plain;
    for (int i = 0; i < 5; ++i) {
      multiplicative_step(v, plain, 1e-9);
      regularized_step(v, reg, 1e-9, 0.0, 0.0);
      REQUIRE(plain.w == reg.w);
      REQUIRE(plain.h == reg.h);
    }
  }
}

TEST_CASE("regularization shrinks the factors") {
  oracle::TestRng rng(13);
  const Matrix v = random_matrix(30, 2, rng, 0.0, 10.0);
  NmfConfig plain;
  plain.max_iterations = 200;
  NmfConfig reg = plain;
  reg.alpha = 0.5;
  reg.beta = 0.5;
  const NmfResult a = nmf_multiplicative(v, plain);
  const NmfResult b = nmf_multiplicative(v, reg);
  for (double x : b.factors.w.values()) CHECK((x >= 0.0 && std::isfinite(x)));
  CHECK(frobenius(b.factors.w) * frobenius(b.factors.h) < frobenius(a.factors.w) * frobenius(a.factors.h));
}

TEST_CASE("determinism") {
  oracle::TestRng rng(3);
  const Matrix v = random_matrix(150, 2, rng, 0.0, 999.0);
  NmfConfig config;
  config.initialization_seed = 77;
  const NmfResult a = nmf_multiplicative(v, config);
  const NmfResult b = nmf_multiplicative(v, config);
  CHECK(a.factors.w == b.factors.w);
  CHECK(a.factors.h == b.factors.h);
  CHECK(a.error_history == b.error_history);
}

TEST_CASE("input validation") {
  CHECK(code_of([] { nmf_multiplicative(Matrix(), NmfConfig{}); }) == ErrorCode::kEmptyMatrix);
  CHECK(code_of([] { nmf_multiplicative(matrix(2, 2, {1, -1, 0, 0}), NmfConfig{}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { nmf_multiplicative(matrix(1, 2, {1, 1}), NmfConfig{}); }) == ErrorCode::kInvalidArgument);
  NmfConfig bad;
  bad.epsilon = 0.0;
  CHECK(code_of([&] { nmf_multiplicative(matrix(2, 2, {1, 1, 1, 1}), bad); }) == ErrorCode::kInvalidArgument);
  bad = NmfConfig{};
  bad.rank = 0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { nmf_multiplicative(matrix(2, 2, {1, 1, 1, 1}), {Matrix(2, 3), Matrix(3, 2)}, NmfConfig{}); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("reconstruction_error") {
  const Matrix w = matrix(2, 2, {1, 2, 3, 4});
  const Matrix h = matrix(2, 2, {1, 0, 0, 1});
  CHECK(reconstruction_error(w, w, h) == 0.0);
  CHECK(reconstruction_error(matrix(1, 1, {1}), matrix(1, 1, {0}), matrix(1, 1, {0})) == 1.0);
  CHECK(reconstruction_error(matrix(1, 2, {3, 4}), matrix(1, 1, {0}), matrix(1, 2, {0, 0})) == 5.0);
  CHECK(code_of([&] { reconstruction_error(w, w, Matrix(3, 2)); }) == ErrorCode::kShapeMismatch);
  CHECK(code_of([&] { reconstruction_error(Matrix(3, 2), w, h); }) == ErrorCode::kShapeMismatch);

  // Sample H and W row: the product reconstructs its own row exactly.
  const Matrix h_sample = matrix(2, 2, {2.67699, 6.99999, 8.69999, 4.47100});
  const Matrix w_row = matrix(1, 2, {3.53299, 2.09400});
  const Matrix v_row = matrix(1, 2, {3.53299 * 2.67699 + 2.09400 * 8.69999, 3.53299 * 6.99999 + 2.09400 * 4.47100});
  CHECK(reconstruction_error(v_row, w_row, h_sample) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("W serialization") {
  CHECK(serialize_w(Matrix(1, 2)) == "PIOUW 1 2\n0.00000 0.00000\n");
  CHECK(serialize_w(matrix(1, 2, {3.532994, 2.093996})) == "PIOUW 1 2\n3.53299 2.09400\n");
  const std::string text = serialize_w(Matrix(668, 2, 1.0));
  CHECK(text.substr(0, text.find('\n')) == "PIOUW 668 2");

  oracle::TestRng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Matrix w = random_matrix(1 + rng.below(40), 1 + rng.below(3), rng, 0.0, rng.below(2) ? 10.0 : 5000.0);
    const std::string s = serialize_w(w);
    const Matrix back = parse_w(s);
    REQUIRE(back.rows() == w.rows());
    REQUIRE(back.cols() == w.cols());
    for (std::size_t k = 0; k < w.values().size(); ++k) CHECK(std::abs(back.values()[k] - w.values()[k]) <= 5.0001e-6);
    CHECK(serialize_w(back) == s);
  }

  CHECK(code_of([] { serialize_w(matrix(1, 1, {-1.0})); }) == ErrorCode::kInvalidArgument);
  for (const char* bad : {"PIOUW 1 2\n0.00000\n", "PIOUW 1 2\n1.0 2.00000\n", "PIOUW 1 2\n01.00000 2.00000\n",
                          "PIOUW 1 2\n-1.00000 2.00000\n", "PIOUW 1 2\n1.00000 2.00000\nextra\n",
                          "PIOUW 2 2\n1.00000 2.00000\n", "PIOUX 1 2\n1.00000 2.00000\n", "PIOUW 0 2\n",
                          "PIOUW 1 2\n1.00000 2.00000", "PIOUW 1 2\n.00000 2.00000\n"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_w(bad); }) == ErrorCode::kParseError);
  }
}
