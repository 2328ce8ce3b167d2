#include "pioucrypt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pioucrypt/error.hpp"

namespace pioucrypt {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Integer n with lo <= n*coef + offset <= hi, intersected into [lo_n, hi_n].
void clamp_index(std::int64_t coef, std::int64_t offset, std::int64_t lo, std::int64_t hi,
                 std::int64_t& lo_n, std::int64_t& hi_n) {
  if (coef == 0) {
    if (offset < lo || offset > hi) hi_n = lo_n - 1;
    return;
  }
  std::int64_t a = lo - offset;
  std::int64_t b = hi - offset;
  if (coef > 0) {
    lo_n = std::max(lo_n, ceil_div(a, coef));
    hi_n = std::min(hi_n, floor_div(b, coef));
  } else {
    lo_n = std::max(lo_n, ceil_div(b, coef));
    hi_n = std::min(hi_n, floor_div(a, coef));
  }
}

}  // namespace

std::optional<LatticeVectors> LatticeVectors::make(Vec2 v0, Vec2 v1) {
  if (v0 == Vec2{} || v1 == Vec2{}) return std::nullopt;
  LatticeVectors out(v0, v1);
  if (out.determinant() == 0) return std::nullopt;
  return out;
}

double LatticeVectors::length0() const { return std::hypot(double(v0_.x), double(v0_.y)); }
double LatticeVectors::length1() const { return std::hypot(double(v1_.x), double(v1_.y)); }

double LatticeVectors::obliquity() const {
  const double dot = double(v0_.x) * double(v1_.x) + double(v0_.y) * double(v1_.y);
  return std::acos(std::clamp(dot / (length0() * length1()), -1.0, 1.0));
}

void WindowSpec::validate() const {
  constexpr std::int64_t kMaxSide = std::int64_t{1} << 31;
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
    throw Error(ErrorCode::kInvalidArgument, "window sides must lie in [1, 2^31]");
  }
}

std::int64_t lattice_component_bound(const WindowSpec& window) {
  window.validate();
  const std::int64_t side = std::max(window.width, window.height);
  return std::max<std::int64_t>(4, ceil_div(side, 25));
}

LatticeVectors derive_lattice_vectors(Tlcg& tlcg, const WindowSpec& window) {
  const std::int64_t bound = lattice_component_bound(window);
  for (int attempt = 0; attempt < kMaxVectorRejections; ++attempt) {
    // Upper bound is exclusive in the TLCG, hence bound + 1.
    const Vec2 v0{tlcg.next(-bound, bound + 1), tlcg.next(-bound, bound + 1)};
    const Vec2 v1{tlcg.next(-bound, bound + 1), tlcg.next(-bound, bound + 1)};
    if (auto vectors = LatticeVectors::make(v0, v1)) return *vectors;
  }
  throw Error(ErrorCode::kDegenerateVectors,
              "TLCG produced " + std::to_string(kMaxVectorRejections) + " degenerate vector pairs in a row");
}

Matrix PointMatrix::to_matrix() const {
  Matrix m(points.size(), 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    m(i, 0) = static_cast<double>(points[i].x);
    m(i, 1) = static_cast<double>(points[i].y);
  }
  return m;
}

PointMatrix generate_lattice_points(const LatticeVectors& vectors, const WindowSpec& window) {
  window.validate();
  const Vec2 v0 = vectors.v0();
  const Vec2 v1 = vectors.v1();
  const double det = static_cast<double>(vectors.determinant());

  // Window corners in lattice coordinates bound the index box.
  double n1_min = std::numeric_limits<double>::infinity();
  double n1_max = -n1_min;
  double n2_min = n1_min;
  double n2_max = n1_max;
  for (const double x : {0.0, double(window.width)}) {
    for (const double y : {0.0, double(window.height)}) {
      const double n1 = (double(v1.y) * x - double(v1.x) * y) / det;
      const double n2 = (double(v0.x) * y - double(v0.y) * x) / det;
      n1_min = std::min(n1_min, n1);
      n1_max = std::max(n1_max, n1);
      n2_min = std::min(n2_min, n2);
      n2_max = std::max(n2_max, n2);
    }
  }
  const auto n1_lo = static_cast<std::int64_t>(std::floor(n1_min)) - 2;
  const auto n1_hi = static_cast<std::int64_t>(std::ceil(n1_max)) + 2;
  const auto n2_lo = static_cast<std::int64_t>(std::floor(n2_min)) - 2;
  const auto n2_hi = static_cast<std::int64_t>(std::ceil(n2_max)) + 2;

  PointMatrix out;
  for (std::int64_t n2 = n2_lo; n2 <= n2_hi; ++n2) {
    // Tighten n1 per row of the index box so sheared bases do not scan the
    // whole box.
    std::int64_t lo = n1_lo;
    std::int64_t hi = n1_hi;
    clamp_index(v0.x, n2 * v1.x, 0, window.width - 1, lo, hi);
    clamp_index(v0.y, n2 * v1.y, 0, window.height - 1, lo, hi);
    for (std::int64_t n1 = lo; n1 <= hi; ++n1) {
      const Vec2 p{n1 * v0.x + n2 * v1.x, n1 * v0.y + n2 * v1.y};
      if (p.x >= 0 && p.x < window.width && p.y >= 0 && p.y < window.height) out.points.push_back(p);
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const Vec2& a, const Vec2& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  return out;
}

}  // namespace pioucrypt
