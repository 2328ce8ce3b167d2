#pragma once

// 2-D Bravais lattices r = n1*v0 + n2*v1 clipped to an axis-aligned window
// anchored at the origin.

#include <cstdint>
#include <optional>
#include <vector>

#include "pioucrypt/matrix.hpp"
#include "pioucrypt/prng.hpp"

namespace pioucrypt {

struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Primitive translation vectors. The determinant is never zero.
class LatticeVectors {
 public:
  /// nullopt when either vector is zero or the two are collinear.
  static std::optional<LatticeVectors> make(Vec2 v0, Vec2 v1);

  Vec2 v0() const { return v0_; }
  Vec2 v1() const { return v1_; }

  std::int64_t determinant() const { return v0_.x * v1_.y - v0_.y * v1_.x; }
  double length0() const;
  double length1() const;
  /// Angle between the vectors in (0, pi).
  double obliquity() const;

  friend bool operator==(const LatticeVectors&, const LatticeVectors&) = default;

 private:
  LatticeVectors(Vec2 v0, Vec2 v1) : v0_(v0), v1_(v1) {}

  Vec2 v0_;
  Vec2 v1_;
};

/// Points live in [0, width) x [0, height).
struct WindowSpec {
  std::int64_t width = 1;
  std::int64_t height = 1;

  void validate() const;
};

/// Component bound B = max(4, ceil(max(width, height) / 25)).
std::int64_t lattice_component_bound(const WindowSpec& window);

inline constexpr int kMaxVectorRejections = 64;

/// Draws v0.x, v0.y, v1.x, v1.y in [-B, B] from the TLCG, redrawing all
/// four while the pair is degenerate. DegenerateVectors after 64
/// consecutive rejections.
LatticeVectors derive_lattice_vectors(Tlcg& tlcg, const WindowSpec& window);

/// In-window lattice points, one row per point, sorted by (y, x).
struct PointMatrix {
  std::vector<Vec2> points;

  std::size_t rows() const { return points.size(); }
  /// rows() x 2 matrix of (x, y).
  Matrix to_matrix() const;
};

PointMatrix generate_lattice_points(const LatticeVectors& vectors, const WindowSpec& window);

}  // namespace pioucrypt
