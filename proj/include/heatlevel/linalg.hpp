#pragma once

// Small dense helpers for points in R^N with N <= 3. Points are plain
// std::vector<double>; the hot loops never allocate through these.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace heatlevel {

using Point = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Row-major square matrix, used for rotations in O(N).
struct Matrix {
  int n = 0;
  std::vector<double> a;

  static Matrix identity(int n);
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }

  Point apply(std::span<const double> x) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  /// max |A^T A - I|
  double orthogonality_defect() const;
};

/// Rotation by `angle` about coordinate axis `axis` (0-based) in R^3, or the
/// planar rotation when n == 2 (axis ignored).
Matrix axis_rotation(int n, int axis, double angle);

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that draws are identical across standard libraries.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

private:
  std::uint64_t state_;
};

/// Uniformly distributed rotation in SO(n), n in {2, 3}.
Matrix random_rotation(int n, SplitMix64& rng);

}  // namespace heatlevel
