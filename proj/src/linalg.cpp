#include "heatlevel/linalg.hpp"

#include <algorithm>
#include <numbers>

#include "heatlevel/errors.hpp"

namespace heatlevel {

Matrix Matrix::identity(int n) {
  Matrix m{n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0)};
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Point Matrix::apply(std::span<const double> x) const {
  Point y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t = identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = (*this)(j, i);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix c = identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += (*this)(i, k) * other(k, j);
      c(i, j) = s;
    }
  return c;
}

double Matrix::orthogonality_defect() const {
  const Matrix p = transpose() * (*this);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

Matrix axis_rotation(int n, int axis, double angle) {
  if (n != 2 && n != 3) throw UnsupportedDimension("axis_rotation: n must be 2 or 3");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix m = Matrix::identity(n);
  if (n == 2) {
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
  }
  if (axis < 0 || axis > 2) throw InputError("axis_rotation: axis must be 0, 1 or 2");
  const int i = (axis + 1) % 3;
  const int j = (axis + 2) % 3;
  m(i, i) = c;
  m(i, j) = -s;
  m(j, i) = s;
  m(j, j) = c;
  return m;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Matrix random_rotation(int n, SplitMix64& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) return axis_rotation(2, 0, two_pi * rng.uniform());
  if (n != 3) throw UnsupportedDimension("random_rotation: n must be 2 or 3");
  // Shoemake's uniform unit quaternion.
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double w = a * std::sin(two_pi * u2);
  const double x = a * std::cos(two_pi * u2);
  const double y = b * std::sin(two_pi * u3);
  const double z = b * std::cos(two_pi * u3);
  Matrix m = Matrix::identity(3);
  m(0, 0) = 1 - 2 * (y * y + z * z);
  m(0, 1) = 2 * (x * y - z * w);
  m(0, 2) = 2 * (x * z + y * w);
  m(1, 0) = 2 * (x * y + z * w);
  m(1, 1) = 1 - 2 * (x * x + z * z);
  m(1, 2) = 2 * (y * z - x * w);
  m(2, 0) = 2 * (x * z - y * w);
  m(2, 1) = 2 * (y * z + x * w);
  m(2, 2) = 1 - 2 * (x * x + y * y);
  return m;
}

}  // namespace heatlevel
