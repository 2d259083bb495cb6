#pragma once

// Numerical tests around similar level sets: constancy of u(t_n x, t_n) on a
// scaled boundary, the sign of directional derivatives away from the support,
// sphericity of a sampled hypersurface, and the moment functionals that turn
// constancy into symmetry of the initial data.

#include <cstdint>
#include <span>
#include <vector>

#include "heatlevel/heat_solver.hpp"
#include "heatlevel/linalg.hpp"
#include "heatlevel/numerics.hpp"

namespace heatlevel {

struct TimeSequence {
  std::vector<double> values;

  /// first, first * ratio, ..., count values. Needs first > 0, ratio > 1.
  static TimeSequence geometric(double first, double ratio, int count);
  /// Explicit list; must be positive and strictly increasing.
  static TimeSequence from_list(std::vector<double> values);
};

struct BoundarySample {
  Point point;
  /// Outward unit normal.
  Point normal;
  /// Optional orthonormal basis of the tangent space.
  std::vector<Point> tangents;
};

struct ConstancyReport {
  double t = 0.0;
  std::vector<double> samples;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// For each t in `times`, samples u(t p, t) over the boundary points and
/// reports spread = max - min. A report passes iff spread <= tol * scale, where
/// scale is `scale` when positive and max |sample| otherwise.
std::vector<ConstancyReport> check_condition_C(const numerics::SpaceTimeFunction& u,
                                               std::span<const BoundarySample> boundary,
                                               const TimeSequence& times, double tol, double scale = 0.0);

/// Same as above for a single time.
ConstancyReport constancy_report(const numerics::SpaceTimeFunction& u, std::span<const BoundarySample> boundary,
                                 double t, double tol, double scale = 0.0);

struct Halfspace {
  /// Unit vector.
  Point l;
  double offset = 0.0;
};

struct SpaceTimePoint {
  Point x;
  double t = 0.0;
};

/// max over samples of du/dl(x, t). Every sample needs x . l > offset and the
/// support ball of g must lie in {x . l <= offset}. A negative result
/// certifies the monotonicity hypothesis at the samples.
double monotonicity_check(const HeatSolverND& solver, const Halfspace& h, std::span<const SpaceTimePoint> samples);

struct AlignmentReport {
  /// max |p - (p . nu) nu| / |p|
  double max_misalignment = 0.0;
  /// max |p| - min |p|
  double radius_spread = 0.0;
  bool aligned = false;
};

/// aligned iff max_misalignment <= tol.
AlignmentReport normal_alignment_test(std::span<const BoundarySample> boundary, double tol);

/// `count` points of the sphere of radius `radius` in R^N (N = 2, 3), nudged by
/// single ulps so that heatlevel::norm returns exactly `radius` for nearly all
/// of them. A function of |x| is then constant on those points to the last bit.
std::vector<Point> sphere_points(int N, double radius, int count);

/// Origin-centered circle (N = 2) or sphere (N = 3) with exact normals.
std::vector<BoundarySample> sphere_boundary(int N, double radius, int count = 200);
/// Ellipse with semi-axes (a, b), uniform in the parameter angle.
std::vector<BoundarySample> ellipse_boundary(double a, double b, int count = 200);
/// Ellipsoid with semi-axes (a, b, c) over Fibonacci directions.
std::vector<BoundarySample> ellipsoid_boundary(double a, double b, double c, int count = 200);
/// Rotates every normal by the angle `eps` towards a random tangent direction.
std::vector<BoundarySample> perturb_normals(std::span<const BoundarySample> boundary, double eps,
                                            std::uint64_t seed);

/// int_{-b}^{b} v0(y) e^{b y / 2} e^{-y^2 / 4t} dy. Needs the support of v0 in (-b, b).
/// For the odd part v0 = g(y) - g(-y) this is
///   (4 pi t)^{1/2} e^{t b^2 / 4} (u(t b, t) - u(-t b, t)).
numerics::QuadratureResult moment_1d(const InitialProfile1D& v0, double b, double t);

/// int_0^b (w0(y) + w0(-y)) e^{-lambda y^2} dy with w0(y) = v0(y) e^{b y / 2}.
/// Equal to moment_1d at lambda = 1 / 4t.
numerics::QuadratureResult laplace_moment_1d(const InitialProfile1D& v0, double b, double lambda);

/// int_{|y| <= R} e^{x . y / 2} e^{-s |y|^2} (g(y) - g(A y)) dy, R the support
/// radius of g. Needs |x| = R within 1e-10 (relative).
double moment_nd(const InitialDataND& g, const Matrix& A, std::span<const double> x, double s,
                 TensorResolution resolution = {8, 12});

/// int_{S^{N-1}} e^{(R r / 2) alpha . omega} (g(r omega) - g(r A omega)) dsigma(omega).
double spherical_moment(const InitialDataND& g, const Matrix& A, double r, double R,
                        std::span<const double> alpha, int grid_order = 48);

struct HarmonicCoefficient {
  int degree = 0;
  int variant = 0;
  double value = 0.0;
};

/// Projections of h on the catalog harmonics of degree <= max_degree (<= 6),
/// normalized in L^2(S^2), computed with a product rule of the given order.
std::vector<HarmonicCoefficient> harmonic_coefficients(const std::function<double(std::span<const double>)>& h,
                                                       int max_degree, int grid_order = 64);

/// Fixed rotation set: 90 and 180 degree coordinate rotations followed by three
/// random rotations drawn from `seed`. Six matrices for N = 2 and N = 3.
std::vector<Matrix> rotation_catalog(int N, std::uint64_t seed = 0x5eedULL);

struct RotationDetection {
  int rotation = 0;
  double radius = 0.0;
  /// max |coefficient| of omega -> g(r omega) - g(r A omega).
  double max_direct = 0.0;
  /// max |coefficient| of alpha -> spherical_moment(g, A, r, R, alpha).
  double max_moment = 0.0;
};

/// Harmonic detector for g(r .) = g(r A .) on S^2 for every rotation and radius.
std::vector<RotationDetection> rotation_detector(const InitialDataND& g, std::span<const Matrix> rotations,
                                                 std::span<const double> radii, int max_degree = 4);

}  // namespace heatlevel
