#pragma once

// Heat-kernel evaluation of bounded solutions of u_t = Laplacian u with
// compactly supported initial data: 1-D convolutions and their kernel-side
// derivatives, the radial reduction in R^3, and tensor-product quadrature in
// R^N for N <= 3.

#include <functional>
#include <span>
#include <vector>

#include "heatlevel/linalg.hpp"

namespace heatlevel {

/// A 1-D initial profile. `evaluate` must vanish outside [-support, support];
/// `sup_bound` bounds |evaluate|. Differences g(y) - g(-y) are allowed, so the
/// profile is not required to be non-negative.
struct InitialProfile1D {
  std::function<double(double)> evaluate;
  double support = 1.0;
  double sup_bound = 1.0;
  bool even = false;
};

/// Initial data on R^N, vanishing outside the ball of radius `support_radius`.
struct InitialDataND {
  std::function<double(std::span<const double>)> evaluate;
  int dimension = 3;
  double support_radius = 1.0;
  double sup_bound = 1.0;
};

/// Radial profile psi(rho) on [0, support] for data psi(|x|) in R^3.
struct RadialProfile {
  std::function<double(double)> evaluate;
  double support = 1.0;
};

/// v(s, t) = (4 pi t)^{-1/2} int e^{-(s-mu)^2/4t} v0(mu) dmu.
double solve_1d(const InitialProfile1D& v0, double s, double t);

/// d^n v / ds^n for n in 0..8, computed by differentiating the kernel.
double kernel_derivative_1d(const InitialProfile1D& v0, double s, double t, int order);

/// Third derivative in s (odd in s for even profiles).
double d3v_ds3(const InitialProfile1D& v0, double s, double t);
/// Fourth derivative in s.
double d4v_ds4(const InitialProfile1D& v0, double s, double t);

/// u_rad(r, t) for radial data psi(|x|) in R^3 through
///   (4 pi t)^{-1/2} r^{-1} int_0^R rho psi(rho) [e^{-(r-rho)^2/4t} - e^{-(r+rho)^2/4t}] drho.
/// Near r = 0 the bracket divided by r is replaced by its even Taylor series.
double solve_radial_3d(const RadialProfile& psi, double r, double t);

struct TensorResolution {
  int panels = 12;
  int order = 12;
};

/// Tensor-product Gauss quadrature of the heat kernel against g over the
/// support cube [-R, R]^N. The weighted values of g are cached at
/// construction, so repeated evaluations cost O(nodes^N) arithmetic.
class HeatSolverND {
public:
  explicit HeatSolverND(InitialDataND g, TensorResolution resolution = {});

  int dimension() const { return g_.dimension; }
  const InitialDataND& data() const { return g_; }

  double evaluate(std::span<const double> x, double t) const;
  /// du/dl at (x, t) by kernel differentiation.
  double directional_derivative(std::span<const double> x, double t, std::span<const double> l) const;

private:
  void kernel_factors(std::span<const double> x, double t, std::vector<double>& k) const;

  InitialDataND g_;
  std::vector<double> nodes_;
  std::vector<double> weighted_g_;
  std::size_t n_ = 0;
};

/// One-shot version of HeatSolverND::evaluate.
double solve_nd(const InitialDataND& g, std::span<const double> x, double t);

/// One-shot version of HeatSolverND::directional_derivative. |l| must be 1.
double directional_derivative(const InitialDataND& g, std::span<const double> x, double t,
                              std::span<const double> l);

}  // namespace heatlevel
