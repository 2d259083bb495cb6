#pragma once

// Deterministic quadrature, root bracketing/refinement and finite-difference
// stencils shared by the rest of the library.

#include <functional>
#include <span>
#include <vector>

namespace heatlevel::numerics {

using RealFunction = std::function<double(double)>;

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  double apply(const RealFunction& f) const;
};

/// Gauss-Legendre rule with `order` nodes mapped affinely onto `interval`.
QuadratureRule gauss_nodes(int order, Interval interval = {-1.0, 1.0});

struct QuadratureResult {
  double value = 0.0;
  /// Sum of per-panel |G_2n - G_n| differences; a conservative bound.
  double error = 0.0;
  int evaluations = 0;
  int panels = 0;
};

struct Tolerance {
  double rel = 1e-12;
  double abs = 1e-14;
  int max_panels = 4000;
};

/// Globally adaptive composite Gauss-Legendre quadrature. Each panel is
/// estimated with the 10- and 20-point rules; the panel with the largest
/// difference is bisected until
///   error <= max(rel * |value|, abs)
/// or the error has reached the round-off floor of the integrand. Panels are
/// processed in a fixed order, so results are reproducible bit for bit.
QuadratureResult adaptive_integrate(const RealFunction& f, Interval interval, Tolerance tol = {});

/// Same, with the initial partition given by `breakpoints` (strictly
/// increasing, at least two entries).
QuadratureResult adaptive_integrate(const RealFunction& f, std::span<const double> breakpoints,
                                    Tolerance tol = {});

/// Integral of f(t) (1 - t^2)^kappa over [-1, 1], kappa > -1, computed in
/// the angle variable t = cos(theta) so the weight is never evaluated at +-1.
QuadratureResult integrate_singular_weight(const RealFunction& f, double kappa, Tolerance tol = {});

struct ExtendedQuadrature {
  long double value = 0.0L;
  /// |G_2n - G_n| in the angle variable.
  long double error = 0.0L;
};

/// Fixed-order variant of integrate_singular_weight carried out in long
/// double, for integrands whose value comes from heavy cancellation. Needs
/// 2 kappa + 1 to be a non-negative integer so the angle integrand is smooth;
/// uses Gauss rules with `order` and 2 * `order` nodes on [0, pi].
ExtendedQuadrature integrate_singular_weight_extended(const std::function<long double(long double)>& f,
                                                      double kappa, int order = 48);

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Every adjacent pair of grid nodes across which f changes sign, in grid order.
std::vector<Bracket> sign_scan(const RealFunction& f, std::span<const double> grid);

struct RootResult {
  double root;
  double bracket_width;
  int iterations;
};

/// Brent's method on a sign-change bracket; terminates when the enclosing
/// bracket is no wider than `tol` (or one ulp of the root, if larger).
RootResult refine_root(const RealFunction& f, const Bracket& bracket, double tol = 1e-12);

/// u(x, t) for x in R^N.
using SpaceTimeFunction = std::function<double(std::span<const double>, double)>;

/// |du/dt - Laplacian u| at (x, t): fourth-order central differences in every
/// space direction (step h) and in time (step dt). Needs t - 2 dt > 0.
double fd_heat_residual(const SpaceTimeFunction& u, std::span<const double> x, double t, double h,
                        double dt);

/// Spatial step used when none is given: max(1e-3, 1e-2 sqrt(t)).
double default_space_step(double t);
/// Time step used when none is given: 2e-3 t.
double default_time_step(double t);

}  // namespace heatlevel::numerics
