#pragma once

// A solution of the 3-D heat equation that is not radially symmetric but has a
// sphere of radius r(t) ~ sqrt(t) as a level set at every t.
//
// With v the 1-D evolution of an even mollifier v0 and w = d^3 v / ds^3,
//   f(r, t) = d/dr (w(r, t) / r) = (r d^4v/ds^4 - d^3v/ds^3) / r^2
// is such that f(|x|, t) x_1 / |x| solves the heat equation in R^3. Adding a
// radial solution u_rad large enough to keep the initial data non-negative
// gives u = u_rad(|x|, t) + f(|x|, t) x_1 / |x|, which equals u_rad(r(t), t)
// on the sphere |x| = r(t) where f(r(t), t) = 0.

#include <span>
#include <string>
#include <vector>

#include "heatlevel/heat_solver.hpp"
#include "heatlevel/numerics.hpp"
#include "heatlevel/symmetry_analysis.hpp"

namespace heatlevel {

struct MollifierProfile {
  double a = 1.0;

  double evaluate(double s) const;
  double derivative(double s) const;
  InitialProfile1D profile() const;
};

/// v0(s) = exp(-1 / (a^2 - s^2)) on (-a, a).
MollifierProfile build_mollifier(double a);

/// (r d4v - d3v) / r^2 at (r, t); r > 0.
double f_level(const MollifierProfile& v0, double r, double t);

struct BracketRadii {
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
};

/// r3: largest zero of d3v on the scan window; r4: largest zero of d4v; r2:
/// the zero of d4v preceding r4. The window is [0.1 sqrt(t), 2a + sqrt(12t)]
/// with 400 points; zeros are refined to 1e-12.
BracketRadii find_brackets(const MollifierProfile& v0, double t);

struct LevelSphereRecord {
  double a = 0.0;
  double t = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
  double r = 0.0;
  /// sqrt(5t) - a and a + sqrt(12t).
  double lower = 0.0;
  double upper = 0.0;
  double bracket_width = 0.0;
  /// |f(r, t)| and max |f| over the scan of (r3, r4).
  double f_residual = 0.0;
  double f_scale = 0.0;
  /// Number of sign changes of f seen on (r3, r4); r is the largest root.
  int roots_found = 0;
  double sphere_spread = 0.0;
  double nonradial_gap = 0.0;
  double heat_residual = 0.0;
  /// sup |u(., t)| estimate that heat_residual is measured against.
  double u_scale = 0.0;

  bool ordering_holds() const { return r3 < r && r < r4; }
  /// The explicit bounds only apply for t > 4 a^2 / 5; vacuous otherwise.
  bool bounds_hold() const;
  bool residual_holds() const { return f_residual <= 1e-12 * f_scale; }
  bool spread_holds() const { return sphere_spread <= 1e-4 * nonradial_gap; }
  bool caloric_holds() const { return heat_residual <= 1e-6 * u_scale; }
  bool passes() const;
};

/// Root of r -> f_level(r, t) in (r3, r4) refined to width `tol`; fills the
/// bracket, bound and residual fields of the record.
LevelSphereRecord find_level_radius(const MollifierProfile& v0, double t, double tol = 1e-12);

struct PsiProfile {
  RadialProfile profile;
  double amplitude = 0.0;
  /// sup over (0, a + margin] of |f(., eps)|, eps = 1e-6 a^2.
  double sup_f0 = 0.0;
  double margin = 0.0;
};

/// Radial bump on [0, a + margin] whose value on [0, a] is at least
/// 1.5 (1 + margin) sup |f(., 0+)|.
PsiProfile build_psi(const MollifierProfile& v0, double margin);

class Counterexample {
public:
  /// margin <= 0 selects margin = a.
  explicit Counterexample(double a, double margin = 0.0);

  const MollifierProfile& mollifier() const { return v0_; }
  const PsiProfile& psi() const { return psi_; }

  double evaluate(std::span<const double> x, double t) const;
  double radial_part(double r, double t) const;
  /// f(r, t) / r, through a series in r near the origin.
  double f_over_r(double r, double t) const;
  /// psi(|x|) + f(|x|, eps) x_1 / |x| with eps = 1e-6 a^2.
  double initial_value(std::span<const double> x) const;
  numerics::SpaceTimeFunction as_function() const;

private:
  MollifierProfile v0_;
  PsiProfile psi_;
};

double eval_counterexample(const Counterexample& u, std::span<const double> x, double t);

struct SweepOptions {
  int sphere_points = 200;
  /// Off-level sphere at r + off_level sqrt(t).
  double off_level = 0.05;
  bool heat_residual = true;
};

/// One full record per t. Needs t > 4 a^2 / 5 for every t.
std::vector<LevelSphereRecord> counterexample_sweep(double a, std::span<const double> t_grid, double tol = 1e-12,
                                                    SweepOptions options = {});
std::vector<LevelSphereRecord> counterexample_sweep(const Counterexample& u, std::span<const double> t_grid,
                                                    double tol = 1e-12, SweepOptions options = {});

struct ConditionCDemo {
  std::vector<double> times;
  std::vector<double> level_radii;
  /// Boundary of B_{r(t_n) / t_n} at time t_n: the level sphere itself.
  std::vector<ConstancyReport> adapted;
  /// The first boundary kept for every t_n.
  double fixed_radius = 0.0;
  std::vector<ConstancyReport> fixed;
};

/// Condition (C) along `times`, once with the domain rescaled to follow the
/// level sphere and once with the domain frozen at its first choice.
ConditionCDemo condition_c_demo(const Counterexample& u, const TimeSequence& times, double tol, int points = 200);

}  // namespace heatlevel
