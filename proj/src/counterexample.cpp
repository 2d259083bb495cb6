#include "heatlevel/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "heatlevel/errors.hpp"
#include "heatlevel/profiles.hpp"

namespace heatlevel {

namespace {

constexpr int kBracketScan = 400;
constexpr int kLevelScan = 64;
constexpr int kPsiScan = 400;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

std::string scan_trace(const char* name, const std::vector<double>& grid, const numerics::RealFunction& f,
                       std::size_t changes) {
  std::ostringstream os;
  os.precision(17);
  os << name << " on [" << grid.front() << ", " << grid.back() << "] with " << grid.size()
     << " points: " << changes << " sign changes; value at left end " << f(grid.front())
     << ", at right end " << f(grid.back());
  return os.str();
}

double psi_bump(double s) {
  const double d = 1.0 - s * s;
  return d > 0.0 ? std::exp(1.0 - 1.0 / d) : 0.0;
}

double initial_time(const MollifierProfile& v0) { return 1e-6 * v0.a * v0.a; }

}  // namespace

double MollifierProfile::evaluate(double s) const { return profiles::mollifier(s, a); }

double MollifierProfile::derivative(double s) const { return profiles::mollifier_derivative(s, a); }

InitialProfile1D MollifierProfile::profile() const { return profiles::even_bump_1d(a); }

MollifierProfile build_mollifier(double a) {
  if (!(a > 0.0)) throw InputError("build_mollifier: a must be positive");
  return {a};
}

double f_level(const MollifierProfile& v0, double r, double t) {
  if (!(r > 0.0)) throw InputError("f_level: r must be positive");
  if (!(t > 0.0)) throw InputError("f_level: t must be positive");
  const auto p = v0.profile();
  return (r * d4v_ds4(p, r, t) - d3v_ds3(p, r, t)) / (r * r);
}

BracketRadii find_brackets(const MollifierProfile& v0, double t) {
  if (!(t > 0.0)) throw InputError("find_brackets: t must be positive");
  const auto p = v0.profile();
  const auto grid = linspace(0.1 * std::sqrt(t), 2.0 * v0.a + std::sqrt(12.0 * t), kBracketScan);
  const numerics::RealFunction d3 = [&](double s) { return d3v_ds3(p, s, t); };
  const numerics::RealFunction d4 = [&](double s) { return d4v_ds4(p, s, t); };

  const auto b3 = numerics::sign_scan(d3, grid);
  if (b3.empty()) throw StructureError("find_brackets: no zero of d3v found", scan_trace("d3v", grid, d3, 0));
  const auto b4 = numerics::sign_scan(d4, grid);
  if (b4.size() < 2)
    throw StructureError("find_brackets: fewer than two zeros of d4v found", scan_trace("d4v", grid, d4, b4.size()));

  BracketRadii br;
  br.r3 = numerics::refine_root(d3, b3.back()).root;
  br.r4 = numerics::refine_root(d4, b4.back()).root;
  br.r2 = numerics::refine_root(d4, b4[b4.size() - 2]).root;
  return br;
}

bool LevelSphereRecord::bounds_hold() const {
  if (!(t > 0.8 * a * a)) return true;
  return lower <= r && r <= upper;
}

bool LevelSphereRecord::passes() const {
  return ordering_holds() && bounds_hold() && residual_holds() && spread_holds() && caloric_holds();
}

LevelSphereRecord find_level_radius(const MollifierProfile& v0, double t, double tol) {
  if (!(tol > 0.0)) throw InputError("find_level_radius: tol must be positive");
  const auto br = find_brackets(v0, t);
  LevelSphereRecord rec;
  rec.a = v0.a;
  rec.t = t;
  rec.r2 = br.r2;
  rec.r3 = br.r3;
  rec.r4 = br.r4;
  rec.lower = std::sqrt(5.0 * t) - v0.a;
  rec.upper = v0.a + std::sqrt(12.0 * t);

  const numerics::RealFunction f = [&](double r) { return f_level(v0, r, t); };
  const auto grid = linspace(br.r3, br.r4, kLevelScan);
  for (double r : grid) rec.f_scale = std::max(rec.f_scale, std::abs(f(r)));
  const auto brackets = numerics::sign_scan(f, grid);
  if (brackets.empty())
    throw StructureError("find_level_radius: f has no sign change on (r3, r4)", scan_trace("f", grid, f, 0));
  rec.roots_found = static_cast<int>(brackets.size());
  const auto root = numerics::refine_root(f, brackets.back(), tol);
  rec.r = root.root;
  rec.bracket_width = root.bracket_width;
  rec.f_residual = std::abs(f(rec.r));
  return rec;
}

PsiProfile build_psi(const MollifierProfile& v0, double margin) {
  if (!(margin > 0.0)) throw InputError("build_psi: margin must be positive");
  const double eps = initial_time(v0);
  const double R = v0.a + margin;
  double sup = 0.0;
  for (int j = 1; j <= kPsiScan; ++j) sup = std::max(sup, std::abs(f_level(v0, R * j / kPsiScan, eps)));
  PsiProfile psi;
  psi.sup_f0 = sup;
  psi.margin = margin;
  psi.amplitude = 1.5 * (1.0 + margin) * sup / psi_bump(v0.a / R);
  const double A = psi.amplitude;
  psi.profile = {[A, R](double rho) { return A * psi_bump(rho / R); }, R};
  return psi;
}

Counterexample::Counterexample(double a, double margin)
    : v0_(build_mollifier(a)), psi_(build_psi(v0_, margin > 0.0 ? margin : a)) {}

double Counterexample::radial_part(double r, double t) const { return solve_radial_3d(psi_.profile, r, t); }

double Counterexample::f_over_r(double r, double t) const {
  if (r >= 1e-3 * std::sqrt(t)) return f_level(v0_, r, t) / r;
  // w = d3v is odd, so w / r = d4v(0) + d6v(0) r^2 / 6 + d8v(0) r^4 / 120 + ...
  // and f / r = d6v(0) / 3 + d8v(0) r^2 / 30 + O(r^4 / t^5).
  const auto p = v0_.profile();
  return kernel_derivative_1d(p, 0.0, t, 6) / 3.0 + kernel_derivative_1d(p, 0.0, t, 8) * r * r / 30.0;
}

double Counterexample::evaluate(std::span<const double> x, double t) const {
  if (!(t > 0.0)) throw InputError("eval_counterexample: t must be positive");
  if (x.size() != 3) throw InputError("eval_counterexample: point must be in R^3");
  const double r = norm(x);
  const double rad = radial_part(r, t);
  if (r == 0.0) return rad;
  if (r >= 1e-3 * std::sqrt(t)) return rad + f_level(v0_, r, t) * (x[0] / r);
  return rad + f_over_r(r, t) * x[0];
}

double Counterexample::initial_value(std::span<const double> x) const {
  const double r = norm(x);
  const double rad = psi_.profile.evaluate(r);
  if (r == 0.0) return rad;
  return rad + f_over_r(r, initial_time(v0_)) * x[0];
}

numerics::SpaceTimeFunction Counterexample::as_function() const {
  return [this](std::span<const double> x, double t) { return evaluate(x, t); };
}

double eval_counterexample(const Counterexample& u, std::span<const double> x, double t) { return u.evaluate(x, t); }

std::vector<LevelSphereRecord> counterexample_sweep(double a, std::span<const double> t_grid, double tol,
                                                    SweepOptions options) {
  const Counterexample u(a);
  return counterexample_sweep(u, t_grid, tol, options);
}

std::vector<LevelSphereRecord> counterexample_sweep(const Counterexample& u, std::span<const double> t_grid,
                                                    double tol, SweepOptions options) {
  const double a = u.mollifier().a;
  for (double t : t_grid)
    if (!(t > 0.8 * a * a)) throw InputError("counterexample_sweep: every t must exceed 4 a^2 / 5");
  std::vector<LevelSphereRecord> out;
  for (double t : t_grid) {
    LevelSphereRecord rec;
    try {
      rec = find_level_radius(u.mollifier(), t, tol);
    } catch (const StructureError& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (t = " << t << ")";
      throw StructureError(os.str(), e.trace());
    }
    auto spread_at = [&](double radius, double& umax) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& x : sphere_points(3, radius, options.sphere_points)) {
        const double v = u.evaluate(x, t);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        umax = std::max(umax, std::abs(v));
      }
      return hi - lo;
    };
    if (options.sphere_points > 0) {
      double umax = 0.0;
      rec.sphere_spread = spread_at(rec.r, umax);
      rec.nonradial_gap = spread_at(rec.r + options.off_level * std::sqrt(t), umax);
    }
    if (options.heat_residual) {
      const Point origin{0.0, 0.0, 0.0};
      rec.u_scale = std::abs(u.evaluate(origin, t));
      const double s = rec.r / std::sqrt(3.0);
      const std::vector<Point> probes{{rec.r, 0.0, 0.0}, {-rec.r, 0.0, 0.0}, {0.0, rec.r, 0.0}, {s, s, s}};
      const auto fn = u.as_function();
      for (const auto& x : probes) {
        rec.u_scale = std::max(rec.u_scale, std::abs(u.evaluate(x, t)));
        const double res = numerics::fd_heat_residual(fn, x, t, numerics::default_space_step(t),
                                                      numerics::default_time_step(t));
        rec.heat_residual = std::max(rec.heat_residual, res);
      }
    }
    out.push_back(rec);
  }
  return out;
}

ConditionCDemo condition_c_demo(const Counterexample& u, const TimeSequence& times, double tol, int points) {
  ConditionCDemo demo;
  const auto fn = u.as_function();
  std::vector<BoundarySample> fixed;
  for (double t : times.values) {
    const auto rec = find_level_radius(u.mollifier(), t);
    const double rho = rec.r / t;
    const auto boundary = sphere_boundary(3, rho, points);
    if (fixed.empty()) {
      fixed = boundary;
      demo.fixed_radius = rho;
    }
    demo.times.push_back(t);
    demo.level_radii.push_back(rec.r);
    demo.adapted.push_back(constancy_report(fn, boundary, t, tol));
    demo.fixed.push_back(constancy_report(fn, fixed, t, tol));
  }
  return demo;
}

}  // namespace heatlevel
