#include "heatlevel/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "heatlevel/counterexample.hpp"
#include "heatlevel/errors.hpp"
#include "heatlevel/heat_solver.hpp"
#include "heatlevel/profiles.hpp"
#include "heatlevel/special_functions.hpp"
#include "heatlevel/symmetry_analysis.hpp"

namespace heatlevel::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kSweepTimes{10.0, 100.0, 1000.0, 10000.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(3); detail << std::scientific; }
  void require(bool ok) { pass = pass && ok; }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1: explicit bounds on the level radius.
void level_radius_bounds(const Options& o, Outcome& out) {
  const auto v0 = build_mollifier(1.0);
  double worst_width = 0.0;
  int bounds_ok = 0;
  int order_ok = 0;
  for (double t : kSweepTimes) {
    const auto rec = find_level_radius(v0, t, 1e-12);
    worst_width = std::max(worst_width, rec.bracket_width);
    const bool bounds = rec.lower <= rec.r && rec.r <= rec.upper;
    bounds_ok += bounds;
    order_ok += rec.ordering_holds();
    out.require(bounds && rec.ordering_holds());
  }
  out.require(worst_width <= 1e-12 * o.tol_scale);
  out.detail << "bounds=" << bounds_ok << "/4 ordering=" << order_ok << "/4 max_bracket_width=" << worst_width;
}

// 2: the level sphere is flat compared to a nearby sphere.
void level_sphere_flatness(const Options& o, Outcome& out) {
  const Counterexample u(1.0);
  SweepOptions opt;
  opt.heat_residual = false;
  double worst = 0.0;
  for (const auto& rec : counterexample_sweep(u, kSweepTimes, 1e-12, opt)) {
    const double ratio = rec.sphere_spread / rec.nonradial_gap;
    worst = std::max(worst, ratio);
    out.require(rec.nonradial_gap > 0.0 && rec.sphere_spread <= 1e-4 * o.tol_scale * rec.nonradial_gap);
  }
  out.detail << "max spread/gap=" << worst;
}

// 3: finite-difference heat residual of the counterexample.
void caloric(const Options& o, Outcome& out) {
  const Counterexample u(1.0);
  const auto fn = u.as_function();
  SplitMix64 rng(o.seed);
  double worst_rel = 0.0;
  double coarse_max = 0.0;
  double fine_max = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = std::pow(10.0, 2.0 * rng.uniform());
    const Matrix rot = random_rotation(3, rng);
    const double radius = (0.2 + 1.8 * rng.uniform()) * std::sqrt(10.0 * t);
    const Point x = rot.apply(Point{radius, 0.0, 0.0});
    const Point origin{0.0, 0.0, 0.0};
    const double sup_u = std::max(std::abs(u.evaluate(origin, t)), std::abs(u.evaluate(x, t)));
    const double dt = numerics::default_time_step(t);
    const double res = numerics::fd_heat_residual(fn, x, t, numerics::default_space_step(t), dt);
    worst_rel = std::max(worst_rel, res / sup_u);
    const double h = 0.1 * std::sqrt(t);
    coarse_max = std::max(coarse_max, numerics::fd_heat_residual(fn, x, t, h, dt) / sup_u);
    fine_max = std::max(fine_max, numerics::fd_heat_residual(fn, x, t, 0.5 * h, dt) / sup_u);
  }
  const double ratio = coarse_max / fine_max;
  out.require(worst_rel <= 1e-6 * o.tol_scale);
  out.require(ratio >= 8.0);
  out.detail << "max residual/sup|u|=" << worst_rel << " halving ratio=" << ratio;
}

// 4: spherical harmonics are eigenfunctions of the exponential zonal operator.
void funk_hecke(const Options& o, Outcome& out) {
  double worst_eigen = 0.0;
  double worst_lambda = 0.0;
  for (int k = 0; k <= 6; ++k)
    for (double L : {0.5, 1.0, 2.0}) {
      const auto rec = funk_hecke_record(k, 3, L);
      worst_eigen = std::max(worst_eigen, rec.eigen_residual);
      worst_lambda = std::max(worst_lambda, rel_diff(rec.lambda_direct, rec.lambda_closed));
    }
  const double e = std::numbers::e;
  const double d0 = rel_diff(funk_hecke_lambda_closed(0, 3, 1.0), 2.0 * kPi * (e - 1.0 / e));
  const double d1 = rel_diff(funk_hecke_lambda_closed(1, 3, 1.0), 4.0 * kPi / e);
  out.require(worst_eigen <= 1e-8 * o.tol_scale);
  out.require(worst_lambda <= 1e-10 * o.tol_scale);
  out.require(d0 <= 1e-12 * o.tol_scale && d1 <= 1e-12 * o.tol_scale);
  out.detail << "max eigen residual=" << worst_eigen << " max closed/direct=" << worst_lambda
             << " lambda(0,3,1) err=" << d0 << " lambda(1,3,1) err=" << d1;
}

// 5: one-dimensional symmetry and the moment detector.
void symmetry_1d(const Options& o, Outcome& out) {
  const double b = 2.0;
  const auto g = profiles::even_bump_1d(1.0);
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double t = std::ldexp(1.0, n);
    worst = std::max(worst, std::abs(solve_1d(g, t * b, t) - solve_1d(g, -t * b, t)));
  }
  worst /= g.sup_bound;
  out.require(worst <= 1e-12 * o.tol_scale);

  const auto odd = profiles::odd_part(profiles::shifted_bump_1d(0.5, 0.5));
  int fired_at = 0;
  double best_ratio = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto m = moment_1d(odd, b, std::ldexp(1.0, n));
    const double ratio = m.error > 0.0 ? std::abs(m.value) / m.error : (m.value != 0.0 ? INFINITY : 0.0);
    best_ratio = std::max(best_ratio, ratio);
    if (fired_at == 0 && ratio > 100.0) fired_at = n;
  }
  out.require(fired_at > 0);
  out.detail << "max |u(tb)-u(-tb)|/sup g=" << worst << " detector fired at n=" << fired_at
             << " max |moment|/error=" << best_ratio;
}

// 6: rotation detector in three dimensions.
void symmetry_nd(const Options& o, Outcome& out) {
  const auto rotations = rotation_catalog(3, o.seed);
  const std::vector<double> radii{0.3, 0.5, 0.7};
  auto max_coefficient = [&](const InitialDataND& g, double& direct) {
    double moment = 0.0;
    direct = 0.0;
    for (const auto& d : rotation_detector(g, rotations, radii)) {
      moment = std::max(moment, d.max_moment);
      direct = std::max(direct, d.max_direct);
    }
    return moment;
  };
  double radial_direct = 0.0;
  const auto radial = profiles::radial_bump_nd(3, 1.0);
  const double radial_moment = max_coefficient(radial, radial_direct) / radial.sup_bound;
  radial_direct /= radial.sup_bound;
  out.require(radial_moment <= 1e-10 * o.tol_scale && radial_direct <= 1e-10 * o.tol_scale);

  double direct2 = 0.0;
  double direct3 = 0.0;
  const auto g2 = profiles::perturbed_bump_nd(3, 1.0, 1e-2);
  const auto g3 = profiles::perturbed_bump_nd(3, 1.0, 1e-3);
  const double m2 = max_coefficient(g2, direct2) / g2.sup_bound;
  const double m3 = max_coefficient(g3, direct3) / g3.sup_bound;
  const double ratio = (m2 * g2.sup_bound) / (m3 * g3.sup_bound);
  out.require(m2 >= 1e-4);
  out.require(std::abs(ratio / 10.0 - 1.0) <= 0.1);
  out.detail << "radial max coefficient=" << radial_moment << " (direct " << radial_direct
             << ") perturbed max coefficient=" << m2 << " (direct " << direct2 << ") eps ratio=" << ratio;
}

// 7: sphericity from normal alignment.
void geometry(const Options& o, Outcome& out) {
  const auto circle = normal_alignment_test(sphere_boundary(2, 2.0), 1e-12 * o.tol_scale);
  const auto sphere = normal_alignment_test(sphere_boundary(3, 1.5), 1e-12 * o.tol_scale);
  const auto ellipse = normal_alignment_test(ellipse_boundary(2.0, 1.0), 1e-12 * o.tol_scale);
  const double lim = 1e-12 * o.tol_scale;
  out.require(circle.max_misalignment <= lim && circle.radius_spread <= lim);
  out.require(sphere.max_misalignment <= lim && sphere.radius_spread <= lim);
  out.require(ellipse.max_misalignment >= 0.3);
  out.detail << "circle=" << circle.max_misalignment << "/" << circle.radius_spread
             << " sphere=" << sphere.max_misalignment << "/" << sphere.radius_spread
             << " ellipse misalignment=" << ellipse.max_misalignment;
}

// 8: Gaussian data against its closed-form evolution.
void solver_oracle(const Options& o, Outcome& out) {
  SplitMix64 rng(o.seed ^ 0x8ULL);
  const double s0_1d = 0.5;
  const auto g1 = profiles::truncated_gaussian_1d(s0_1d);
  double worst_1d = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double t = 0.5 + 1.5 * rng.uniform();
    const double x = (2.0 * rng.uniform() - 1.0) * 2.0 * std::sqrt(s0_1d + t);
    worst_1d = std::max(worst_1d, rel_diff(solve_1d(g1, x, t), profiles::gaussian_evolution_1d(s0_1d, x, t)));
  }

  const double s0 = 0.1;
  const HeatSolverND solver(profiles::truncated_gaussian_nd(3, s0));
  const auto psi = profiles::truncated_gaussian_radial(s0);
  double worst_3d = 0.0;
  double worst_radial = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double t = 0.5 + 1.5 * rng.uniform();
    const Matrix rot = random_rotation(3, rng);
    const double r = 2.0 * std::sqrt(s0 + t) * rng.uniform();
    const Point x = rot.apply(Point{r, 0.0, 0.0});
    const double exact = profiles::gaussian_evolution_nd(3, s0, x, t);
    const double direct = solver.evaluate(x, t);
    const double radial = solve_radial_3d(psi, norm(x), t);
    worst_3d = std::max(worst_3d, rel_diff(direct, exact));
    worst_radial = std::max({worst_radial, rel_diff(radial, direct), rel_diff(radial, exact)});
  }
  const double lim = 1e-10 * o.tol_scale;
  out.require(worst_1d <= lim && worst_3d <= lim && worst_radial <= lim);
  out.detail << "1-D=" << worst_1d << " 3-D=" << worst_3d << " radial=" << worst_radial;
}

using Runner = std::function<void(const Options&, Outcome&)>;

struct Entry {
  CriterionInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all{
      {{1, "level radius within explicit bounds", 20.0}, level_radius_bounds},
      {{2, "level sphere flat against nearby sphere", 60.0}, level_sphere_flatness},
      {{3, "finite-difference heat residual", 30.0}, caloric},
      {{4, "zonal operator eigenrelation", 10.0}, funk_hecke},
      {{5, "1-D symmetry and moment detector", 10.0}, symmetry_1d},
      {{6, "3-D rotation detector", 60.0}, symmetry_nd},
      {{7, "normal alignment sphericity test", 1.0}, geometry},
      {{8, "Gaussian closed-form oracle", 10.0}, solver_oracle},
  };
  return all;
}

}  // namespace

std::vector<CriterionInfo> catalog() {
  std::vector<CriterionInfo> out;
  for (const auto& e : entries()) out.push_back(e.info);
  return out;
}

CriterionResult run(int id, const Options& options) {
  const auto& all = entries();
  if (id < 1 || id > static_cast<int>(all.size())) throw InputError("acceptance: unknown criterion");
  const Entry& e = all[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.info = e.info;
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    e.run(options, out);
  } catch (const std::exception& ex) {
    out.pass = false;
    out.detail << " error: " << ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.numeric_pass = out.pass;
  r.pass = out.pass && r.seconds <= e.info.runtime_limit;
  r.detail = out.detail.str();
  return r;
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> out;
  for (const auto& info : catalog()) out.push_back(run(info.id, options));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << (r.pass ? "PASS" : "FAIL") << " [" << r.info.id << "] " << r.info.name << " (" << r.seconds
     << " s, limit " << r.info.runtime_limit << " s) " << r.detail;
  if (r.numeric_pass && !r.pass) os << " runtime budget exceeded";
  return os.str();
}

}  // namespace heatlevel::acceptance
