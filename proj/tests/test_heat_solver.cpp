#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatlevel/errors.hpp"
#include "heatlevel/heat_solver.hpp"
#include "heatlevel/profiles.hpp"

using namespace heatlevel;

namespace {

constexpr double kPi = std::numbers::pi;

InitialProfile1D box() {
  InitialProfile1D p;
  p.evaluate = [](double y) { return std::abs(y) <= 1.0 ? 1.0 : 0.0; };
  p.support = 1.0;
  p.sup_bound = 1.0;
  p.even = true;
  return p;
}

// Heat kernel and its first three z-derivatives, written out by hand.
double K(double z, double t) { return std::exp(-z * z / (4 * t)) / std::sqrt(4 * kPi * t); }
double K1(double z, double t) { return -z / (2 * t) * K(z, t); }
double K2(double z, double t) { return (z * z / (4 * t * t) - 1 / (2 * t)) * K(z, t); }
double K3(double z, double t) { return (-z * z * z / (8 * t * t * t) + 3 * z / (4 * t * t)) * K(z, t); }

// Evolution of the indicator of [-1, 1] and its s-derivatives.
double box_exact(int n, double s, double t) {
  switch (n) {
    case 0: return 0.5 * (std::erf((s + 1) / (2 * std::sqrt(t))) - std::erf((s - 1) / (2 * std::sqrt(t))));
    case 1: return K(s + 1, t) - K(s - 1, t);
    case 2: return K1(s + 1, t) - K1(s - 1, t);
    case 3: return K2(s + 1, t) - K2(s - 1, t);
    case 4: return K3(s + 1, t) - K3(s - 1, t);
  }
  return NAN;
}

// Fourth-order central second difference.
template <class F>
double second_difference(F f, double s, double h) {
  return (-f(s + 2 * h) + 16 * f(s + h) - 30 * f(s) + 16 * f(s - h) - f(s - 2 * h)) / (12 * h * h);
}

double rel_err(double got, double want, double scale) { return std::abs(got - want) / scale; }

}  // namespace

TEST_CASE("box evolution and its first four derivatives") {
  const auto v0 = box();
  for (double t : {0.05, 0.5, 3.0, 40.0}) {
    for (int n = 0; n <= 4; ++n) {
      double scale = 0.0;
      std::vector<double> ss;
      for (double s = -4.0; s <= 4.0; s += 0.37) ss.push_back(s * std::max(1.0, std::sqrt(t)));
      for (double s : ss) scale = std::max(scale, std::abs(box_exact(n, s, t)));
      for (double s : ss) {
        const double got = kernel_derivative_1d(v0, s, t, n);
        CHECK(rel_err(got, box_exact(n, s, t), scale) < 1e-12);
      }
    }
  }
}

TEST_CASE("named derivative entry points agree with the generic one") {
  const auto v0 = profiles::even_bump_1d(1.0);
  for (double s : {0.0, 0.4, 2.5, -3.0}) {
    CHECK(solve_1d(v0, s, 2.0) == kernel_derivative_1d(v0, s, 2.0, 0));
    CHECK(d3v_ds3(v0, s, 2.0) == kernel_derivative_1d(v0, s, 2.0, 3));
    CHECK(d4v_ds4(v0, s, 2.0) == kernel_derivative_1d(v0, s, 2.0, 4));
  }
}

TEST_CASE("orders five to eight match differences of lower orders") {
  const auto v0 = profiles::even_bump_1d(1.0);
  for (double t : {0.5, 4.0}) {
    const double h = 0.02 * std::sqrt(t);
    for (int n = 2; n <= 6; ++n) {
      auto lower = [&](double s) { return kernel_derivative_1d(v0, s, t, n); };
      double scale = 0.0;
      for (double s = 0.0; s <= 6.0; s += 0.25) scale = std::max(scale, std::abs(kernel_derivative_1d(v0, s, t, n + 2)));
      for (double s = 0.1; s <= 6.0; s += 0.5) {
        const double fd = second_difference(lower, s, h);
        CHECK(rel_err(kernel_derivative_1d(v0, s, t, n + 2), fd, scale) < 1e-6);
      }
    }
  }
}

TEST_CASE("the second s-derivative is the time derivative") {
  const auto v0 = profiles::shifted_bump_1d(0.3, 0.6);
  for (double t : {0.2, 1.0, 10.0}) {
    const double dt = 1e-3 * t;
    for (double s : {-1.0, 0.0, 0.7, 2.0}) {
      const double vt = (-solve_1d(v0, s, t + 2 * dt) + 8 * solve_1d(v0, s, t + dt) - 8 * solve_1d(v0, s, t - dt) +
                         solve_1d(v0, s, t - 2 * dt)) /
                        (12 * dt);
      const double scale = std::abs(kernel_derivative_1d(v0, 0.3, t, 2)) + 1e-300;
      CHECK(rel_err(kernel_derivative_1d(v0, s, t, 2), vt, scale) < 1e-8);
    }
  }
}

TEST_CASE("odd derivatives of an even profile are odd in s") {
  const auto v0 = profiles::even_bump_1d(1.0);
  for (int n : {1, 3, 5, 7}) {
    CHECK(std::abs(kernel_derivative_1d(v0, 0.0, 3.0, n)) < 1e-16);
    for (double s : {0.5, 1.7, 4.0}) {
      const double p = kernel_derivative_1d(v0, s, 3.0, n);
      const double m = kernel_derivative_1d(v0, -s, 3.0, n);
      CHECK(std::abs(p + m) <= 1e-12 * std::abs(p));
    }
  }
}

TEST_CASE("truncated Gaussian in 1-D follows the closed form") {
  const double s0 = 0.5;
  const auto v0 = profiles::truncated_gaussian_1d(s0);
  CHECK(v0.support == doctest::Approx(13.0 * std::sqrt(s0)));
  CHECK(profiles::truncation_radius(s0) == v0.support);
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    for (double s : {0.0, 0.3, 1.0, 2.5, -6.0}) {
      const double T = s0 + t;
      const double g = profiles::gaussian_evolution_1d(s0, s, t);
      CHECK(solve_1d(v0, s, t) == doctest::Approx(g).epsilon(1e-13));
      // First two s-derivatives of the closed form.
      CHECK(rel_err(kernel_derivative_1d(v0, s, t, 1), -s / (2 * T) * g, std::sqrt(s0 / T) / std::sqrt(T)) < 1e-12);
      CHECK(rel_err(kernel_derivative_1d(v0, s, t, 2), (s * s / (4 * T * T) - 1 / (2 * T)) * g, std::sqrt(s0 / T) / T) <
            1e-12);
    }
  }
}

TEST_CASE("radial reduction in R^3 matches the Gaussian closed form") {
  const double s0 = 0.2;
  const auto psi = profiles::truncated_gaussian_radial(s0);
  for (double t : {0.05, 1.0, 25.0}) {
    const double peak = std::pow(s0 / (s0 + t), 1.5);
    const double rt = std::sqrt(t);
    for (double r : {0.0, 1e-9 * rt, 0.9e-4 * rt, 1.1e-4 * rt, 0.1 * rt, rt, 3.0 * rt, 6.0 * rt}) {
      const double x[3] = {r, 0.0, 0.0};
      const double want = profiles::gaussian_evolution_nd(3, s0, x, t);
      CHECK(rel_err(solve_radial_3d(psi, r, t), want, peak) < 1e-12);
    }
  }
}

TEST_CASE("radial reduction is continuous across the near-origin branch") {
  const RadialProfile psi{[](double rho) { return profiles::unit_bump(rho, 0.0, 1.0); }, 1.0};
  const double t = 0.7;
  const double edge = 1e-4 * std::sqrt(t);
  const double below = solve_radial_3d(psi, std::nextafter(edge, 0.0), t);
  const double above = solve_radial_3d(psi, edge, t);
  CHECK(std::abs(below - above) <= 1e-14 * std::abs(above));
  CHECK(std::abs(solve_radial_3d(psi, 0.0, t) - above) <= 1e-8 * std::abs(above));
}

TEST_CASE("radial reduction agrees with tensor quadrature") {
  const auto g = profiles::radial_bump_nd(3, 1.0);
  const RadialProfile psi{[](double rho) { return profiles::unit_bump(rho, 0.0, 1.0); }, 1.0};
  const HeatSolverND solver(g);
  for (double t : {0.05, 0.3, 2.0}) {
    const double scale = solve_radial_3d(psi, 0.0, t);
    for (double r : {0.0, 0.3, 0.9, 1.6}) {
      const double x[3] = {r / std::sqrt(3.0), -r / std::sqrt(3.0), r / std::sqrt(3.0)};
      CHECK(rel_err(solver.evaluate(x, t), solve_radial_3d(psi, r, t), scale) < 1e-10);
    }
  }
}

TEST_CASE("tensor quadrature reproduces Gaussians in one to three dimensions") {
  const double s0 = 0.1;
  for (int N = 1; N <= 3; ++N) {
    const HeatSolverND solver(profiles::truncated_gaussian_nd(N, s0));
    CHECK(solver.dimension() == N);
    for (double t : {0.5, 1.0, 2.0}) {
      const double peak = std::pow(s0 / (s0 + t), 0.5 * N);
      for (double c : {0.0, 0.4, 1.3}) {
        std::vector<double> x(static_cast<std::size_t>(N), c);
        x[0] = -c;
        const double want = profiles::gaussian_evolution_nd(N, s0, x, t);
        CHECK(rel_err(solver.evaluate(x, t), want, peak) < 1e-12);
        CHECK(solve_nd(solver.data(), x, t) == solver.evaluate(x, t));
      }
    }
  }
}

TEST_CASE("directional derivative matches central differences") {
  const double center[3] = {0.2, -0.1, 0.3};
  const auto g = profiles::off_center_bump_nd(center, 0.5, 1.0);
  const HeatSolverND solver(g);
  const double l[3] = {0.6, 0.0, 0.8};
  const double t = 0.4;
  const double h = 1e-3;
  for (double c : {0.0, 0.5, 1.5}) {
    const double x[3] = {c, 0.3, -c};
    double xp[3], xm[3], xp2[3], xm2[3];
    for (int i = 0; i < 3; ++i) {
      xp[i] = x[i] + h * l[i];
      xm[i] = x[i] - h * l[i];
      xp2[i] = x[i] + 2 * h * l[i];
      xm2[i] = x[i] - 2 * h * l[i];
    }
    const double fd = (-solver.evaluate(xp2, t) + 8 * solver.evaluate(xp, t) - 8 * solver.evaluate(xm, t) +
                       solver.evaluate(xm2, t)) /
                      (12 * h);
    const double d = solver.directional_derivative(x, t, l);
    CHECK(std::abs(d - fd) < 1e-9 * (std::abs(fd) + solver.evaluate(x, t)));
    CHECK(directional_derivative(g, x, t, l) == d);
  }
}

TEST_CASE("heat solver preconditions") {
  const auto v0 = profiles::even_bump_1d(1.0);
  CHECK_THROWS_AS(solve_1d(v0, 0.0, 0.0), InputError);
  CHECK_THROWS_AS(d3v_ds3(v0, 0.0, -1.0), InputError);
  CHECK_THROWS_AS(kernel_derivative_1d(v0, 0.0, 1.0, 9), InputError);
  CHECK_THROWS_AS(kernel_derivative_1d(v0, 0.0, 1.0, -1), InputError);

  const RadialProfile psi{[](double) { return 1.0; }, 1.0};
  CHECK_THROWS_AS(solve_radial_3d(psi, -1.0, 1.0), InputError);
  CHECK_THROWS_AS(solve_radial_3d(psi, 1.0, 0.0), InputError);

  InitialDataND g4{[](std::span<const double>) { return 1.0; }, 4, 1.0, 1.0};
  CHECK_THROWS_AS(HeatSolverND{g4}, UnsupportedDimension);
  const double x4[4] = {0, 0, 0, 0};
  CHECK_THROWS_AS(solve_nd(g4, x4, 1.0), UnsupportedDimension);

  const HeatSolverND solver(profiles::radial_bump_nd(3, 1.0));
  const double x[3] = {1.0, 0.0, 0.0};
  const double l[3] = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(solver.directional_derivative(x, 1.0, l), InputError);
  const double x2[2] = {1.0, 0.0};
  CHECK_THROWS_AS(solver.evaluate(x2, 1.0), InputError);
}
