#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "heatlevel/errors.hpp"
#include "heatlevel/profiles.hpp"
#include "heatlevel/special_functions.hpp"
#include "heatlevel/symmetry_analysis.hpp"

using namespace heatlevel;

namespace {

constexpr double kPi = std::numbers::pi;

numerics::SpaceTimeFunction as_function(const HeatSolverND& s) {
  return [&s](std::span<const double> x, double t) { return s.evaluate(x, t); };
}

RadialProfile unit_radial_bump() {
  return {[](double rho) { return profiles::unit_bump(rho, 0.0, 1.0); }, 1.0};
}

double max_abs_coefficient(const std::vector<HarmonicCoefficient>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x.value));
  return m;
}

double sphere_norm(int k, int v) {
  const auto grid = sphere_grid(3, 20);
  return std::sqrt(grid.integrate([&](std::span<const double> w) { return std::pow(harmonic_poly(k, v, w), 2); }));
}

}  // namespace

TEST_CASE("time sequences") {
  const auto g = TimeSequence::geometric(0.5, 2.0, 4);
  REQUIRE(g.values.size() == 4);
  CHECK(g.values[0] == 0.5);
  CHECK(g.values[3] == 4.0);
  CHECK(TimeSequence::from_list({1.0, 3.0}).values.size() == 2);
  CHECK_THROWS_AS(TimeSequence::geometric(0.0, 2.0, 3), InputError);
  CHECK_THROWS_AS(TimeSequence::geometric(1.0, 1.0, 3), InputError);
  CHECK_THROWS_AS(TimeSequence::from_list({1.0, 1.0}), InputError);
  CHECK_THROWS_AS(TimeSequence::from_list({-1.0, 1.0}), InputError);
  CHECK_THROWS_AS(TimeSequence::from_list({}), InputError);
}

TEST_CASE("sphere points land on the exact radius") {
  for (int N : {2, 3}) {
    for (double R : {0.3, 1.0, 7.25, 316.2}) {
      const auto pts = sphere_points(N, R, 400);
      REQUIRE(pts.size() == 400);
      int exact = 0;
      for (const auto& p : pts) {
        CHECK(std::abs(norm(p) - R) <= 2e-16 * R);
        exact += norm(p) == R ? 1 : 0;
      }
      CHECK(exact >= 398);
    }
  }
}

TEST_CASE("radial data passes condition C on every sphere") {
  const auto psi = unit_radial_bump();
  const numerics::SpaceTimeFunction u = [&psi](std::span<const double> x, double t) {
    return solve_radial_3d(psi, norm(x), t);
  };
  for (double R : {0.5, 1.0, 3.0}) {
    const auto boundary = sphere_boundary(3, R, 200);
    const auto reports = check_condition_C(u, boundary, TimeSequence::geometric(0.5, 2.0, 6), 1e-11, 1.0);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
      CHECK(r.pass);
      CHECK(r.spread >= 0.0);
      CHECK(r.spread <= 1e-11);
      CHECK(r.min <= r.mean);
      CHECK(r.mean <= r.max);
      CHECK(r.samples.size() == 200);
    }
  }
}

TEST_CASE("radial data passes condition C through tensor quadrature") {
  const HeatSolverND solver(profiles::radial_bump_nd(3, 1.0));
  const auto boundary = sphere_boundary(3, 1.0, 60);
  const auto reports = check_condition_C(as_function(solver), boundary, TimeSequence::geometric(0.5, 2.0, 4), 1e-11, 1.0);
  for (const auto& r : reports) CHECK(r.pass);
}

TEST_CASE("off-center data fails condition C") {
  const double center[3] = {0.5, 0.0, 0.0};
  const HeatSolverND solver(profiles::off_center_bump_nd(center, 0.4, 1.0));
  const auto boundary = sphere_boundary(3, 1.0, 100);
  const auto reports = check_condition_C(as_function(solver), boundary, TimeSequence::from_list({0.5, 1.0, 2.0}), 1e-4);
  bool any_fail = false;
  for (const auto& r : reports) {
    // The poles +-t e_1 alone witness a gap above the threshold.
    const double p[3] = {r.t, 0.0, 0.0};
    const double q[3] = {-r.t, 0.0, 0.0};
    const double pole_gap = std::abs(solver.evaluate(p, r.t) - solver.evaluate(q, r.t));
    CHECK(pole_gap > 1e-4 * r.scale);
    CHECK(r.scale == doctest::Approx(std::max(std::abs(r.min), std::abs(r.max))));
    any_fail = any_fail || !r.pass;
    CHECK(r.spread > 1e-4 * r.scale);
  }
  CHECK(any_fail);
}

TEST_CASE("evaluation failures carry the time index and point") {
  const numerics::SpaceTimeFunction u = [](std::span<const double> x, double t) {
    if (t > 1.5 && x[0] > 0.0) throw EvaluationError("boom", x[0]);
    return 1.0;
  };
  const auto boundary = sphere_boundary(2, 1.0, 8);
  try {
    check_condition_C(u, boundary, TimeSequence::from_list({1.0, 2.0}), 1e-8);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    const std::string what = e.what();
    CHECK(what.find("n = 2") != std::string::npos);
    CHECK(what.find("p = ") != std::string::npos);
  }
  const numerics::SpaceTimeFunction nan_u = [](std::span<const double>, double) { return NAN; };
  CHECK_THROWS_AS(constancy_report(nan_u, boundary, 1.0, 1e-8), EvaluationError);
  CHECK_THROWS_AS(constancy_report(u, {}, 1.0, 1e-8), InputError);
}

TEST_CASE("monotonicity outside the support half-space") {
  const HeatSolverND radial(profiles::radial_bump_nd(3, 1.0));
  const Halfspace h{{1.0, 0.0, 0.0}, 1.5};
  std::vector<SpaceTimePoint> samples;
  for (double x1 : {2.0, 3.0, 5.0})
    for (double t : {0.1, 1.0, 10.0}) samples.push_back({{x1, 0.4, -0.3}, t});
  CHECK(monotonicity_check(radial, h, samples) < 0.0);

  const double c1[3] = {-0.3, 0.3, 0.0};
  const double c2[3] = {0.2, -0.4, 0.0};
  const auto b1 = profiles::off_center_bump_nd(c1, 0.3, 0.9);
  const auto b2 = profiles::off_center_bump_nd(c2, 0.3, 0.9);
  InitialDataND two{[b1, b2](std::span<const double> y) { return b1.evaluate(y) + 2.0 * b2.evaluate(y); }, 3, 0.9, 2.0};
  const HeatSolverND pair(two);
  const Halfspace h1{{1.0, 0.0, 0.0}, 1.0};
  std::vector<SpaceTimePoint> far;
  for (double y : {-1.0, 0.0, 2.0})
    for (double t : {0.05, 0.5, 5.0}) far.push_back({{2.0, y, 0.5}, t});
  CHECK(monotonicity_check(pair, h1, far) < 0.0);

  const std::vector<SpaceTimePoint> inside{{{0.5, 0.0, 0.0}, 1.0}};
  CHECK_THROWS_AS(monotonicity_check(radial, h, inside), InputError);
  const Halfspace tight{{1.0, 0.0, 0.0}, 0.5};
  CHECK_THROWS_AS(monotonicity_check(radial, tight, samples), InputError);
  const Halfspace unnormalized{{2.0, 0.0, 0.0}, 1.5};
  CHECK_THROWS_AS(monotonicity_check(radial, unnormalized, samples), InputError);
}

TEST_CASE("normal alignment on circles and spheres") {
  for (int N : {2, 3}) {
    for (double R : {0.1, 2.0, 50.0}) {
      for (int count : {7, 200}) {
        const auto rep = normal_alignment_test(sphere_boundary(N, R, count), 1e-12);
        CHECK(rep.aligned);
        CHECK(rep.max_misalignment <= 1e-15);
        CHECK(rep.radius_spread <= 1e-15 * R);
      }
    }
  }
  const auto circle = normal_alignment_test(sphere_boundary(2, 2.0), 1e-12);
  CHECK(circle.max_misalignment == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(circle.radius_spread == 0.0);
}

TEST_CASE("normal alignment on an ellipse") {
  // Oracle: scan |p - (p . nu) nu| / |p| along the parameterization.
  double oracle = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double s = 0.5 * kPi * i / 200000.0;
    const double px = 2.0 * std::cos(s);
    const double py = std::sin(s);
    const double nx = std::cos(s);
    const double ny = 2.0 * std::sin(s);
    const double nn = std::hypot(nx, ny);
    const double cross = std::abs(px * ny - py * nx) / nn;
    oracle = std::max(oracle, cross / std::hypot(px, py));
  }
  const auto rep = normal_alignment_test(ellipse_boundary(2.0, 1.0), 1e-6);
  CHECK_FALSE(rep.aligned);
  CHECK(rep.max_misalignment >= 0.3);
  CHECK(rep.max_misalignment <= oracle + 1e-12);
  CHECK(rep.max_misalignment >= oracle - 1e-3);
  CHECK(rep.radius_spread == doctest::Approx(1.0));

  for (double b : {0.5, 0.99, 1.01, 3.0}) CHECK(normal_alignment_test(ellipse_boundary(1.0, b), 1e-6).max_misalignment > 0.0);
  CHECK(normal_alignment_test(ellipsoid_boundary(1.0, 1.0, 1.2), 1e-6).max_misalignment > 0.0);
  CHECK(normal_alignment_test(ellipsoid_boundary(1.5, 1.5, 1.5), 1e-12).aligned);
}

TEST_CASE("perturbed normals stay within the perturbation angle") {
  for (int N : {2, 3}) {
    const auto base = sphere_boundary(N, 1.0);
    const auto noisy = perturb_normals(base, 1e-8, 11);
    REQUIRE(noisy.size() == base.size());
    for (const auto& b : noisy) {
      CHECK(norm(b.normal) == doctest::Approx(1.0).epsilon(1e-15));
      for (const auto& tau : b.tangents) CHECK(std::abs(dot(tau, b.normal)) <= 1e-12);
    }
    const auto rep = normal_alignment_test(noisy, 1e-6);
    CHECK(rep.max_misalignment <= 1e-8 + 1e-15);
    CHECK(rep.max_misalignment >= 0.9e-8);
    CHECK(rep.radius_spread <= 1e-12);
    const auto again = perturb_normals(base, 1e-8, 11);
    CHECK(again[5].normal == noisy[5].normal);
  }
  std::vector<BoundarySample> origin{{{0.0, 0.0}, {1.0, 0.0}, {}}};
  CHECK_THROWS_AS(normal_alignment_test(origin, 1e-8), InputError);
}

TEST_CASE("boundary samples have unit normals and orthogonal tangents") {
  for (const auto& set : {sphere_boundary(3, 2.0, 50), ellipse_boundary(2.0, 1.0, 50), ellipsoid_boundary(1.0, 2.0, 3.0, 50)}) {
    for (const auto& b : set) {
      CHECK(norm(b.normal) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(b.tangents.size() == b.point.size() - 1);
      for (const auto& tau : b.tangents) {
        CHECK(std::abs(dot(tau, b.normal)) <= 1e-12);
        CHECK(norm(tau) == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("even data is symmetric along geometric times") {
  const auto g = profiles::even_bump_1d(1.0);
  const double b = 1.5;
  for (int n = 0; n <= 20; ++n) {
    const double t = std::ldexp(1.0, n);
    CHECK(std::abs(solve_1d(g, t * b, t) - solve_1d(g, -t * b, t)) <= 1e-12 * g.sup_bound);
  }
  const auto odd = profiles::odd_part(g);
  CHECK(moment_1d(odd, b, 1.0).value == 0.0);
}

TEST_CASE("one-dimensional moment matches the solution difference") {
  const std::vector<std::pair<double, double>> bumps{{0.3, 0.5}, {-0.2, 0.6}, {0.5, 0.2}, {0.1, 0.9}, {0.7, 0.25}};
  for (const auto& [c, rad] : bumps) {
    const auto g = profiles::shifted_bump_1d(c, rad);
    const auto v0 = profiles::odd_part(g);
    const double b = g.support + 0.5;
    for (double t : {0.5, 2.0}) {
      const double m = moment_1d(v0, b, t).value;
      const double diff = solve_1d(g, t * b, t) - solve_1d(g, -t * b, t);
      const double rebuilt = std::sqrt(4 * kPi * t) * std::exp(t * b * b / 4) * diff;
      CHECK(m == doctest::Approx(rebuilt).epsilon(1e-10));
      CHECK(laplace_moment_1d(v0, b, 1.0 / (4 * t)).value == doctest::Approx(m).epsilon(1e-12));
    }
  }
}

TEST_CASE("moment of y times a bump") {
  InitialProfile1D v0;
  v0.evaluate = [](double y) { return y * profiles::unit_bump(std::abs(y), 0.0, 1.0); };
  v0.support = 1.0;
  v0.sup_bound = 1.0;
  const double m = moment_1d(v0, 2.0, 1.0).value;
  // e^{by/2} favours y > 0, where v0 is positive.
  CHECK(m > 1e-3);
  CHECK_THROWS_AS(moment_1d(v0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(moment_1d(v0, 2.0, 0.0), InputError);
}

TEST_CASE("Laplace moment detector") {
  const auto even = profiles::even_bump_1d(1.0);
  const auto asym = profiles::shifted_bump_1d(0.3, 0.5);
  const double b = 1.5;
  for (int n = 1; n <= 10; ++n) {
    const double lambda = 1.0 / (4.0 * std::ldexp(1.0, n));
    CHECK(laplace_moment_1d(profiles::odd_part(even), b, lambda).value == 0.0);
    CHECK(std::abs(laplace_moment_1d(profiles::odd_part(asym), b, lambda).value) > 1e-4);
  }
  const auto v0 = profiles::odd_part(asym);
  for (double alpha : {-2.0, 0.5, 3.0}) {
    const double base = laplace_moment_1d(v0, b, 0.3).value;
    CHECK(laplace_moment_1d(profiles::scaled(v0, alpha), b, 0.3).value == doctest::Approx(alpha * base).epsilon(1e-13));
  }
  CHECK_THROWS_AS(laplace_moment_1d(v0, 0.0, 0.3), InputError);
}

TEST_CASE("N-dimensional moments") {
  const auto radial = profiles::radial_bump_nd(3, 1.0);
  const auto A = rotation_catalog(3)[1];  // 180 degrees about e_3
  const double x[3] = {0.6, 0.0, 0.8};
  CHECK(std::abs(moment_nd(radial, A, x, 0.25)) < 1e-14);
  CHECK(moment_nd(radial, Matrix::identity(3), x, 0.25) == 0.0);

  const auto g = profiles::perturbed_bump_nd(3, 1.0, 0.1);
  double largest = 0.0;
  for (const auto& d : fibonacci_directions(3, 12)) largest = std::max(largest, std::abs(moment_nd(g, A, d, 0.25)));
  CHECK(largest > 1e-4);

  // Substituting y = A z gives M(A x) = -M(x) when A is an involution.
  const Point Ax = A.apply(x);
  CHECK(moment_nd(g, A, Ax, 0.25) == doctest::Approx(-moment_nd(g, A, x, 0.25)).epsilon(1e-12));

  const double off[3] = {0.6, 0.0, 0.81};
  CHECK_THROWS_AS(moment_nd(g, A, off, 0.25), InputError);
}

TEST_CASE("spherical moments") {
  const auto radial = profiles::radial_bump_nd(3, 1.0);
  const auto rot = rotation_catalog(3);
  const double alpha[3] = {0.0, 0.6, 0.8};
  for (const auto& A : rot) CHECK(std::abs(spherical_moment(radial, A, 0.5, 1.0, alpha)) < 1e-14);

  const auto g = profiles::perturbed_bump_nd(3, 1.0, 0.1);
  const double r = 0.5;
  const double R = 1.0;
  auto h = [&](std::span<const double> w) {
    Point y(w.begin(), w.end());
    for (double& c : y) c *= r;
    return g.evaluate(y) - g.evaluate(rot[0].apply(y));
  };
  CHECK(spherical_moment(g, rot[0], r, R, alpha) ==
        doctest::Approx(funk_hecke_apply(h, 0.5 * R * r, sphere_grid(3, 48), alpha)).epsilon(1e-14));

  const auto coeffs = harmonic_coefficients(h, 4);
  CHECK(max_abs_coefficient(coeffs) >= 1e-4);

  // Each degree-k coefficient of the moment is lambda_k times that of h. Entire
  // data keeps both quadratures at round-off level.
  InitialDataND smooth{[](std::span<const double> y) { return std::exp(y[0] + 0.5 * y[1] - 0.3 * y[2]); }, 3, 1.0, 3.0};
  auto hs = [&](std::span<const double> w) {
    Point y(w.begin(), w.end());
    for (double& c : y) c *= r;
    return smooth.evaluate(y) - smooth.evaluate(rot[0].apply(y));
  };
  const auto hc = harmonic_coefficients(hs, 3, 24);
  const auto mc =
      harmonic_coefficients([&](std::span<const double> a) { return spherical_moment(smooth, rot[0], r, R, a); }, 3, 24);
  for (std::size_t i = 0; i < mc.size(); ++i) {
    const double lambda = funk_hecke_lambda_closed(mc[i].degree, 3, 0.5 * R * r);
    CHECK(std::abs(mc[i].value - lambda * hc[i].value) < 1e-12 * max_abs_coefficient(hc) * funk_hecke_lambda_closed(0, 3, 0.5 * R * r));
  }

  CHECK_THROWS_AS(spherical_moment(g, rot[0], 1.5, R, alpha), InputError);
  CHECK_THROWS_AS(spherical_moment(g, rot[0], 0.0, R, alpha), InputError);
}

TEST_CASE("harmonic coefficients") {
  CHECK(max_abs_coefficient(harmonic_coefficients([](std::span<const double>) { return 0.0; }, 6)) == 0.0);

  const double n23 = sphere_norm(2, 3);
  const auto unit = harmonic_coefficients([&](std::span<const double> w) { return harmonic_poly(2, 3, w) / n23; }, 6);
  CHECK(unit.size() == 49);
  for (const auto& c : unit) {
    if (c.degree == 2 && c.variant == 3)
      CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
    else
      CHECK(std::abs(c.value) <= 1e-12);
  }

  // w_1^2 = 1/3 + (w_1^2 - 1/3): degree 0 carries 4 pi / 3 before normalization,
  // and degree 2 carries |w_1^2 - 1/3|^2 = 16 pi / 45.
  const auto sq = harmonic_coefficients([](std::span<const double> w) { return w[0] * w[0]; }, 6);
  double deg2 = 0.0;
  for (const auto& c : sq) {
    if (c.degree == 0)
      CHECK(c.value * std::sqrt(4 * kPi) == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
    else if (c.degree == 2)
      deg2 += c.value * c.value;
    else
      CHECK(std::abs(c.value) <= 1e-13);
  }
  CHECK(deg2 == doctest::Approx(16 * kPi / 45).epsilon(1e-13));
  CHECK_THROWS_AS(harmonic_coefficients([](std::span<const double>) { return 0.0; }, 7), InputError);
}

TEST_CASE("rotation catalog") {
  for (int N : {2, 3}) {
    const auto rot = rotation_catalog(N);
    REQUIRE(rot.size() == 6);
    for (const auto& m : rot) CHECK(m.orthogonality_defect() < 1e-14);
    for (int i = 0; i < 3; ++i)
      for (double v : rot[static_cast<std::size_t>(i)].a) CHECK((v == 0.0 || v == 1.0 || v == -1.0));
    const auto same = rotation_catalog(N);
    CHECK(same[4].a == rot[4].a);
    CHECK(rotation_catalog(N, 1)[4].a != rot[4].a);
  }
  CHECK_THROWS_AS(rotation_catalog(4), UnsupportedDimension);
}

TEST_CASE("rotation detector is silent on radial data and linear in the perturbation") {
  const auto rot = rotation_catalog(3);
  const std::vector<Matrix> some{rot[0], rot[3]};
  const std::vector<double> radii{0.5};
  for (const auto& d : rotation_detector(profiles::radial_bump_nd(3, 1.0), some, radii)) {
    CHECK(d.max_direct < 1e-14);
    CHECK(d.max_moment < 1e-14);
  }
  std::vector<double> level;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    double m = 0.0;
    for (const auto& d : rotation_detector(profiles::perturbed_bump_nd(3, 1.0, eps), some, radii)) m = std::max(m, d.max_moment);
    level.push_back(m);
  }
  CHECK(level[0] > 1e-4);
  CHECK(level[0] / level[1] == doctest::Approx(10.0).epsilon(0.1));
  CHECK(level[1] / level[2] == doctest::Approx(10.0).epsilon(0.1));

  const std::vector<double> bad{1.5};
  CHECK_THROWS_AS(rotation_detector(profiles::radial_bump_nd(3, 1.0), some, bad), InputError);
  CHECK_THROWS_AS(rotation_detector(profiles::radial_bump_nd(2, 1.0), some, radii), UnsupportedDimension);
}
