#include "heatlevel/symmetry_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "heatlevel/errors.hpp"
#include "heatlevel/special_functions.hpp"

namespace heatlevel {

namespace {

constexpr double kPi = std::numbers::pi;

const numerics::Tolerance kMomentTol{1e-13, 0.0, 4000};

std::string point_string(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

void snap_to_norm(Point& x, double r) {
  for (int it = 0; it < 4; ++it) {
    const double n = norm(x);
    if (n == r) return;
    for (double& c : x) c *= r / n;
  }
  // Walk one coordinate at a time by single ulps, largest first; once a walk
  // overshoots, the next (smaller, finer-grained) coordinate takes over.
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return std::abs(x[p]) > std::abs(x[q]); });
  for (std::size_t j : order) {
    if (x[j] == 0.0) break;
    const double inf = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 16; ++it) {
      const double n = norm(x);
      if (n == r) return;
      const bool shrink = n > r;
      const double before = x[j];
      x[j] = std::nextafter(x[j], shrink ? 0.0 : (x[j] > 0.0 ? inf : -inf));
      const double m = norm(x);
      if (m == r) return;
      if ((m > r) != shrink) {
        // Overshot: keep whichever side is closer and refine with the next coordinate.
        if (std::abs(m - r) > std::abs(n - r)) x[j] = before;
        break;
      }
    }
  }
  if (norm(x) == r || x.size() < 2) return;
  // Joint search: for a few ulp offsets of the largest coordinate, solve for
  // the second largest and scan the ulps around that solution. A step of the
  // smaller coordinate moves the sum of squares by much less than one ulp.
  const std::size_t p = order[0];
  const std::size_t q = order[1];
  const double inf = std::numeric_limits<double>::infinity();
  const double xp = x[p];
  const double xq = x[q];
  const double sq = xq < 0.0 ? -1.0 : 1.0;
  double hp = xp;
  double lp = xp;
  for (int dp = 0; dp <= 4; ++dp) {
    for (double cand : {hp, lp}) {
      x[p] = cand;
      x[q] = 0.0;
      const double rest = dot(x, x);
      const double target = std::sqrt(std::max(r * r - rest, 0.0));
      double up = target;
      double down = target;
      for (int k = 0; k <= 64; ++k) {
        for (double v : {up, down}) {
          x[q] = sq * v;
          if (norm(x) == r) return;
        }
        up = std::nextafter(up, inf);
        down = std::nextafter(down, 0.0);
      }
    }
    hp = std::nextafter(hp, inf);
    lp = std::nextafter(lp, -inf);
  }
  x[p] = xp;
  x[q] = xq;
}

// Orthonormal tangent basis of the plane orthogonal to the unit vector nu.
std::vector<Point> tangent_basis(const Point& nu) {
  if (nu.size() == 2) return {{-nu[1], nu[0]}};
  Point axis{0.0, 0.0, 0.0};
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(nu[i]) < std::abs(nu[smallest])) smallest = i;
  axis[smallest] = 1.0;
  const double c = dot(axis, nu);
  Point t1{axis[0] - c * nu[0], axis[1] - c * nu[1], axis[2] - c * nu[2]};
  const double n1 = norm(t1);
  for (double& v : t1) v /= n1;
  Point t2{nu[1] * t1[2] - nu[2] * t1[1], nu[2] * t1[0] - nu[0] * t1[2], nu[0] * t1[1] - nu[1] * t1[0]};
  return {t1, t2};
}

Point normalized(Point v) {
  const double n = norm(v);
  for (double& c : v) c /= n;
  return v;
}

std::vector<double> sorted_breakpoints(std::vector<double> bp) {
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace

TimeSequence TimeSequence::geometric(double first, double ratio, int count) {
  if (!(first > 0.0)) throw InputError("TimeSequence: first time must be positive");
  if (!(ratio > 1.0)) throw InputError("TimeSequence: ratio must exceed 1");
  if (count < 1) throw InputError("TimeSequence: count must be >= 1");
  TimeSequence s;
  double t = first;
  for (int i = 0; i < count; ++i, t *= ratio) s.values.push_back(t);
  return s;
}

TimeSequence TimeSequence::from_list(std::vector<double> values) {
  if (values.empty()) throw InputError("TimeSequence: empty list");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw InputError("TimeSequence: times must be positive");
    if (i > 0 && !(values[i] > values[i - 1])) throw InputError("TimeSequence: times must increase strictly");
  }
  return {std::move(values)};
}

ConstancyReport constancy_report(const numerics::SpaceTimeFunction& u, std::span<const BoundarySample> boundary,
                                 double t, double tol, double scale) {
  if (!(t > 0.0)) throw InputError("check_condition_C: times must be positive");
  if (boundary.empty()) throw InputError("check_condition_C: empty boundary");
  ConstancyReport rep;
  rep.t = t;
  rep.tolerance = tol;
  rep.samples.reserve(boundary.size());
  Point x;
  for (const auto& b : boundary) {
    x.resize(b.point.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = t * b.point[i];
    double v;
    try {
      v = u(x, t);
    } catch (const std::runtime_error& e) {
      throw EvaluationError(std::string(e.what()) + " at t = " + std::to_string(t) + ", p = " + point_string(b.point),
                            t);
    }
    if (!std::isfinite(v))
      throw EvaluationError("check_condition_C: non-finite value at p = " + point_string(b.point), t);
    rep.samples.push_back(v);
  }
  const auto [lo, hi] = std::minmax_element(rep.samples.begin(), rep.samples.end());
  rep.min = *lo;
  rep.max = *hi;
  rep.spread = rep.max - rep.min;
  double sum = 0.0;
  for (double v : rep.samples) sum += v;
  rep.mean = std::clamp(sum / static_cast<double>(rep.samples.size()), rep.min, rep.max);
  rep.scale = scale > 0.0 ? scale : std::max(std::abs(rep.min), std::abs(rep.max));
  rep.pass = rep.spread <= tol * rep.scale;
  return rep;
}

std::vector<ConstancyReport> check_condition_C(const numerics::SpaceTimeFunction& u,
                                               std::span<const BoundarySample> boundary,
                                               const TimeSequence& times, double tol, double scale) {
  std::vector<ConstancyReport> out;
  out.reserve(times.values.size());
  for (std::size_t n = 0; n < times.values.size(); ++n) {
    try {
      out.push_back(constancy_report(u, boundary, times.values[n], tol, scale));
    } catch (const EvaluationError& e) {
      throw EvaluationError(std::string(e.what()) + " (n = " + std::to_string(n + 1) + ")", e.node());
    }
  }
  return out;
}

double monotonicity_check(const HeatSolverND& solver, const Halfspace& h, std::span<const SpaceTimePoint> samples) {
  const int N = solver.dimension();
  if (static_cast<int>(h.l.size()) != N) throw InputError("monotonicity_check: direction has wrong dimension");
  if (std::abs(norm(h.l) - 1.0) > 1e-12) throw InputError("monotonicity_check: |l| must be 1");
  if (solver.data().support_radius > h.offset)
    throw InputError("monotonicity_check: support of g is not inside {x . l <= offset}");
  if (samples.empty()) throw InputError("monotonicity_check: no samples");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (static_cast<int>(s.x.size()) != N) throw InputError("monotonicity_check: sample has wrong dimension");
    if (!(dot(s.x, h.l) > h.offset))
      throw InputError("monotonicity_check: sample " + point_string(s.x) + " violates x . l > offset");
    worst = std::max(worst, solver.directional_derivative(s.x, s.t, h.l));
  }
  return worst;
}

AlignmentReport normal_alignment_test(std::span<const BoundarySample> boundary, double tol) {
  if (boundary.empty()) throw InputError("normal_alignment_test: empty boundary");
  AlignmentReport rep;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const auto& b : boundary) {
    const double r = norm(b.point);
    if (r == 0.0) throw InputError("normal_alignment_test: sample at the origin");
    const double c = dot(b.point, b.normal);
    double tang2 = 0.0;
    for (std::size_t i = 0; i < b.point.size(); ++i) {
      const double d = b.point[i] - c * b.normal[i];
      tang2 += d * d;
    }
    rep.max_misalignment = std::max(rep.max_misalignment, std::sqrt(tang2) / r);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  rep.radius_spread = rmax - rmin;
  rep.aligned = rep.max_misalignment <= tol;
  return rep;
}

std::vector<Point> sphere_points(int N, double radius, int count) {
  if (!(radius > 0.0)) throw InputError("sphere_points: radius must be positive");
  if (count < 1) throw InputError("sphere_points: count must be >= 1");
  std::vector<Point> dirs;
  if (N == 2) {
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * kPi * j / count;
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
  } else {
    dirs = fibonacci_directions(N, count);
  }
  for (auto& d : dirs) {
    for (double& c : d) c *= radius;
    snap_to_norm(d, radius);
  }
  return dirs;
}

std::vector<BoundarySample> sphere_boundary(int N, double radius, int count) {
  std::vector<BoundarySample> out;
  for (auto& p : sphere_points(N, radius, count)) {
    Point nu = normalized(p);
    auto tangents = tangent_basis(nu);
    out.push_back({std::move(p), std::move(nu), std::move(tangents)});
  }
  return out;
}

std::vector<BoundarySample> ellipse_boundary(double a, double b, int count) {
  if (!(a > 0.0 && b > 0.0)) throw InputError("ellipse_boundary: semi-axes must be positive");
  if (count < 1) throw InputError("ellipse_boundary: count must be >= 1");
  std::vector<BoundarySample> out;
  for (int j = 0; j < count; ++j) {
    const double phi = 2.0 * kPi * j / count;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Point nu = normalized({b * c, a * s});
    auto tangents = tangent_basis(nu);
    out.push_back({{a * c, b * s}, std::move(nu), std::move(tangents)});
  }
  return out;
}

std::vector<BoundarySample> ellipsoid_boundary(double a, double b, double c, int count) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw InputError("ellipsoid_boundary: semi-axes must be positive");
  std::vector<BoundarySample> out;
  for (const auto& d : fibonacci_directions(3, count)) {
    Point nu = normalized({d[0] / a, d[1] / b, d[2] / c});
    auto tangents = tangent_basis(nu);
    out.push_back({{a * d[0], b * d[1], c * d[2]}, std::move(nu), std::move(tangents)});
  }
  return out;
}

std::vector<BoundarySample> perturb_normals(std::span<const BoundarySample> boundary, double eps,
                                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<BoundarySample> out;
  out.reserve(boundary.size());
  for (const auto& b : boundary) {
    const auto basis = b.tangents.empty() ? tangent_basis(b.normal) : b.tangents;
    Point dir(b.normal.size(), 0.0);
    if (basis.size() == 1) {
      dir = basis[0];
      if (rng.uniform() < 0.5)
        for (double& v : dir) v = -v;
    } else {
      const double phi = 2.0 * kPi * rng.uniform();
      for (std::size_t i = 0; i < dir.size(); ++i)
        dir[i] = std::cos(phi) * basis[0][i] + std::sin(phi) * basis[1][i];
    }
    Point nu = b.normal;
    for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = std::cos(eps) * nu[i] + std::sin(eps) * dir[i];
    nu = normalized(std::move(nu));
    auto tangents = tangent_basis(nu);
    out.push_back({b.point, std::move(nu), std::move(tangents)});
  }
  return out;
}

numerics::QuadratureResult moment_1d(const InitialProfile1D& v0, double b, double t) {
  if (!(t > 0.0)) throw InputError("moment_1d: t must be positive");
  if (!(v0.support < b)) throw InputError("moment_1d: support of v0 must lie in (-b, b)");
  const double inv4t = 1.0 / (4.0 * t);
  auto integrand = [&](double y) { return v0.evaluate(y) * std::exp(0.5 * b * y - y * y * inv4t); };
  const double S = v0.support;
  const std::vector<double> bp{-S, 0.0, S};
  return numerics::adaptive_integrate(integrand, bp, kMomentTol);
}

numerics::QuadratureResult laplace_moment_1d(const InitialProfile1D& v0, double b, double lambda) {
  if (!(b > 0.0)) throw InputError("laplace_moment_1d: b must be positive");
  auto integrand = [&](double y) {
    const double w_plus = v0.evaluate(y) * std::exp(0.5 * b * y);
    const double w_minus = v0.evaluate(-y) * std::exp(-0.5 * b * y);
    return (w_plus + w_minus) * std::exp(-lambda * y * y);
  };
  const auto bp = sorted_breakpoints({0.0, std::min(v0.support, b), b});
  return numerics::adaptive_integrate(integrand, bp, kMomentTol);
}

double moment_nd(const InitialDataND& g, const Matrix& A, std::span<const double> x, double s,
                 TensorResolution resolution) {
  const int N = g.dimension;
  const double R = g.support_radius;
  if (static_cast<int>(x.size()) != N || A.n != N) throw InputError("moment_nd: dimension mismatch");
  if (std::abs(norm(x) - R) > 1e-10 * R) throw InputError("moment_nd: |x| must equal the support radius");
  if (N < 1 || N > 3) throw UnsupportedDimension("moment_nd: N must be 1, 2 or 3");

  std::vector<double> nodes;
  std::vector<double> weights;
  for (int p = 0; p < resolution.panels; ++p) {
    const double lo = -R + 2.0 * R * p / resolution.panels;
    const double hi = -R + 2.0 * R * (p + 1) / resolution.panels;
    const auto rule = numerics::gauss_nodes(resolution.order, {lo, hi});
    nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }
  const std::size_t n = nodes.size();
  std::size_t total = 1;
  for (int d = 0; d < N; ++d) total *= n;
  Point y(static_cast<std::size_t>(N));
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double w = 1.0;
    for (int d = N - 1; d >= 0; --d) {
      const std::size_t i = rem % n;
      rem /= n;
      y[static_cast<std::size_t>(d)] = nodes[i];
      w *= weights[i];
    }
    const double r2 = dot(y, y);
    if (r2 > R * R) continue;
    const double diff = g.evaluate(y) - g.evaluate(A.apply(y));
    if (diff == 0.0) continue;
    sum += w * std::exp(0.5 * dot(x, y) - s * r2) * diff;
  }
  return sum;
}

double spherical_moment(const InitialDataND& g, const Matrix& A, double r, double R,
                        std::span<const double> alpha, int grid_order) {
  const int N = g.dimension;
  if (!(r > 0.0)) throw InputError("spherical_moment: r must be positive");
  if (r > R) throw InputError("spherical_moment: r exceeds R, where g vanishes");
  if (static_cast<int>(alpha.size()) != N || A.n != N) throw InputError("spherical_moment: dimension mismatch");
  const SphereGrid grid = sphere_grid(N, grid_order);
  auto h = [&](std::span<const double> omega) {
    Point x(omega.begin(), omega.end());
    for (double& c : x) c *= r;
    return g.evaluate(x) - g.evaluate(A.apply(x));
  };
  return funk_hecke_apply(h, 0.5 * R * r, grid, alpha);
}

std::vector<HarmonicCoefficient> harmonic_coefficients(const std::function<double(std::span<const double>)>& h,
                                                       int max_degree, int grid_order) {
  if (max_degree < 0 || max_degree > 6) throw InputError("harmonic_coefficients: max_degree must be in 0..6");
  const SphereGrid grid = sphere_grid(3, grid_order);
  std::vector<double> hv(grid.nodes.size());
  for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = h(grid.nodes[i]);
  std::vector<HarmonicCoefficient> out;
  for (int k = 0; k <= max_degree; ++k) {
    for (int v = 0; v < harmonic_count(k); ++v) {
      double pp = 0.0;
      double hp = 0.0;
      for (std::size_t i = 0; i < hv.size(); ++i) {
        const double p = harmonic_poly(k, v, grid.nodes[i]);
        pp += grid.weights[i] * p * p;
        hp += grid.weights[i] * hv[i] * p;
      }
      out.push_back({k, v, hp / std::sqrt(pp)});
    }
  }
  return out;
}

std::vector<Matrix> rotation_catalog(int N, std::uint64_t seed) {
  if (N != 2 && N != 3) throw UnsupportedDimension("rotation_catalog: N must be 2 or 3");
  std::vector<Matrix> out;
  if (N == 3) {
    out.push_back(axis_rotation(3, 2, 0.5 * kPi));
    out.push_back(axis_rotation(3, 2, kPi));
    out.push_back(axis_rotation(3, 0, 0.5 * kPi));
  } else {
    out.push_back(axis_rotation(2, 0, 0.5 * kPi));
    out.push_back(axis_rotation(2, 0, kPi));
    out.push_back(axis_rotation(2, 0, 1.5 * kPi));
  }
  // Coordinate rotations are exact permutations up to sign.
  for (auto& m : out)
    for (double& v : m.a) v = std::round(v);
  SplitMix64 rng(seed);
  for (int i = 0; i < 3; ++i) out.push_back(random_rotation(N, rng));
  return out;
}

std::vector<RotationDetection> rotation_detector(const InitialDataND& g, std::span<const Matrix> rotations,
                                                 std::span<const double> radii, int max_degree) {
  if (g.dimension != 3) throw UnsupportedDimension("rotation_detector: the harmonic catalog lives on S^2");
  const double R = g.support_radius;
  const SphereGrid inner = sphere_grid(3, 48);
  std::vector<RotationDetection> out;
  for (std::size_t ir = 0; ir < rotations.size(); ++ir) {
    const Matrix& A = rotations[ir];
    for (double r : radii) {
      if (!(r > 0.0) || r > R) throw InputError("rotation_detector: radii must lie in (0, R]");
      auto h = [&](std::span<const double> omega) {
        Point x(omega.begin(), omega.end());
        for (double& c : x) c *= r;
        return g.evaluate(x) - g.evaluate(A.apply(x));
      };
      std::vector<double> hv(inner.nodes.size());
      for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = inner.weights[i] * h(inner.nodes[i]);
      const double L = 0.5 * R * r;
      auto moment = [&](std::span<const double> alpha) {
        double s = 0.0;
        for (std::size_t i = 0; i < hv.size(); ++i)
          if (hv[i] != 0.0) s += std::exp(L * dot(alpha, inner.nodes[i])) * hv[i];
        return s;
      };
      RotationDetection det;
      det.rotation = static_cast<int>(ir);
      det.radius = r;
      for (const auto& c : harmonic_coefficients(h, max_degree)) det.max_direct = std::max(det.max_direct, std::abs(c.value));
      for (const auto& c : harmonic_coefficients(moment, max_degree))
        det.max_moment = std::max(det.max_moment, std::abs(c.value));
      out.push_back(det);
    }
  }
  return out;
}

}  // namespace heatlevel
