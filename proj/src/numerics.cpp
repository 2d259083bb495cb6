#include "heatlevel/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "heatlevel/errors.hpp"

namespace heatlevel::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Legendre P_n and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

template <typename Real>
std::pair<Real, Real> legendre_with_derivative_t(int n, Real x) {
  Real p0 = 1;
  Real p1 = x;
  if (n == 0) return {Real(1), Real(0)};
  for (int k = 2; k <= n; ++k) {
    const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

// Gauss-Legendre nodes and weights on [-1, 1] in extended precision.
std::pair<std::vector<long double>, std::vector<long double>> gauss_extended(int order) {
  std::vector<long double> x(static_cast<std::size_t>(order)), w(static_cast<std::size_t>(order));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    long double r = std::cos(pi * (i + 0.75L) / (order + 0.5L));
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, d] = legendre_with_derivative_t<long double>(order, r);
      const long double dx = p / d;
      r -= dx;
      if (std::abs(dx) <= 1e-19L) break;
    }
    const long double d = legendre_with_derivative_t<long double>(order, r).second;
    const long double wi = 2 / ((1 - r * r) * d * d);
    x[static_cast<std::size_t>(i)] = -r;
    x[static_cast<std::size_t>(order - 1 - i)] = r;
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(order - 1 - i)] = wi;
  }
  if (order % 2 == 1) x[static_cast<std::size_t>(order / 2)] = 0;
  return {x, w};
}

const QuadratureRule& reference_rule(int order) {
  static const QuadratureRule g10 = gauss_nodes(10);
  static const QuadratureRule g20 = gauss_nodes(20);
  return order == 10 ? g10 : g20;
}

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;
};

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "integrand is not finite at x = " << x;
    throw EvaluationError(os.str(), x);
  }
  return y;
}

Panel estimate_panel(const RealFunction& f, double lo, double hi) {
  const QuadratureRule& coarse = reference_rule(10);
  const QuadratureRule& fine = reference_rule(20);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double g10 = 0.0;
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i)
    g10 += coarse.weights[i] * checked(f, mid + half * coarse.nodes[i]);
  double g20 = 0.0;
  double a20 = 0.0;
  for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
    const double y = checked(f, mid + half * fine.nodes[i]);
    g20 += fine.weights[i] * y;
    a20 += fine.weights[i] * std::abs(y);
  }
  return {lo, hi, g20 * half, std::abs(g20 - g10) * half, a20 * half};
}

// Neumaier-compensated sum in the order given.
template <typename Range, typename Proj>
double compensated_sum(const Range& r, Proj proj) {
  double s = 0.0;
  double c = 0.0;
  for (const auto& item : r) {
    const double x = proj(item);
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

bool negative(double v) { return v < 0.0; }

}  // namespace

double QuadratureRule::apply(const RealFunction& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

QuadratureRule gauss_nodes(int order, Interval interval) {
  if (order < 1) throw InputError("gauss_nodes: order must be >= 1");
  if (!(interval.lo < interval.hi)) throw InputError("gauss_nodes: invalid interval (lo >= hi)");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, d] = legendre_with_derivative(order, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    dp = legendre_with_derivative(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo_idx = static_cast<std::size_t>(i);
    const auto hi_idx = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo_idx] = -x;
    rule.nodes[hi_idx] = x;
    rule.weights[lo_idx] = w;
    rule.weights[hi_idx] = w;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;

  const double scale = 0.5 * interval.width();
  const double shift = 0.5 * (interval.lo + interval.hi);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = shift + scale * rule.nodes[i];
    rule.weights[i] *= scale;
  }
  return rule;
}

QuadratureResult adaptive_integrate(const RealFunction& f, Interval interval, Tolerance tol) {
  const double bp[2] = {interval.lo, interval.hi};
  return adaptive_integrate(f, std::span<const double>(bp, 2), tol);
}

QuadratureResult adaptive_integrate(const RealFunction& f, std::span<const double> breakpoints,
                                    Tolerance tol) {
  if (breakpoints.size() < 2) throw InputError("adaptive_integrate: need at least two breakpoints");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw InputError("adaptive_integrate: invalid interval (lo >= hi)");
  if (!(tol.rel >= 0.0) || !(tol.abs >= 0.0)) throw InputError("adaptive_integrate: negative tolerance");

  std::vector<Panel> panels;
  panels.reserve(64);
  // Max-heap on error; ties go to the leftmost panel.
  auto worse = [&panels](std::size_t a, std::size_t b) {
    if (panels[a].error != panels[b].error) return panels[a].error < panels[b].error;
    return panels[a].lo > panels[b].lo;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);

  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    panels.push_back(estimate_panel(f, breakpoints[i], breakpoints[i + 1]));
    heap.push(panels.size() - 1);
    value += panels.back().value;
    error += panels.back().error;
    abs_value += panels.back().abs_value;
  }

  auto done = [&]() {
    const double target = std::max(tol.rel * std::abs(value), tol.abs);
    const double roundoff = 50.0 * kEps * abs_value;
    return error <= target || error <= roundoff;
  };

  while (!done()) {
    if (static_cast<int>(panels.size()) >= tol.max_panels) {
      std::ostringstream os;
      os << "adaptive_integrate: no convergence after " << panels.size()
         << " panels (error estimate " << error << ")";
      throw ConvergenceError(os.str(), value, error);
    }
    const std::size_t idx = heap.top();
    heap.pop();
    const Panel p = panels[idx];
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(p.lo < mid && mid < p.hi)) {
      throw ConvergenceError("adaptive_integrate: panel cannot be split further", value, error);
    }
    Panel left = estimate_panel(f, p.lo, mid);
    Panel right = estimate_panel(f, mid, p.hi);
    value += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    abs_value += left.abs_value + right.abs_value - p.abs_value;
    panels[idx] = left;
    heap.push(idx);
    panels.push_back(right);
    heap.push(panels.size() - 1);
  }

  // Final totals in a fixed, position-sorted order.
  std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  QuadratureResult out;
  out.value = compensated_sum(panels, [](const Panel& p) { return p.value; });
  out.error = compensated_sum(panels, [](const Panel& p) { return p.error; });
  out.panels = static_cast<int>(panels.size());
  out.evaluations = out.panels * 30;
  return out;
}

QuadratureResult integrate_singular_weight(const RealFunction& f, double kappa, Tolerance tol) {
  if (!(kappa > -1.0)) throw InputError("integrate_singular_weight: exponent must be > -1");
  const double power = 2.0 * kappa + 1.0;
  const bool integer_power = power == std::floor(power) && power >= 0.0 && power <= 64.0;
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double w = integer_power ? std::pow(s, static_cast<int>(power)) : std::pow(s, power);
    return f(std::cos(theta)) * w;
  };
  const double bp[3] = {0.0, 0.5 * std::numbers::pi, std::numbers::pi};
  return adaptive_integrate(integrand, std::span<const double>(bp, 3), tol);
}

ExtendedQuadrature integrate_singular_weight_extended(const std::function<long double(long double)>& f,
                                                      double kappa, int order) {
  if (!(kappa > -1.0)) throw InputError("integrate_singular_weight_extended: exponent must be > -1");
  const double power = 2.0 * kappa + 1.0;
  if (power != std::floor(power)) {
    throw InputError("integrate_singular_weight_extended: 2 kappa + 1 must be a non-negative integer");
  }
  if (order < 1) throw InputError("integrate_singular_weight_extended: order must be >= 1");
  const int ipow = static_cast<int>(power);
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  auto rule_sum = [&](int n) {
    auto [x, w] = gauss_extended(n);
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long double theta = half_pi * (1 + x[i]);
      long double weight = 1;
      const long double st = std::sin(theta);
      for (int p = 0; p < ipow; ++p) weight *= st;
      s += w[i] * f(std::cos(theta)) * weight;
    }
    return s * half_pi;
  };
  const long double coarse = rule_sum(order);
  const long double fine = rule_sum(2 * order);
  return {fine, std::abs(fine - coarse)};
}

std::vector<Bracket> sign_scan(const RealFunction& f, std::span<const double> grid) {
  if (grid.size() < 2) throw InputError("sign_scan: grid needs at least two points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1])) throw InputError("sign_scan: grid must be strictly increasing");

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "sign_scan: non-finite value at grid node " << i << " (x = " << grid[i] << ")";
      throw EvaluationError(os.str(), grid[i]);
    }
  }
  std::vector<Bracket> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if (a != 0.0 && b != 0.0 && negative(a) != negative(b))
      out.push_back({grid[i], grid[i + 1], a, b});
  }
  return out;
}

RootResult refine_root(const RealFunction& f, const Bracket& bracket, double tol) {
  if (!(bracket.lo < bracket.hi)) throw InputError("refine_root: bracket needs lo < hi");
  if (bracket.f_lo == 0.0 || bracket.f_hi == 0.0 || negative(bracket.f_lo) == negative(bracket.f_hi))
    throw InputError("refine_root: bracket end values must have opposite signs");
  if (!(tol > 0.0)) throw InputError("refine_root: tol must be positive");

  double a = bracket.lo;
  double b = bracket.hi;
  double fa = bracket.f_lo;
  double fb = bracket.f_hi;
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 1; iter <= 500; ++iter) {
    if (negative(fb) == negative(fc) && fb != 0.0) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = std::max(0.5 * tol, kEps * std::abs(b));
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol1 || fb == 0.0) return {b, std::abs(c - b), iter};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if (!std::isfinite(fb)) throw EvaluationError("refine_root: non-finite function value", b);
  }
  return {b, std::abs(c - b), 500};
}

double fd_heat_residual(const SpaceTimeFunction& u, std::span<const double> x, double t, double h,
                        double dt) {
  if (!(h > 0.0) || !(dt > 0.0)) throw InputError("fd_heat_residual: steps must be positive");
  if (!(t - 2.0 * dt > 0.0)) throw InputError("fd_heat_residual: time stencil leaves t > 0");
  std::vector<double> y(x.begin(), x.end());

  const double u0 = u(y, t);
  double laplacian = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double xi = y[i];
    double s[4];
    const double offsets[4] = {-2.0 * h, -h, h, 2.0 * h};
    for (int k = 0; k < 4; ++k) {
      y[i] = xi + offsets[k];
      s[k] = u(y, t);
    }
    y[i] = xi;
    laplacian += (-s[0] + 16.0 * s[1] - 30.0 * u0 + 16.0 * s[2] - s[3]) / (12.0 * h * h);
  }
  const double um2 = u(y, t - 2.0 * dt);
  const double um1 = u(y, t - dt);
  const double up1 = u(y, t + dt);
  const double up2 = u(y, t + 2.0 * dt);
  const double dudt = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * dt);
  return std::abs(dudt - laplacian);
}

double default_space_step(double t) { return std::max(1e-3, 1e-2 * std::sqrt(t)); }

double default_time_step(double t) { return 2e-3 * t; }

}  // namespace heatlevel::numerics
