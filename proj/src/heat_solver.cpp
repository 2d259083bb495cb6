#include "heatlevel/heat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatlevel/errors.hpp"
#include "heatlevel/numerics.hpp"

namespace heatlevel {

namespace {

constexpr double kPi = std::numbers::pi;

// Half-width of the kernel window in units of sqrt(t). e^{-16^2/4} = e^{-64},
// small enough that polynomial kernel factors up to degree 8 stay negligible.
constexpr double kWindow = 16.0;
constexpr int kMaxKernelOrder = 8;

// The absolute floor only matters where the window meets the flat edge of a
// C^infinity bump and the integral itself is below 1e-200.
const numerics::Tolerance kKernelTol{1e-13, 1e-200, 4000};

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0)) throw InputError(std::string(who) + ": t must be positive");
}

// Breakpoints covering [lo, hi] intersected with the kernel window around
// `center`, with panels no wider than 2 sqrt(t). Empty if the window misses.
std::vector<double> kernel_breakpoints(double lo, double hi, double center, double t) {
  const double rt = std::sqrt(t);
  const double a = std::max(lo, center - kWindow * rt);
  const double b = std::min(hi, center + kWindow * rt);
  std::vector<double> bp;
  if (!(a < b)) return bp;
  const int pieces = std::clamp(static_cast<int>(std::ceil((b - a) / (2.0 * rt))), 1, 16);
  bp.reserve(static_cast<std::size_t>(pieces) + 2);
  for (int i = 0; i <= pieces; ++i) bp.push_back(a + (b - a) * i / pieces);
  bp.back() = b;
  if (center > a && center < b) {
    bp.push_back(center);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  }
  return bp;
}

double integrate_window(const numerics::RealFunction& f, double lo, double hi, double center,
                        double t) {
  const auto bp = kernel_breakpoints(lo, hi, center, t);
  if (bp.size() < 2) return 0.0;
  return numerics::adaptive_integrate(f, bp, kKernelTol).value;
}

// Polynomial factor P_n(z, t) with d^n/dz^n e^{-z^2/4t} = P_n e^{-z^2/4t}:
// P_n = (-1)^n He_n(x) / (2t)^{n/2},  x = z / sqrt(2t).
double kernel_poly(int order, double z, double t) {
  const double scale = 1.0 / std::sqrt(2.0 * t);
  const double x = z * scale;
  double he_prev = 1.0;
  double he = x;
  if (order == 0) return 1.0;
  for (int n = 1; n < order; ++n) {
    const double next = x * he - n * he_prev;
    he_prev = he;
    he = next;
  }
  const double sign = order % 2 == 0 ? 1.0 : -1.0;
  return sign * he * std::pow(scale, order);
}

}  // namespace

double kernel_derivative_1d(const InitialProfile1D& v0, double s, double t, int order) {
  require_positive_time(t, "kernel_derivative_1d");
  if (order < 0 || order > kMaxKernelOrder) throw InputError("kernel_derivative_1d: order must be in 0..8");
  const double inv4t = 1.0 / (4.0 * t);
  auto integrand = [&](double mu) {
    const double z = s - mu;
    return kernel_poly(order, z, t) * std::exp(-z * z * inv4t) * v0.evaluate(mu);
  };
  const double integral = integrate_window(integrand, -v0.support, v0.support, s, t);
  return integral / std::sqrt(4.0 * kPi * t);
}

double solve_1d(const InitialProfile1D& v0, double s, double t) {
  require_positive_time(t, "solve_1d");
  return kernel_derivative_1d(v0, s, t, 0);
}

double d3v_ds3(const InitialProfile1D& v0, double s, double t) {
  require_positive_time(t, "d3v_ds3");
  return kernel_derivative_1d(v0, s, t, 3);
}

double d4v_ds4(const InitialProfile1D& v0, double s, double t) {
  require_positive_time(t, "d4v_ds4");
  return kernel_derivative_1d(v0, s, t, 4);
}

double solve_radial_3d(const RadialProfile& psi, double r, double t) {
  require_positive_time(t, "solve_radial_3d");
  if (!(r >= 0.0)) throw InputError("solve_radial_3d: r must be non-negative");
  const double inv4t = 1.0 / (4.0 * t);
  const bool near_origin = r < 1e-4 * std::sqrt(t);
  auto integrand = [&](double rho) {
    double k;
    if (near_origin) {
      // [e^{-(r-rho)^2/4t} - e^{-(r+rho)^2/4t}] / r
      //   = e^{-(r^2+rho^2)/4t} 2 sinh(z) / r,  z = r rho / 2t
      const double z = r * rho / (2.0 * t);
      const double z2 = z * z;
      k = std::exp(-(r * r + rho * rho) * inv4t) * (rho / t) * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
    } else {
      const double d = r - rho;
      k = -std::exp(-d * d * inv4t) * std::expm1(-r * rho / t) / r;
    }
    return rho * psi.evaluate(rho) * k;
  };
  const double integral = integrate_window(integrand, 0.0, psi.support, r, t);
  return integral / std::sqrt(4.0 * kPi * t);
}

HeatSolverND::HeatSolverND(InitialDataND g, TensorResolution resolution) : g_(std::move(g)) {
  if (g_.dimension < 1) throw InputError("HeatSolverND: dimension must be >= 1");
  if (g_.dimension > 3) throw UnsupportedDimension("HeatSolverND: direct tensor quadrature needs N <= 3");
  if (!(g_.support_radius > 0.0)) throw InputError("HeatSolverND: support radius must be positive");
  if (resolution.panels < 1 || resolution.order < 1) throw InputError("HeatSolverND: bad resolution");

  const double R = g_.support_radius;
  std::vector<double> weights;
  for (int p = 0; p < resolution.panels; ++p) {
    const double lo = -R + 2.0 * R * p / resolution.panels;
    const double hi = -R + 2.0 * R * (p + 1) / resolution.panels;
    const auto rule = numerics::gauss_nodes(resolution.order, {lo, hi});
    nodes_.insert(nodes_.end(), rule.nodes.begin(), rule.nodes.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }
  n_ = nodes_.size();

  const int N = g_.dimension;
  std::size_t total = 1;
  for (int d = 0; d < N; ++d) total *= n_;
  weighted_g_.assign(total, 0.0);
  std::vector<double> y(static_cast<std::size_t>(N));
  std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double w = 1.0;
    for (int d = N - 1; d >= 0; --d) {
      const std::size_t i = rem % n_;
      rem /= n_;
      y[static_cast<std::size_t>(d)] = nodes_[i];
      w *= weights[i];
    }
    if (norm(y) > R) continue;
    weighted_g_[flat] = w * g_.evaluate(y);
  }
}

void HeatSolverND::kernel_factors(std::span<const double> x, double t, std::vector<double>& k) const {
  const auto N = static_cast<std::size_t>(g_.dimension);
  k.resize(N * n_);
  const double inv4t = 1.0 / (4.0 * t);
  for (std::size_t d = 0; d < N; ++d)
    for (std::size_t i = 0; i < n_; ++i) {
      const double z = x[d] - nodes_[i];
      k[d * n_ + i] = std::exp(-z * z * inv4t);
    }
}

double HeatSolverND::evaluate(std::span<const double> x, double t) const {
  require_positive_time(t, "solve_nd");
  if (static_cast<int>(x.size()) != g_.dimension) throw InputError("solve_nd: point has wrong dimension");
  std::vector<double> k;
  kernel_factors(x, t, k);
  const std::size_t n = n_;
  double sum = 0.0;
  switch (g_.dimension) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) sum += k[i] * weighted_g_[i];
      break;
    case 2:
      for (std::size_t i = 0; i < n; ++i) {
        double inner = 0.0;
        const double* row = &weighted_g_[i * n];
        for (std::size_t j = 0; j < n; ++j) inner += k[n + j] * row[j];
        sum += k[i] * inner;
      }
      break;
    default:
      for (std::size_t i = 0; i < n; ++i) {
        double mid = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double* row = &weighted_g_[(i * n + j) * n];
          double inner = 0.0;
          for (std::size_t l = 0; l < n; ++l) inner += k[2 * n + l] * row[l];
          mid += k[n + j] * inner;
        }
        sum += k[i] * mid;
      }
  }
  return sum * std::pow(4.0 * kPi * t, -0.5 * g_.dimension);
}

double HeatSolverND::directional_derivative(std::span<const double> x, double t,
                                            std::span<const double> l) const {
  require_positive_time(t, "directional_derivative");
  if (static_cast<int>(x.size()) != g_.dimension || l.size() != x.size())
    throw InputError("directional_derivative: dimension mismatch");
  if (std::abs(norm(l) - 1.0) > 1e-12) throw InputError("directional_derivative: |l| must be 1");
  std::vector<double> k;
  kernel_factors(x, t, k);
  const std::size_t n = n_;
  // Accumulates sum W g K * ((x - y) . l); the kernel derivative is -1/(2t) times this.
  double sum = 0.0;
  switch (g_.dimension) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) sum += k[i] * (x[0] - nodes_[i]) * l[0] * weighted_g_[i];
      break;
    case 2:
      for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0;
        double b = 0.0;
        const double* row = &weighted_g_[i * n];
        for (std::size_t j = 0; j < n; ++j) {
          a += k[n + j] * row[j];
          b += k[n + j] * (x[1] - nodes_[j]) * row[j];
        }
        sum += k[i] * (l[0] * (x[0] - nodes_[i]) * a + l[1] * b);
      }
      break;
    default:
      for (std::size_t i = 0; i < n; ++i) {
        double a2 = 0.0;
        double b2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double* row = &weighted_g_[(i * n + j) * n];
          double a = 0.0;
          double b = 0.0;
          for (std::size_t m = 0; m < n; ++m) {
            const double kv = k[2 * n + m] * row[m];
            a += kv;
            b += kv * (x[2] - nodes_[m]);
          }
          a2 += k[n + j] * a;
          b2 += k[n + j] * (l[2] * b + l[1] * (x[1] - nodes_[j]) * a);
        }
        sum += k[i] * (b2 + l[0] * (x[0] - nodes_[i]) * a2);
      }
  }
  return -sum / (2.0 * t) * std::pow(4.0 * kPi * t, -0.5 * g_.dimension);
}

double solve_nd(const InitialDataND& g, std::span<const double> x, double t) {
  require_positive_time(t, "solve_nd");
  if (g.dimension > 3) throw UnsupportedDimension("solve_nd: direct tensor quadrature needs N <= 3");
  return HeatSolverND(g).evaluate(x, t);
}

double directional_derivative(const InitialDataND& g, std::span<const double> x, double t,
                              std::span<const double> l) {
  require_positive_time(t, "directional_derivative");
  return HeatSolverND(g).directional_derivative(x, t, l);
}

}  // namespace heatlevel
