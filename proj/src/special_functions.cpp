#include "heatlevel/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "heatlevel/errors.hpp"
#include "heatlevel/numerics.hpp"

namespace heatlevel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxHarmonicDegree = 6;

void check_degree_dimension(int k, int N, const char* who) {
  if (k < 0) throw InputError(std::string(who) + ": degree must be >= 0");
  if (N < 2) throw InputError(std::string(who) + ": dimension must be >= 2");
}

// Gamma((N-1)/2) / (2^k Gamma(k + (N-1)/2)) = prod_{j<k} 1 / (2j + N - 1).
double rodrigues_constant(int k, int N) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c /= (2.0 * j + N - 1.0);
  return c;
}

const numerics::Tolerance kSpectralTol{1e-14, 0.0, 4000};

// Regular solid harmonics C_{lm}, S_{lm} for l <= lmax at x.
struct SolidHarmonics {
  std::array<std::array<double, kMaxHarmonicDegree + 1>, kMaxHarmonicDegree + 1> c{};
  std::array<std::array<double, kMaxHarmonicDegree + 1>, kMaxHarmonicDegree + 1> s{};
};

SolidHarmonics solid_harmonics(int lmax, std::span<const double> x) {
  const double X = x[0];
  const double Y = x[1];
  const double Z = x[2];
  const double r2 = X * X + Y * Y + Z * Z;
  SolidHarmonics h;
  h.c[0][0] = 1.0;
  h.s[0][0] = 0.0;
  for (int m = 0; m < lmax; ++m) {
    h.c[m + 1][m + 1] = (2 * m + 1) * (X * h.c[m][m] - Y * h.s[m][m]);
    h.s[m + 1][m + 1] = (2 * m + 1) * (Y * h.c[m][m] + X * h.s[m][m]);
  }
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m + 1; l <= lmax; ++l) {
      const double cm2 = l - 2 >= m ? h.c[l - 2][m] : 0.0;
      const double sm2 = l - 2 >= m ? h.s[l - 2][m] : 0.0;
      h.c[l][m] = ((2 * l - 1) * Z * h.c[l - 1][m] - (l + m - 1) * r2 * cm2) / (l - m);
      h.s[l][m] = ((2 * l - 1) * Z * h.s[l - 1][m] - (l + m - 1) * r2 * sm2) / (l - m);
    }
  }
  return h;
}

// (n + N - 2) P_{n+1} = (2n + N - 2) t P_n - n P_{n-1},  P_0 = 1, P_1 = t.
template <typename Real>
Real legendre_recurrence(int k, int N, Real t) {
  if (k == 0) return Real(1);
  Real p_prev = 1;
  Real p = t;
  for (int n = 1; n < k; ++n) {
    const Real next = ((2 * n + N - 2) * t * p - n * p_prev) / (n + N - 2);
    p_prev = p;
    p = next;
  }
  return p;
}

}  // namespace

double legendre_eval(int k, int N, double t) {
  check_degree_dimension(k, N, "legendre_eval");
  if (!(std::abs(t) <= 1.0)) throw InputError("legendre_eval: |t| must be <= 1");
  return legendre_recurrence<double>(k, N, t);
}

double sphere_area(int m) {
  if (m < 0) throw InputError("sphere_area: m must be >= 0");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double funk_hecke_lambda_closed(int k, int N, double L) {
  check_degree_dimension(k, N, "funk_hecke_lambda_closed");
  if (L == 0.0) throw InputError("funk_hecke_lambda_closed: L must be non-zero");
  const double kappa = k + 0.5 * (N - 3);
  const auto integral =
      numerics::integrate_singular_weight([L](double t) { return std::exp(L * t); }, kappa, kSpectralTol);
  return sphere_area(N - 2) * rodrigues_constant(k, N) * std::pow(L, k) * integral.value;
}

double funk_hecke_lambda_direct(int k, int N, double L) {
  check_degree_dimension(k, N, "funk_hecke_lambda_direct");
  if (L == 0.0) throw InputError("funk_hecke_lambda_direct: L must be non-zero");
  // The integral is L^k / (2^k (N-1)/2 ... ) times O(1) while the integrand
  // is O(e^|L|): cancellation costs ~k digits, so it is summed in long double.
  const double kappa = 0.5 * (N - 3);
  auto integrand = [k, N, L](long double t) {
    return std::exp(static_cast<long double>(L) * t) * legendre_recurrence<long double>(k, N, t);
  };
  const auto integral = numerics::integrate_singular_weight_extended(integrand, kappa, 32 + 4 * k);
  return sphere_area(N - 2) * static_cast<double>(integral.value);
}

double SphereGrid::integrate(const std::function<double(std::span<const double>)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

SphereGrid sphere_grid(int N, int order) {
  if (order < 1) throw InputError("sphere_grid: order must be >= 1");
  SphereGrid g;
  g.dimension = N;
  g.order = order;
  if (N == 2) {
    const int m = order + 1;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * kPi * j / m;
      g.nodes.push_back({std::cos(phi), std::sin(phi)});
      g.weights.push_back(2.0 * kPi / m);
    }
    return g;
  }
  if (N != 3) throw UnsupportedDimension("sphere_grid: only N = 2 and N = 3 are supported");
  const int n = order / 2 + 1;
  const int m = order + 1;
  const auto gauss = numerics::gauss_nodes(n);
  for (int i = 0; i < n; ++i) {
    const double z = gauss.nodes[static_cast<std::size_t>(i)];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * kPi * j / m;
      g.nodes.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
      g.weights.push_back(gauss.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / m);
    }
  }
  return g;
}

double funk_hecke_apply(const std::function<double(std::span<const double>)>& f, double L,
                        const SphereGrid& grid, std::span<const double> omega) {
  if (static_cast<int>(omega.size()) != grid.dimension)
    throw InputError("funk_hecke_apply: direction has wrong dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto& alpha = grid.nodes[i];
    s += grid.weights[i] * std::exp(L * dot(alpha, omega)) * f(alpha);
  }
  return s;
}

int harmonic_count(int k) { return 2 * k + 1; }

double harmonic_poly(int k, int variant, std::span<const double> x) {
  if (k < 0 || k > kMaxHarmonicDegree) throw InputError("harmonic_poly: degree must be in 0..6");
  if (variant < 0 || variant >= harmonic_count(k)) throw InputError("harmonic_poly: variant out of range");
  if (x.size() != 3) throw InputError("harmonic_poly: point must be in R^3");
  const auto h = solid_harmonics(k, x);
  if (variant == 0) return h.c[k][0];
  const int m = (variant + 1) / 2;
  return variant % 2 == 1 ? h.c[k][m] : h.s[k][m];
}

double planar_harmonic(int k, int variant, std::span<const double> x) {
  if (k < 0) throw InputError("planar_harmonic: degree must be >= 0");
  if (variant < 0 || variant > (k == 0 ? 0 : 1)) throw InputError("planar_harmonic: variant out of range");
  if (x.size() != 2) throw InputError("planar_harmonic: point must be in R^2");
  std::complex<double> z(x[0], x[1]);
  std::complex<double> p(1.0, 0.0);
  for (int i = 0; i < k; ++i) p *= z;
  return variant == 0 ? p.real() : p.imag();
}

std::vector<Point> fibonacci_directions(int N, int count) {
  if (count < 1) throw InputError("fibonacci_directions: count must be >= 1");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  if (N == 2) {
    for (int i = 0; i < count; ++i) {
      const double phi = 2.0 * kPi * (i + 0.5) / count;
      out.push_back({std::cos(phi), std::sin(phi)});
    }
    return out;
  }
  if (N != 3) throw UnsupportedDimension("fibonacci_directions: only N = 2 and N = 3 are supported");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return out;
}

FunkHeckeEigenvalue funk_hecke_record(int k, int N, double L, int directions) {
  FunkHeckeEigenvalue rec;
  rec.k = k;
  rec.N = N;
  rec.L = L;
  rec.lambda_closed = funk_hecke_lambda_closed(k, N, L);
  rec.lambda_direct = funk_hecke_lambda_direct(k, N, L);

  const bool spatial = N == 3;
  if (spatial && k > kMaxHarmonicDegree) throw InputError("funk_hecke_record: catalog covers k <= 6");
  const SphereGrid grid = sphere_grid(N, spatial ? 48 : 63);
  const auto omegas = fibonacci_directions(N, directions);
  const int variants = spatial ? harmonic_count(k) : (k == 0 ? 1 : 2);
  double worst = 0.0;
  for (int v = 0; v < variants; ++v) {
    auto p = [k, v, spatial](std::span<const double> x) {
      return spatial ? harmonic_poly(k, v, x) : planar_harmonic(k, v, x);
    };
    double pmax = 0.0;
    for (const auto& node : grid.nodes) pmax = std::max(pmax, std::abs(p(node)));
    for (const auto& omega : omegas) {
      const double lhs = funk_hecke_apply(p, L, grid, omega);
      const double rhs = rec.lambda_closed * p(omega);
      worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(rec.lambda_closed) * pmax));
    }
  }
  rec.eigen_residual = worst;
  return rec;
}

}  // namespace heatlevel
