#include "heatlevel/profiles.hpp"

#include <cmath>

#include "heatlevel/errors.hpp"

namespace heatlevel::profiles {

double mollifier(double s, double a) {
  const double d = a * a - s * s;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

double mollifier_derivative(double s, double a) {
  const double d = a * a - s * s;
  if (!(d > 0.0)) return 0.0;
  return std::exp(-1.0 / d) * (-2.0 * s / (d * d));
}

double unit_bump(double s, double center, double radius) {
  const double q = (s - center) / radius;
  const double d = 1.0 - q * q;
  return d > 0.0 ? std::exp(1.0 - 1.0 / d) : 0.0;
}

InitialProfile1D even_bump_1d(double a) {
  if (!(a > 0.0)) throw InputError("even_bump_1d: a must be positive");
  return {[a](double s) { return mollifier(s, a); }, a, std::exp(-1.0 / (a * a)), true};
}

InitialProfile1D shifted_bump_1d(double center, double radius) {
  if (!(radius > 0.0)) throw InputError("shifted_bump_1d: radius must be positive");
  return {[center, radius](double s) { return unit_bump(s, center, radius); },
          std::abs(center) + radius, 1.0, center == 0.0};
}

InitialProfile1D odd_part(const InitialProfile1D& g) {
  auto f = g.evaluate;
  return {[f](double y) { return f(y) - f(-y); }, g.support, 2.0 * g.sup_bound, false};
}

InitialProfile1D scaled(const InitialProfile1D& g, double factor) {
  auto f = g.evaluate;
  return {[f, factor](double y) { return factor * f(y); }, g.support, std::abs(factor) * g.sup_bound, g.even};
}

double truncation_radius(double s0) { return 13.0 * std::sqrt(s0); }

InitialProfile1D truncated_gaussian_1d(double s0) {
  if (!(s0 > 0.0)) throw InputError("truncated_gaussian_1d: s0 must be positive");
  const double cut = truncation_radius(s0);
  return {[s0, cut](double mu) { return std::abs(mu) <= cut ? std::exp(-mu * mu / (4.0 * s0)) : 0.0; },
          cut, 1.0, true};
}

double gaussian_evolution_1d(double s0, double s, double t) {
  return std::sqrt(s0 / (s0 + t)) * std::exp(-s * s / (4.0 * (s0 + t)));
}

InitialDataND radial_bump_nd(int N, double R) {
  if (!(R > 0.0)) throw InputError("radial_bump_nd: R must be positive");
  return {[R](std::span<const double> y) { return unit_bump(norm(y), 0.0, R); }, N, R, 1.0};
}

InitialDataND perturbed_bump_nd(int N, double R, double eps, double offset, double off_radius) {
  if (!(R > 0.0)) throw InputError("perturbed_bump_nd: R must be positive");
  if (offset + off_radius > R) throw InputError("perturbed_bump_nd: perturbation leaves the support ball");
  auto f = [R, eps, offset, off_radius](std::span<const double> y) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double c = i == 0 ? offset : 0.0;
      d2 += (y[i] - c) * (y[i] - c);
    }
    return unit_bump(norm(y), 0.0, R) + eps * unit_bump(std::sqrt(d2), 0.0, off_radius);
  };
  return {f, N, R, 1.0 + std::abs(eps)};
}

InitialDataND off_center_bump_nd(std::span<const double> center, double radius, double R) {
  Point c(center.begin(), center.end());
  if (norm(c) + radius > R) throw InputError("off_center_bump_nd: bump leaves the support ball");
  auto f = [c, radius](std::span<const double> y) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) d2 += (y[i] - c[i]) * (y[i] - c[i]);
    return unit_bump(std::sqrt(d2), 0.0, radius);
  };
  return {f, static_cast<int>(c.size()), R, 1.0};
}

InitialDataND truncated_gaussian_nd(int N, double s0) {
  if (!(s0 > 0.0)) throw InputError("truncated_gaussian_nd: s0 must be positive");
  const double cut = truncation_radius(s0);
  auto f = [s0, cut](std::span<const double> y) {
    const double r2 = dot(y, y);
    return r2 <= cut * cut ? std::exp(-r2 / (4.0 * s0)) : 0.0;
  };
  return {f, N, cut, 1.0};
}

double gaussian_evolution_nd(int N, double s0, std::span<const double> x, double t) {
  return std::pow(s0 / (s0 + t), 0.5 * N) * std::exp(-dot(x, x) / (4.0 * (s0 + t)));
}

RadialProfile truncated_gaussian_radial(double s0) {
  const double cut = truncation_radius(s0);
  return {[s0](double rho) { return std::exp(-rho * rho / (4.0 * s0)); }, cut};
}

}  // namespace heatlevel::profiles
