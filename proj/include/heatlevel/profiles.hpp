#pragma once

// Concrete initial data used by the scenarios, the acceptance suite and the
// tests. Truncated Gaussians are cut at 13 sqrt(s0), where the discarded tail
// is below 1e-19 of the mass in every dimension used here (N <= 3).

#include "heatlevel/heat_solver.hpp"

namespace heatlevel::profiles {

/// exp(-1 / (a^2 - s^2)) on (-a, a), zero elsewhere.
double mollifier(double s, double a);
/// Analytic derivative of mollifier(s, a).
double mollifier_derivative(double s, double a);

/// Bump of unit height centered at `center` with radius `radius`:
/// exp(1 - 1 / (1 - ((s - center)/radius)^2)).
double unit_bump(double s, double center, double radius);

/// Even mollifier profile on [-a, a].
InitialProfile1D even_bump_1d(double a);
/// Unit bump centered at `center`; support declared as |center| + radius.
InitialProfile1D shifted_bump_1d(double center, double radius);
/// y -> g(y) - g(-y); the result is odd and may change sign.
InitialProfile1D odd_part(const InitialProfile1D& g);
/// y -> factor * g(y).
InitialProfile1D scaled(const InitialProfile1D& g, double factor);
/// e^{-mu^2 / 4 s0} truncated at |mu| = 13 sqrt(s0).
InitialProfile1D truncated_gaussian_1d(double s0);
/// Closed-form evolution of the (untruncated) Gaussian: (s0/(s0+t))^{1/2} e^{-s^2/(4(s0+t))}.
double gaussian_evolution_1d(double s0, double s, double t);

double truncation_radius(double s0);

/// Radial unit bump of radius R in R^N.
InitialDataND radial_bump_nd(int N, double R);
/// Radial bump plus eps times a unit bump of radius `off_radius` centered at
/// `offset` e_1. Everything stays inside the ball of radius R.
InitialDataND perturbed_bump_nd(int N, double R, double eps, double offset = 0.4, double off_radius = 0.4);
/// Unit bump of radius `radius` centered at `center`, declared support R.
InitialDataND off_center_bump_nd(std::span<const double> center, double radius, double R);
/// e^{-|y|^2 / 4 s0} truncated at |y| = 13 sqrt(s0).
InitialDataND truncated_gaussian_nd(int N, double s0);
/// (s0/(s0+t))^{N/2} e^{-|x|^2/(4(s0+t))}.
double gaussian_evolution_nd(int N, double s0, std::span<const double> x, double t);

/// Radial profile rho -> e^{-rho^2 / 4 s0} on [0, 13 sqrt(s0)].
RadialProfile truncated_gaussian_radial(double s0);

}  // namespace heatlevel::profiles
