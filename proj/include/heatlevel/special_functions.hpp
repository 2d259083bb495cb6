#pragma once

// Legendre polynomials of dimension N, Funk-Hecke eigenvalues, quadrature on
// S^1 and S^2, and a catalog of harmonic homogeneous polynomials in R^3.

#include <functional>
#include <span>
#include <vector>

#include "heatlevel/linalg.hpp"

namespace heatlevel {

/// Legendre polynomial of degree k in R^N, normalized so P_k(1) = 1. For N = 3
/// this is the classical P_k, for N = 2 the Chebyshev T_k.
double legendre_eval(int k, int N, double t);

/// Surface measure of the unit sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_area(int m);

/// Funk-Hecke eigenvalue of f -> int_{S^{N-1}} e^{L alpha.omega} f(alpha) dsigma(alpha)
/// on degree-k spherical harmonics, in the form obtained after k integrations
/// by parts:
///   |S^{N-2}| Gamma((N-1)/2) / (2^k Gamma(k+(N-1)/2)) L^k int e^{Lt} (1-t^2)^{k+(N-3)/2} dt.
double funk_hecke_lambda_closed(int k, int N, double L);

/// The same eigenvalue from its defining integral
///   |S^{N-2}| int e^{Lt} P_k(t) (1-t^2)^{(N-3)/2} dt.
double funk_hecke_lambda_direct(int k, int N, double L);

struct FunkHeckeEigenvalue {
  int k = 0;
  int N = 3;
  double L = 1.0;
  double lambda_closed = 0.0;
  double lambda_direct = 0.0;
  /// max |L p - lambda p| / (|lambda| max |p|) over the tested harmonics and directions.
  double eigen_residual = 0.0;
};

struct SphereGrid {
  int dimension = 3;
  int order = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(std::span<const double>)>& f) const;
};

/// N = 2: order+1 equispaced nodes on the circle (exact for trigonometric
/// degree <= order). N = 3: Gauss in cos(theta) times equispaced phi, exact
/// for spherical harmonics of degree <= order.
SphereGrid sphere_grid(int N, int order);

/// Quadrature value of int e^{L alpha.omega} f(alpha) dsigma(alpha).
double funk_hecke_apply(const std::function<double(std::span<const double>)>& f, double L,
                        const SphereGrid& grid, std::span<const double> omega);

/// Number of catalog entries of degree k in R^3 (2k + 1).
int harmonic_count(int k);

/// Real regular solid harmonics in R^3, k in 0..6, variant in 0..2k:
/// variant 0 is the zonal C_{k0}, 2m-1 is C_{km}, 2m is S_{km}.
/// E.g. degree 1 is (z, x, y); degree 2 contains 3(x^2 - y^2) and 6xy.
double harmonic_poly(int k, int variant, std::span<const double> x);

/// Planar harmonics Re/Im (x1 + i x2)^k; variant 0 is the real part.
double planar_harmonic(int k, int variant, std::span<const double> x);

/// Eigen-relation check of the Funk-Hecke transform for every harmonic of
/// degree k (N in {2, 3}) at `directions` quasi-uniform points.
FunkHeckeEigenvalue funk_hecke_record(int k, int N, double L, int directions = 50);

/// Quasi-uniform points on S^{N-1} (Fibonacci lattice for N = 3, equispaced for N = 2).
std::vector<Point> fibonacci_directions(int N, int count);

}  // namespace heatlevel
