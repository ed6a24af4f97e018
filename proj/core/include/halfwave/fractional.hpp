#pragma once

#include <span>

#include "halfwave/profile.hpp"

namespace halfwave {

/// Surface measure of the unit sphere S^{n-1}: 2, 2*pi, 4*pi for n = 1,2,3.
double sphere_surface_area(int n_dim);

/// Normalizer B_n of the principal-value form of the half Laplacian,
///   (-Lap)^{1/2} f(x) = B_n PV int (f(x) - f(x+y)) / |y|^{n+1} dy,
/// computed by quadrature and cached.  The closed forms (1/pi, 1/(2 pi),
/// 1/pi^2 for n = 1,2,3) are deliberately not used here so they stay
/// available as independent checks.
double normalization_constant(int n_dim);

struct FracLaplaceOptions {
    double eps = 1e-4;       // Taylor-correction ball radius around the origin of y
    double tail_cut = 1e4;   // analytic tail beyond this |y|
    double rel_tol = 1e-9;   // target for the adaptive radial quadrature
};

/// Pointwise (-Lap)^{1/2} f at x in R^n via the singular integral.
/// Requires C^2 data on the profile (exact or declared finite-difference).
double frac_laplacian_point(const RadialProfile&, int n_dim, std::span<const double> x,
                            const FracLaplaceOptions& = {});

/// Same, exploiting radial symmetry: only |x| matters.
double frac_laplacian_radial(const RadialProfile&, int n_dim, double radius,
                             const FracLaplaceOptions& = {});

}  // namespace halfwave
