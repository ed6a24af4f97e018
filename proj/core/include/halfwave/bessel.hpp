#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace halfwave {

/// Radial kernel K_n(r) of the operator (1 - Lap)^{-1/2} on R^n, n in {1,2,3},
/// evaluated through its heat-semigroup (subordination) integral.  Supported
/// radial range [1e-3, 40]; outside it the evaluation throws (tails are
/// handled analytically by the integrators that need them).
double bessel_kernel(int n_dim, double r);

/// int_{R^n} K_n(|y|) <y>^q dy, q >= 0.  Equals 1 at q = 0 for every n.
double kernel_weighted_l1(int n_dim, double q);

/// Tabulated kernel on a geometric radial mesh, plus cached weighted norms.
class KernelTable {
public:
    static KernelTable build(int n_dim, std::size_t count = 160);

    int dim() const { return n_dim_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& values() const { return values_; }

    /// Piecewise log-linear interpolation between mesh nodes.
    double value_at(double r) const;

    /// Weighted L1 norm for this dimension, computed once per q.
    double weighted_l1(double q) const;

private:
    int n_dim_ = 1;
    std::vector<double> radii_, values_;
    mutable std::map<double, double> l1_cache_;
};

}  // namespace halfwave
