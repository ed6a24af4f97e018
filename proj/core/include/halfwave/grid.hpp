#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace halfwave {

/// Uniform periodic grid on [-L, L)^n together with its discrete frequency
/// lattice.  Physical nodes are x_i = -L + i*h with h = 2L/N; the frequency
/// attached to DFT index k is xi = pi*kt/L where kt is the wrapped index
/// (kt = k for k < N/2, kt = k - N for k >= N/2).
class SpectralGrid {
public:
    SpectralGrid() = default;
    SpectralGrid(int n_dim, double half_width, int points_per_axis);

    int dim() const { return n_dim_; }
    double half_width() const { return half_width_; }
    int points_per_axis() const { return points_per_axis_; }
    double spacing() const { return 2.0 * half_width_ / points_per_axis_; }
    std::size_t point_count() const;

    double coordinate(int i) const;          // x_i along one axis
    double frequency(int k) const;           // xi_k along one axis, wrapped order
    double max_frequency() const;            // pi*(N/2)/L

    /// Cell volume h^n of the quadrature rule behind discrete norms.
    double cell_volume() const;

    bool operator==(const SpectralGrid&) const = default;

private:
    int n_dim_ = 0;
    double half_width_ = 0.0;
    int points_per_axis_ = 0;
};

/// Validating factory: n in {1,2,3}, L > 0, N even and >= 8.
SpectralGrid make_grid(int n_dim, double half_width, int points_per_axis);

/// Complex samples over a grid, row-major over axes.
struct ComplexField {
    SpectralGrid grid;
    std::vector<std::complex<double>> values;
};

/// Decompose a flat row-major index into per-axis indices.
void unflatten(const SpectralGrid&, std::size_t flat, int idx[3]);

/// |x| at a flat grid index.
double radius_at(const SpectralGrid&, std::size_t flat);

/// Sample of <x/R>^{-q} on the grid (Japanese bracket <y> = sqrt(1+|y|^2)).
ComplexField weight_field(const SpectralGrid&, double q, double rescale = 1.0);

/// Sample an arbitrary radial function r -> f(r).
template <class F>
ComplexField sample_radial(const SpectralGrid& g, F&& f) {
    ComplexField out{g, std::vector<std::complex<double>>(g.point_count())};
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = f(radius_at(g, i));
    return out;
}

double l2_norm(const ComplexField&);         // sqrt(h^n sum |u|^2)
double linf_norm(const ComplexField&);
/// Quadrature h^n sum u_i w_i (no conjugation).
std::complex<double> integrate_product(const ComplexField& u, const ComplexField& w);
bool all_finite(const ComplexField&);

}  // namespace halfwave
