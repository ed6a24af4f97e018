#include "halfwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfwave {

SpectralGrid::SpectralGrid(int n_dim, double half_width, int points_per_axis)
    : n_dim_(n_dim), half_width_(half_width), points_per_axis_(points_per_axis) {}

std::size_t SpectralGrid::point_count() const {
    std::size_t total = 1;
    for (int d = 0; d < n_dim_; ++d) total *= static_cast<std::size_t>(points_per_axis_);
    return total;
}

double SpectralGrid::coordinate(int i) const {
    return -half_width_ + spacing() * static_cast<double>(i);
}

double SpectralGrid::frequency(int k) const {
    int wrapped = (k < points_per_axis_ / 2) ? k : k - points_per_axis_;
    return std::numbers::pi * static_cast<double>(wrapped) / half_width_;
}

double SpectralGrid::max_frequency() const {
    return std::numbers::pi * static_cast<double>(points_per_axis_ / 2) / half_width_;
}

double SpectralGrid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < n_dim_; ++d) v *= spacing();
    return v;
}

SpectralGrid make_grid(int n_dim, double half_width, int points_per_axis) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("grid half width must be positive and finite");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        throw std::invalid_argument("points per axis must be even and at least 8");
    return SpectralGrid(n_dim, half_width, points_per_axis);
}

void unflatten(const SpectralGrid& g, std::size_t flat, int idx[3]) {
    const int n = g.points_per_axis();
    idx[0] = idx[1] = idx[2] = 0;
    for (int d = g.dim() - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
}

double radius_at(const SpectralGrid& g, std::size_t flat) {
    int idx[3];
    unflatten(g, flat, idx);
    double r2 = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
        double x = g.coordinate(idx[d]);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

ComplexField weight_field(const SpectralGrid& g, double q, double rescale) {
    if (!(rescale > 0.0)) throw std::invalid_argument("weight rescale must be positive");
    ComplexField out{g, std::vector<std::complex<double>>(g.point_count())};
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double r = radius_at(g, i) / rescale;
        out.values[i] = std::pow(1.0 + r * r, -q / 2.0);
    }
    return out;
}

double l2_norm(const ComplexField& u) {
    double acc = 0.0;
    for (const auto& v : u.values) acc += std::norm(v);
    return std::sqrt(acc * u.grid.cell_volume());
}

double linf_norm(const ComplexField& u) {
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> integrate_product(const ComplexField& u, const ComplexField& w) {
    if (!(u.grid == w.grid)) throw std::invalid_argument("integrate_product: grid mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) acc += u.values[i] * w.values[i];
    return acc * u.grid.cell_volume();
}

bool all_finite(const ComplexField& u) {
    for (const auto& v : u.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace halfwave
