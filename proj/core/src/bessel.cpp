#include "halfwave/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "halfwave/fractional.hpp"
#include "quadrature_util.hpp"

namespace halfwave {

using detail::integrate_gk;
using detail::integrate_ts;

namespace {

// Heat-semigroup representation of (1 - Lap)^{-1/2}: its kernel is
//   K_n(r) = pi^{-1/2} int_0^inf t^{-1/2} e^{-t} (4 pi t)^{-n/2} e^{-r^2/(4t)} dt.
// The substitution t = (r/2) e^s folds the two exponentials into
// e^{-r cosh s} and symmetrizing s -> -s leaves
//   K_n(r) = pi^{-1/2} (4 pi)^{-n/2} (r/2)^{(1-n)/2} * 2 int_0^inf
//            cosh(((n-1)/2) s) e^{-r cosh s} ds,
// which is free of cancellation for every r > 0.
double kernel_value(int n_dim, double r) {
    const double nu = 0.5 * static_cast<double>(n_dim - 1);
    // Past r cosh(S) ~ 760 the integrand underflows; stop a little beyond.
    const double arg = 760.0 / r;
    const double S = std::acosh(std::max(arg, 2.0)) + 1.0;
    double integral = integrate_gk(
        [&](double s) { return std::cosh(nu * s) * std::exp(-r * std::cosh(s)); }, 0.0, S,
        1e-11, "subordination integral");
    double prefactor = std::pow(std::numbers::pi, -0.5) *
                       std::pow(4.0 * std::numbers::pi, -0.5 * n_dim) *
                       std::pow(0.5 * r, 0.5 * (1.0 - n_dim));
    return prefactor * 2.0 * integral;
}

}  // namespace

double bessel_kernel(int n_dim, double r) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(r >= 1e-3) || !(r <= 40.0))
        throw std::domain_error("kernel radius outside supported range [1e-3, 40]");
    return kernel_value(n_dim, r);
}

double kernel_weighted_l1(int n_dim, double q) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(q >= 0.0)) throw std::invalid_argument("weight power must be nonnegative");

    static std::map<std::pair<int, double>, double> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n_dim, q});
        if (it != cache.end()) return it->second;
    }

    const double omega = sphere_surface_area(n_dim);
    // The tanh-sinh rule probes radii down to denormals, where the
    // subordination quadrature and the factored product K * r^{n-1} both
    // break down (0 * inf); below 1e-8 use the combined short-distance
    // density K(r) r^{n-1} directly (relative error O(r^2 log r) there).
    auto near_origin_density = [n_dim](double r) {
        switch (n_dim) {
            case 1: return -(std::log(0.5 * r) + std::numbers::egamma) / std::numbers::pi;
            case 2: return std::exp(-r) / (2.0 * std::numbers::pi);
            default: return 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
        }
    };
    auto radial = [&](double r) {
        if (r <= 0.0) return 0.0;
        double bracket = std::pow(1.0 + r * r, 0.5 * q);
        if (r < 1e-8) return near_origin_density(r) * bracket;
        return kernel_value(n_dim, r) * bracket * std::pow(r, n_dim - 1);
    };
    // tanh-sinh takes the r -> 0 singularity (log for n = 1, r^{1-n} for
    // n >= 2), plain adaptive quadrature the smooth middle.
    double head = integrate_ts(radial, 0.0, 1.0, 1e-11);
    double mid = integrate_gk(radial, 1.0, 40.0, 1e-11, "kernel norm");

    // Past r = 40 use the exponential envelope C e^{-r/2} calibrated at the
    // endpoint; the true kernel decays like e^{-r}, so this overestimates a
    // contribution that is ~1e-17 of the total either way.
    double c_envelope = kernel_value(n_dim, 40.0) * std::exp(20.0);
    // Single-exponential form: at the huge radii the exp-sinh rule probes,
    // the factored version is 0 * inf.  Here r >= 40, so <r> = r sqrt(1+1/r^2).
    double tail = c_envelope *
                  detail::integrate_exp_sinh(
                      [&](double r) {
                          double log_bracket = std::log(r) + 0.5 * std::log1p(1.0 / (r * r));
                          return std::exp(-0.5 * r + q * log_bracket +
                                          (n_dim - 1) * std::log(r));
                      },
                      40.0, 1e-10);

    double value = omega * (head + mid + tail);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(n_dim, q), value);
    return value;
}

KernelTable KernelTable::build(int n_dim, std::size_t count) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (count < 16) throw std::invalid_argument("kernel table needs at least 16 nodes");
    KernelTable t;
    t.n_dim_ = n_dim;
    t.radii_ = detail::geometric_points(1e-3, 40.0, count);
    t.values_.reserve(count);
    for (double r : t.radii_) t.values_.push_back(bessel_kernel(n_dim, r));
    for (std::size_t i = 0; i < count; ++i) {
        if (!(t.values_[i] > 0.0)) throw std::logic_error("kernel table lost positivity");
        if (i > 0 && !(t.values_[i] < t.values_[i - 1]))
            throw std::logic_error("kernel table lost monotonicity");
    }
    return t;
}

double KernelTable::value_at(double r) const {
    if (!(r >= radii_.front()) || !(r <= radii_.back()))
        throw std::domain_error("kernel radius outside tabulated range");
    auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    std::size_t hi = std::min<std::size_t>(radii_.size() - 1,
                                           static_cast<std::size_t>(it - radii_.begin()));
    std::size_t lo = hi - 1;
    // log-linear in log r: exact for pure powers, good for exp decay on a
    // geometric mesh.
    double w = (std::log(r) - std::log(radii_[lo])) /
               (std::log(radii_[hi]) - std::log(radii_[lo]));
    return std::exp((1.0 - w) * std::log(values_[lo]) + w * std::log(values_[hi]));
}

double KernelTable::weighted_l1(double q) const {
    auto it = l1_cache_.find(q);
    if (it != l1_cache_.end()) return it->second;
    double v = kernel_weighted_l1(n_dim_, q);
    l1_cache_.emplace(q, v);
    return v;
}

}  // namespace halfwave
