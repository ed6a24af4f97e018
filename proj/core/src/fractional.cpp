#include "halfwave/fractional.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "quadrature_util.hpp"

namespace halfwave {

using detail::integrate_gk;
using detail::integrate_ts;

double sphere_surface_area(int n_dim) {
    switch (n_dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
    }
    throw std::invalid_argument("dimension must be 1, 2 or 3");
}

namespace {

// Master radial integral kappa = int_0^inf (1 - cos t)/t^2 dt.  The tail
// over [1, inf) is reduced by parts to (1 - cos 1) + int_1^inf sin(t)/t dt,
// and the sine integral tail is the Dirichlet value pi/2 minus its head;
// both remaining heads live on [0, 1] and are smooth once 1 - cos t is
// written as 2 sin^2(t/2).
double kappa_master_integral() {
    double head = integrate_gk(
        [](double t) {
            double s = std::sin(0.5 * t);
            return 2.0 * s * s / (t * t);
        },
        0.0, 1.0, 1e-13, "oscillatory head");
    double si_head =
        integrate_gk([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, 1.0,
                     1e-13, "sine integral head");
    return head + (1.0 - std::cos(1.0)) + std::numbers::pi / 2.0 - si_head;
}

// int_{S^{n-1}} |u_1| dsigma(u).
double first_coordinate_moment(int n_dim) {
    switch (n_dim) {
        case 1:
            return 2.0;  // counting measure on {-1, +1}
        case 2:
            return 4.0 * integrate_gk([](double phi) { return std::cos(phi); }, 0.0,
                                      std::numbers::pi / 2.0, 1e-13, "circle moment");
        case 3:
            return 4.0 * std::numbers::pi *
                   integrate_gk([](double u) { return u; }, 0.0, 1.0, 1e-13, "sphere moment");
    }
    throw std::invalid_argument("dimension must be 1, 2 or 3");
}

// Angular mean of F(a) - F(|x + y|) over directions of y, |y| = r, |x| = a,
// carrying the full surface measure (not normalized).
double angular_deficit(const RadialProfile& F, int n_dim, double a, double r) {
    const double fa = F(a);
    auto shifted = [&](double u) {
        double g2 = a * a + r * r + 2.0 * a * r * u;
        return F(std::sqrt(std::max(g2, 0.0)));
    };
    switch (n_dim) {
        case 1:
            return (fa - shifted(1.0)) + (fa - shifted(-1.0));
        case 2:
            // Measure 2 du / sqrt(1 - u^2); tanh-sinh absorbs both the
            // endpoint singularity and the thin layer near u = -1 when r ~ a.
            return integrate_ts(
                [&](double u) { return 2.0 * (fa - shifted(u)) / std::sqrt(1.0 - u * u); }, -1.0,
                1.0, 1e-11);
        case 3:
            return 2.0 * std::numbers::pi *
                   integrate_ts([&](double u) { return fa - shifted(u); }, -1.0, 1.0, 1e-11);
    }
    throw std::invalid_argument("dimension must be 1, 2 or 3");
}

}  // namespace

double normalization_constant(int n_dim) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    static std::array<double, 4> cache{};
    static std::array<bool, 4> have{};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!have[n_dim]) {
        cache[n_dim] = 1.0 / (kappa_master_integral() * first_coordinate_moment(n_dim));
        have[n_dim] = true;
    }
    return cache[n_dim];
}

double frac_laplacian_radial(const RadialProfile& F, int n_dim, double a,
                             const FracLaplaceOptions& opt) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("evaluation radius must be finite and nonnegative");
    if (!F.has_c2())
        throw std::invalid_argument(
            "profile lacks a C^2 declaration; the short-distance correction needs one");
    if (!(opt.eps > 0.0) || !(opt.tail_cut > std::max(1.0, 2.0 * a)))
        throw std::invalid_argument("inconsistent singular-integral options");

    const double omega = sphere_surface_area(n_dim);
    const double eps = opt.eps;
    const double T = opt.tail_cut;

    // |y| < eps: second-order Taylor of f around x turns the principal value
    // into -(omega * eps / (2n)) * Lap f(x), error O(eps^3).
    double near = -(omega * eps / (2.0 * static_cast<double>(n_dim))) *
                  F.radial_laplacian(n_dim, a);

    // eps <= |y| <= T: radial quadrature of the angular deficit, taken in
    // log radius so the 1/r^2 weight is absorbed into the measure.  The
    // deficit is an O(r^2) cancellation against O(1) values, and on the raw
    // scale that rounding noise makes the adaptive rule refine forever while
    // its summed error estimate grows; in s = log r the integrand is smooth
    // and scale-free.  The kink at r = a (the |x + y| = 0 crossing) still
    // splits the interval, and the pieces get an absolute floor at the
    // profile's own scale for the nearly-cancelling far-field case.
    auto log_integrand = [&](double s) {
        double r = std::exp(s);
        return angular_deficit(F, n_dim, a, r) / r;
    };
    // The floor also absorbs the rounding noise the angular quadrature
    // leaves in the deficit (~1e-11 of the profile scale per evaluation).
    const double floor = 1e-10 * std::max(std::abs(F(0.0)), std::abs(F(a)));
    const double ls = std::log(eps), le = std::log(T);
    double middle = 0.0;
    if (a > eps && a < T) {
        const double la = std::log(a);
        middle = integrate_gk(log_integrand, ls, la, opt.rel_tol, "singular integral (inner)",
                              floor) +
                 integrate_gk(log_integrand, la, le, opt.rel_tol, "singular integral (outer)",
                              floor);
    } else {
        middle = integrate_gk(log_integrand, ls, le, opt.rel_tol, "singular integral", floor);
    }

    // |y| > T: f(x) contributes omega * F(a)/T exactly; the shifted term is
    // integrated with the profile's own radial decay (angular variation is
    // O(a/T) there).  Substituting s = 1/r moves it to a finite interval.
    double tail_shift =
        integrate_ts([&](double s) { return s == 0.0 ? 0.0 : F(1.0 / s); }, 0.0, 1.0 / T, 1e-12);
    double tail = omega * (F(a) / T - tail_shift);

    return normalization_constant(n_dim) * (near + middle + tail);
}

double frac_laplacian_point(const RadialProfile& F, int n_dim, std::span<const double> x,
                            const FracLaplaceOptions& opt) {
    if (static_cast<int>(x.size()) != n_dim)
        throw std::invalid_argument("evaluation point dimension mismatch");
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return frac_laplacian_radial(F, n_dim, std::sqrt(r2), opt);
}

}  // namespace halfwave
