#pragma once

// Internal quadrature shims over boost::math::quadrature.  Not installed.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfwave::detail {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod on a finite interval; throws when the error
/// estimate misses the requested relative tolerance.  abs_floor forgives a
/// small absolute error for integrals whose value nearly cancels while the
/// integrand itself does not (the relative criterion is meaningless there).
template <class F>
double integrate_gk(F&& f, double a, double b, double rel_tol = 1e-10,
                    const char* what = "integrand", double abs_floor = 0.0) {
    if (a == b) return 0.0;
    double err = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 15, rel_tol, &err);
    double scale = std::max(std::abs(value), 1e-30);
    if (!(err <= 100 * rel_tol * scale + 1e-300) && err > 1e-14 * scale && err > abs_floor) {
        throw QuadratureError(std::string("quadrature failed to converge for ") + what);
    }
    return value;
}

/// tanh-sinh for integrable endpoint singularities on [a, b].
template <class F>
double integrate_ts(F&& f, double a, double b, double rel_tol = 1e-10) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b, rel_tol);
}

/// exp-sinh for [a, inf) with decaying integrands.
template <class F>
double integrate_exp_sinh(F&& f, double a, double rel_tol = 1e-10) {
    thread_local boost::math::quadrature::exp_sinh<double> integrator;
    if (a == 0.0) return integrator.integrate(f, rel_tol);
    return integrator.integrate([&](double t) { return f(a + t); }, rel_tol);
}

inline std::vector<double> geometric_points(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo * std::exp(ratio * static_cast<double>(i));
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 are skipped.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("log-log fit needs at least two positive samples");
    double denom = static_cast<double>(m) * sxx - sx * sx;
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

}  // namespace halfwave::detail
