#include "halfwave/profile.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace halfwave {

namespace {

// Central differences on the even extension F(|r|); profiles are radial so
// the extension is smooth wherever F is.
double fd_first(const std::function<double(double)>& f, double r) {
    double h = 1e-5 * std::max(1.0, r);
    return (f(r + h) - f(std::abs(r - h))) / (2.0 * h);
}

double fd_second(const std::function<double(double)>& f, double r) {
    double h = 1e-4 * std::max(1.0, r);
    return (f(r + h) - 2.0 * f(r) + f(std::abs(r - h))) / (h * h);
}

void check_declared_decay(const std::function<double(double)>& f, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("profile decay exponent must be positive");
    // Spot check of the tail trend in log space (no overflow for large
    // exponents): the claim |F| <= C <r>^{-d} fails exactly when the
    // compensated value log|F| + d log<r> keeps rising at large radii.
    // Mid-range humps are legitimate -- wide envelopes or polynomial factors
    // make C large without falsifying the claim -- so the tail samples are
    // measured against the compensated peak over r <= 10, not against F(0).
    // Assumes the profile's bulk lives at r <~ 10, true of every family here.
    auto compensated = [&](double r) {
        double v = std::abs(f(r));
        if (!std::isfinite(v))
            throw std::invalid_argument("profile not finite at spot-check radius");
        if (v == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(v) + d * 0.5 * std::log1p(r * r);
    };
    double peak = -std::numeric_limits<double>::infinity();
    for (double r : {0.0, 1.0, 2.0, 5.0, 10.0}) peak = std::max(peak, compensated(r));
    if (!std::isfinite(peak)) return;  // vanishes on the probe set
    for (double r : {20.0, 40.0}) {
        if (compensated(r) > peak + std::log(10.0))
            throw std::invalid_argument("declared decay exponent not honored by profile");
    }
}

}  // namespace

RadialProfile RadialProfile::weight(double q) {
    if (!(q > 0.0)) throw std::invalid_argument("weight exponent must be positive");
    RadialProfile p;
    p.f_ = [q](double r) { return std::pow(1.0 + r * r, -q / 2.0); };
    p.d1_ = [q](double r) { return -q * r * std::pow(1.0 + r * r, -q / 2.0 - 1.0); };
    p.d2_ = [q](double r) {
        double s = 1.0 + r * r;
        return -q * std::pow(s, -q / 2.0 - 1.0) + q * (q + 2.0) * r * r * std::pow(s, -q / 2.0 - 2.0);
    };
    p.decay_ = q;
    p.c2_ = true;
    p.name_ = "weight";
    return p;
}

RadialProfile RadialProfile::gaussian(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    RadialProfile p;
    double s2 = sigma * sigma;
    p.f_ = [s2](double r) { return std::exp(-r * r / (2.0 * s2)); };
    p.d1_ = [s2](double r) { return -(r / s2) * std::exp(-r * r / (2.0 * s2)); };
    p.d2_ = [s2](double r) { return (r * r / (s2 * s2) - 1.0 / s2) * std::exp(-r * r / (2.0 * s2)); };
    p.decay_ = 100.0;  // dominated by any polynomial rate
    p.c2_ = true;
    p.name_ = "gaussian";
    return p;
}

RadialProfile RadialProfile::custom(std::string name, std::function<double(double)> f,
                                    double decay_exponent,
                                    std::function<double(double)> second_derivative,
                                    bool fd_second_derivative) {
    if (!f) throw std::invalid_argument("custom profile needs a function");
    check_declared_decay(f, decay_exponent);
    RadialProfile p;
    p.f_ = std::move(f);
    p.d2_ = std::move(second_derivative);
    p.decay_ = decay_exponent;
    p.c2_ = static_cast<bool>(p.d2_) || fd_second_derivative;
    p.fd_ = !p.d2_;
    p.name_ = std::move(name);
    return p;
}

double RadialProfile::first_derivative(double r) const {
    if (d1_) return d1_(r);
    return fd_first(f_, r);
}

double RadialProfile::second_derivative(double r) const {
    if (!c2_)
        throw std::invalid_argument("profile carries no C^2 declaration; cannot differentiate");
    if (d2_) return d2_(r);
    return fd_second(f_, r);
}

double RadialProfile::radial_laplacian(int n_dim, double r) const {
    if (r < 1e-9) return static_cast<double>(n_dim) * second_derivative(0.0);
    return second_derivative(r) + (n_dim - 1) * first_derivative(r) / r;
}

}  // namespace halfwave
