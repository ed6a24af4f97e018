#pragma once

#include <functional>
#include <string>

namespace halfwave {

/// Radial scalar profile f(x) = F(|x|) carrying the metadata the
/// singular-integral evaluator needs: a certified polynomial decay
/// exponent and C^2 information near the evaluation point.
class RadialProfile {
public:
    /// <r>^{-q}
    static RadialProfile weight(double q);
    /// exp(-r^2 / (2 sigma^2))
    static RadialProfile gaussian(double sigma = 1.0);
    /// User profile.  decay_exponent d asserts |F(r)| <= C <r>^{-d}.  Either
    /// supply the exact second derivative or set fd_second_derivative to let
    /// the evaluator difference F; with neither, point evaluation refuses to
    /// run (it needs C^2 data for the short-distance correction).
    static RadialProfile custom(std::string name, std::function<double(double)> f,
                                double decay_exponent,
                                std::function<double(double)> second_derivative = {},
                                bool fd_second_derivative = false);

    double operator()(double r) const { return f_(r); }
    double first_derivative(double r) const;
    double second_derivative(double r) const;
    /// F'' + (n-1) F'/r with the r -> 0 limit n F''(0).
    double radial_laplacian(int n_dim, double r) const;

    double decay_exponent() const { return decay_; }
    bool has_c2() const { return c2_; }
    const std::string& name() const { return name_; }

private:
    RadialProfile() = default;

    std::function<double(double)> f_, d1_, d2_;
    double decay_ = 0.0;
    bool c2_ = false;
    bool fd_ = false;
    std::string name_;
};

}  // namespace halfwave
