#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "halfwave/fractional.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/profile.hpp"
#include "halfwave/spectral.hpp"

using namespace halfwave;

namespace {
constexpr double pi = 3.14159265358979323846;

// Independent oracle for the principal-value normalizer: the classical
// closed form Gamma((n+1)/2) / pi^{(n+1)/2}.
double normalizer_oracle(int n) {
    return std::tgamma((n + 1.0) / 2.0) / std::pow(pi, (n + 1.0) / 2.0);
}
}  // namespace

TEST_CASE("sphere surface areas") {
    CHECK(sphere_surface_area(1) == doctest::Approx(2.0));
    CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_surface_area(0), std::invalid_argument);
}

TEST_CASE("normalization constant matches the closed forms") {
    CHECK(std::abs(normalization_constant(1) - 1.0 / pi) < 1e-7);
    CHECK(std::abs(normalization_constant(2) - 1.0 / (2.0 * pi)) < 1e-7);
    CHECK(std::abs(normalization_constant(3) - 1.0 / (pi * pi)) < 1e-7);
    for (int n : {1, 2, 3})
        CHECK(normalization_constant(n) == doctest::Approx(normalizer_oracle(n)).epsilon(1e-7));
}

TEST_CASE("half laplacian of the inverse-square weight: closed form in 1d") {
    // (-Lap)^{1/2} (1+x^2)^{-1} = (1-x^2)/(1+x^2)^2, the Poisson-flow derivative
    auto w = RadialProfile::weight(2.0);
    for (double x : {0.0, 0.3, 0.9, 1.0, 1.7, 3.0, 5.5, 10.0}) {
        double expect = (1.0 - x * x) / std::pow(1.0 + x * x, 2.0);
        double got = frac_laplacian_radial(w, 1, x);
        CHECK(got == doctest::Approx(expect).epsilon(5e-7));
    }
}

TEST_CASE("gaussian value at the origin in 1d") {
    // via Fourier: (1/2pi) int |xi| sqrt(2 pi) e^{-xi^2/2} dxi = sqrt(2/pi)
    auto g = RadialProfile::gaussian();
    CHECK(frac_laplacian_radial(g, 1, 0.0) ==
          doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-8));
}

TEST_CASE("point and radial evaluators agree off axis") {
    auto g = RadialProfile::gaussian();
    std::array<double, 3> x{0.6, -0.8, 0.0};
    double r = std::hypot(0.6, -0.8);
    CHECK(frac_laplacian_point(g, 2, std::span<const double>(x.data(), 2)) ==
          doctest::Approx(frac_laplacian_radial(g, 2, r)).epsilon(1e-10));
    x = {0.3, 0.4, 1.2};
    CHECK(frac_laplacian_point(g, 3, x) ==
          doctest::Approx(frac_laplacian_radial(g, 3, std::sqrt(0.09 + 0.16 + 1.44)))
              .epsilon(1e-10));
}

TEST_CASE("operator scaling relation under dilation") {
    // f_s(x) = f(x/s)  =>  (-Lap)^{1/2} f_s (x) = s^{-1} ((-Lap)^{1/2} f)(x/s)
    auto g1 = RadialProfile::gaussian(1.0);
    auto g2 = RadialProfile::gaussian(2.0);
    for (double x : {0.0, 0.5, 2.0}) {
        double lhs = frac_laplacian_radial(g2, 1, x);
        double rhs = 0.5 * frac_laplacian_radial(g1, 1, x / 2.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("positive at a strict interior maximum") {
    for (int n : {1, 2, 3}) {
        CHECK(frac_laplacian_radial(RadialProfile::gaussian(), n, 0.0) > 0.0);
        CHECK(frac_laplacian_radial(RadialProfile::weight(2.5), n, 0.0) > 0.0);
    }
}

TEST_CASE("spectral multiplier and singular integral agree") {
    // weight profile has heavy tails; the periodized grid value carries a
    // wrap-around error of order <2L>^{-q}, so the comparison is at 1e-3.
    auto grid = make_grid(1, 400.0, 8192);
    auto f = weight_field(grid, 2.0);
    auto lf = apply_symbol(f, SymbolSpec::massless_op());
    auto w = RadialProfile::weight(2.0);
    const int center = 4096;
    for (int off : {0, 10, 41, 123, 410}) {  // x = off * h, h ~ 0.0977
        double x = grid.coordinate(center + off);
        CHECK(lf.values[center + off].real() ==
              doctest::Approx(frac_laplacian_radial(w, 1, x)).epsilon(1e-3));
    }

    // fully localized profile: the surviving discrepancy is the trapezoid
    // error of the frequency lattice at the |xi| kink of the symbol,
    //   spectral - continuum = -(dxi^2 / 6) fhat(0) / (2 pi) + O(dxi^4),
    // which is constant in x.  Check the measured offset against it.
    auto gg = make_grid(1, 40.0, 1024);
    auto fg = sample_radial(gg, [](double r) { return std::exp(-0.5 * r * r); });
    auto lg = apply_symbol(fg, SymbolSpec::massless_op());
    auto gp = RadialProfile::gaussian();
    const double dxi = pi / 40.0;
    const double predicted = -dxi * dxi * std::sqrt(2.0 * pi) / (12.0 * pi);
    double first_offset = 0.0;
    for (int off : {0, 7, 26}) {
        double x = gg.coordinate(512 + off);
        double offset = lg.values[512 + off].real() - frac_laplacian_radial(gp, 1, x);
        CHECK(offset == doctest::Approx(predicted).scale(0.0).epsilon(0.05));
        if (off == 0)
            first_offset = offset;
        else
            CHECK(std::abs(offset - first_offset) < 1e-6);
    }
}

TEST_CASE("evaluator input validation") {
    auto g = RadialProfile::gaussian();
    CHECK_THROWS_AS(frac_laplacian_radial(g, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(frac_laplacian_radial(g, 1, -1.0), std::invalid_argument);
    FracLaplaceOptions bad;
    bad.eps = 0.0;
    CHECK_THROWS_AS(frac_laplacian_radial(g, 1, 1.0, bad), std::invalid_argument);
    FracLaplaceOptions clash;
    clash.tail_cut = 1.5;  // must exceed max(1, 2 |x|)
    CHECK_THROWS_AS(frac_laplacian_radial(g, 1, 1.0, clash), std::invalid_argument);

    auto no_c2 = RadialProfile::custom("raw", [](double r) { return std::exp(-r); }, 1.0);
    CHECK_THROWS_AS(frac_laplacian_radial(no_c2, 1, 0.5), std::invalid_argument);
}
