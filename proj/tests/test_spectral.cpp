#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "halfwave/grid.hpp"
#include "halfwave/profile.hpp"
#include "halfwave/spectral.hpp"

using namespace halfwave;
using cplx = std::complex<double>;

namespace {
constexpr double pi = 3.14159265358979323846;

ComplexField gaussian_on(const SpectralGrid& g) {
    return sample_radial(g, [](double r) { return std::exp(-0.5 * r * r); });
}

double rel_l2_diff(const ComplexField& a, const ComplexField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}
}  // namespace

TEST_CASE("grid arithmetic on the canonical 1d grid") {
    auto g = make_grid(1, 40.0, 1024);
    CHECK(g.dim() == 1);
    CHECK(g.spacing() == doctest::Approx(0.078125).epsilon(1e-15));
    CHECK(g.point_count() == 1024);
    CHECK(g.coordinate(0) == doctest::Approx(-40.0));
    CHECK(g.coordinate(512) == doctest::Approx(0.0));
    CHECK(g.coordinate(513) == doctest::Approx(0.078125));
    // wrapped frequencies: index N/2+1 is negative
    CHECK(g.frequency(1) == doctest::Approx(pi / 40.0));
    CHECK(g.frequency(1023) == doctest::Approx(-pi / 40.0));
    CHECK(g.max_frequency() == doctest::Approx(pi * 512.0 / 40.0));
    CHECK(g.cell_volume() == doctest::Approx(0.078125));

    auto g3 = make_grid(3, 10.0, 16);
    CHECK(g3.point_count() == 16u * 16u * 16u);
    CHECK(g3.cell_volume() == doctest::Approx(std::pow(1.25, 3)));
}

TEST_CASE("grid factory validates its arguments") {
    CHECK_THROWS_AS(make_grid(0, 10.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 10.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, -1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 10.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 10.0, 4), std::invalid_argument);
}

TEST_CASE("weight_field samples the bracket weight") {
    auto g = make_grid(1, 40.0, 1024);
    auto w = weight_field(g, 2.0);
    // x = 0 sits at flat index N/2
    CHECK(w.values[512].real() == doctest::Approx(1.0));
    // x = 3 is 3/h = 38.4 -> not a node; use x = coordinate(552) = 3.125
    double x = g.coordinate(552);
    CHECK(w.values[552].real() == doctest::Approx(1.0 / (1.0 + x * x)));
    auto wr = weight_field(g, 2.0, 2.0);
    CHECK(wr.values[552].real() == doctest::Approx(1.0 / (1.0 + x * x / 4.0)));
    CHECK_THROWS_AS(weight_field(g, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("discrete norms and quadrature identities") {
    auto g = make_grid(1, 40.0, 1024);
    ComplexField ones{g, std::vector<cplx>(g.point_count(), cplx{1.0, 0.0})};
    CHECK(l2_norm(ones) == doctest::Approx(std::sqrt(80.0)).epsilon(1e-14));
    CHECK(linf_norm(ones) == doctest::Approx(1.0));

    // sum of coordinates is exactly -L, so h*sum = -2 L^2 / N
    ComplexField coords{g, std::vector<cplx>(g.point_count())};
    for (int i = 0; i < 1024; ++i) coords.values[i] = g.coordinate(i);
    auto s = integrate_product(coords, ones);
    CHECK(s.real() == doctest::Approx(-2.0 * 1600.0 / 1024.0).epsilon(1e-12));
    CHECK(s.imag() == doctest::Approx(0.0));

    CHECK(all_finite(ones));
    ComplexField bad = ones;
    bad.values[5] = cplx{std::nan(""), 0.0};
    CHECK_FALSE(all_finite(bad));
}

TEST_CASE("forward/inverse transforms round-trip") {
    for (int n : {1, 2}) {
        auto g = make_grid(n, 20.0, n == 1 ? 256 : 64);
        SpectralEngine eng(g);
        auto f = gaussian_on(g);
        auto hat = eng.forward(f.values);
        auto back = eng.inverse(hat);
        ComplexField fb{g, back};
        CHECK(rel_l2_diff(fb, f) < 1e-13);
    }
}

TEST_CASE("plane waves are eigenfunctions of the massive symbol") {
    auto g = make_grid(1, 40.0, 512);
    const int k = 7;
    const double xi = g.frequency(k);
    ComplexField u{g, std::vector<cplx>(g.point_count())};
    for (int i = 0; i < 512; ++i)
        u.values[i] = std::exp(cplx{0.0, xi * g.coordinate(i)});
    const double m = 1.3;
    auto v = apply_symbol(u, SymbolSpec::massive_op(m));
    const double ev = std::sqrt(m * m + xi * xi);
    for (int i = 0; i < 512; i += 37) {
        CHECK(v.values[i].real() == doctest::Approx(ev * u.values[i].real()).epsilon(1e-10));
        CHECK(v.values[i].imag() == doctest::Approx(ev * u.values[i].imag()).epsilon(1e-10));
    }
}

TEST_CASE("constant fields: massive gives m, massless gives 0, remainder gives m") {
    auto g = make_grid(2, 10.0, 32);
    ComplexField c{g, std::vector<cplx>(g.point_count(), cplx{2.0, -1.0})};
    auto mm = apply_symbol(c, SymbolSpec::massive_op(0.7));
    auto ml = apply_symbol(c, SymbolSpec::massless_op());
    auto rm = apply_symbol(c, SymbolSpec::remainder_op(0.7));
    CHECK(mm.values[0].real() == doctest::Approx(0.7 * 2.0).epsilon(1e-12));
    CHECK(std::abs(ml.values[100]) < 1e-12);
    CHECK(rm.values[100].real() == doctest::Approx(0.7 * 2.0).epsilon(1e-12));
    CHECK(rm.values[100].imag() == doctest::Approx(0.7 * -1.0).epsilon(1e-12));
}

TEST_CASE("applying the massive square root twice reproduces m^2 - Laplacian") {
    // (m^2 - Lap) e^{-x^2/2} = (m^2 + 1 - x^2) e^{-x^2/2} in one dimension
    auto g = make_grid(1, 40.0, 1024);
    auto u = gaussian_on(g);
    const double m = 0.8;
    auto once = apply_symbol(u, SymbolSpec::massive_op(m));
    auto twice = apply_symbol(once, SymbolSpec::massive_op(m));
    for (int i = 256; i < 768; i += 17) {
        double x = g.coordinate(i);
        double expect = (m * m + 1.0 - x * x) * std::exp(-0.5 * x * x);
        CHECK(twice.values[i].real() == doctest::Approx(expect).epsilon(1e-8));
        CHECK(std::abs(twice.values[i].imag()) < 1e-10);
    }
}

TEST_CASE("massive equals massless plus remainder") {
    auto g = make_grid(1, 40.0, 512);
    auto u = gaussian_on(g);
    const double m = 1.1;
    auto a = apply_symbol(u, SymbolSpec::massive_op(m));
    auto b = apply_symbol(u, SymbolSpec::massless_op());
    auto c = apply_symbol(u, SymbolSpec::remainder_op(m));
    for (std::size_t i = 0; i < u.values.size(); i += 29) {
        cplx sum = b.values[i] + c.values[i];
        CHECK(std::abs(a.values[i] - sum) < 1e-12);
    }
}

TEST_CASE("remainder symbol values and bound") {
    auto s = SymbolSpec::remainder_op(2.0);
    CHECK(symbol_value(s, 9.0).real() ==
          doctest::Approx(4.0 / (std::sqrt(13.0) + 3.0)).epsilon(1e-15));
    CHECK(symbol_value(SymbolSpec::remainder_op(0.0), 5.0).real() == 0.0);

    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        double m = dist(rng) / 10.0, xi2 = dist(rng);
        double v = symbol_value(SymbolSpec::remainder_op(m), xi2).real();
        CHECK(v >= 0.0);
        CHECK(v <= m + 1e-15);
    }
}

TEST_CASE("propagator is unitary and composes in time") {
    auto g = make_grid(1, 20.0, 256);
    auto u = gaussian_on(g);
    const double m = 0.5;
    auto v = apply_symbol(u, SymbolSpec::propagator_op(m, 0.7));
    CHECK(l2_norm(v) == doctest::Approx(l2_norm(u)).epsilon(1e-13));

    auto w1 = apply_symbol(v, SymbolSpec::propagator_op(m, 0.3));
    auto w2 = apply_symbol(u, SymbolSpec::propagator_op(m, 1.0));
    CHECK(rel_l2_diff(w1, w2) < 1e-13);

    auto id = apply_symbol(u, SymbolSpec::propagator_op(m, 0.0));
    CHECK(rel_l2_diff(id, u) < 1e-14);
}

TEST_CASE("real even input stays real under real symbols") {
    auto g = make_grid(1, 40.0, 512);
    auto u = weight_field(g, 2.0);
    auto v = apply_symbol(u, SymbolSpec::massive_op(1.0));
    double scale = linf_norm(v);
    for (std::size_t i = 0; i < v.values.size(); i += 13)
        CHECK(std::abs(v.values[i].imag()) < 1e-13 * scale);
    // even symmetry: indices i and N-i match (grid is node-symmetric about 0)
    for (int i = 1; i < 256; i += 31)
        CHECK(v.values[i].real() ==
              doctest::Approx(v.values[512 - i].real()).epsilon(1e-10));
}

TEST_CASE("apply_multiplier rejects mismatched grids and non-finite input") {
    auto g = make_grid(1, 10.0, 64);
    auto h = make_grid(1, 10.0, 128);
    SpectralEngine eng(g);
    ComplexField f{h, std::vector<cplx>(h.point_count(), cplx{1.0, 0.0})};
    CHECK_THROWS_AS(eng.apply(f, SymbolSpec::massless_op()), std::invalid_argument);
    ComplexField bad{g, std::vector<cplx>(g.point_count(), cplx{1.0, 0.0})};
    bad.values[3] = cplx{1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(eng.apply(bad, SymbolSpec::massless_op()), std::invalid_argument);
}

TEST_CASE("radial profiles expose derivatives and the radial laplacian") {
    auto w = RadialProfile::weight(2.0);
    CHECK(w(0.0) == doctest::Approx(1.0));
    CHECK(w(1.0) == doctest::Approx(0.5));
    // d/dr (1+r^2)^{-1} = -2r (1+r^2)^{-2}
    CHECK(w.first_derivative(1.5) ==
          doctest::Approx(-3.0 / ((1.0 + 2.25) * (1.0 + 2.25))).epsilon(1e-12));
    CHECK(w.has_c2());

    auto gsn = RadialProfile::gaussian();
    CHECK(gsn.first_derivative(0.7) ==
          doctest::Approx(-0.7 * std::exp(-0.5 * 0.49)).epsilon(1e-12));
    // F'' + (n-1) F'/r at r -> 0 tends to n F''(0) = -n
    for (int n : {1, 2, 3})
        CHECK(gsn.radial_laplacian(n, 0.0) == doctest::Approx(-double(n)).epsilon(1e-9));
    // away from zero, check against the closed form (r^2 - 1 - (n-1)) ... :
    // F'' = (r^2 - 1) e^{-r^2/2}, F'/r = -e^{-r^2/2}
    double r = 1.3, e = std::exp(-0.5 * r * r);
    CHECK(gsn.radial_laplacian(3, r) ==
          doctest::Approx((r * r - 1.0) * e - 2.0 * e).epsilon(1e-9));
}

TEST_CASE("custom profiles enforce their declared contract") {
    // declared decay honored -> fine
    auto ok = RadialProfile::custom(
        "cauchy4", [](double r) { return std::pow(1.0 + r * r, -2.0); }, 4.0, {}, true);
    CHECK(ok(1.0) == doctest::Approx(0.25));
    CHECK(ok.has_c2());

    // wildly overstated decay -> rejected on construction
    CHECK_THROWS_WITH_AS(
        RadialProfile::custom(
            "slow", [](double r) { return 1.0 / (1.0 + r); }, 6.0, {}, true),
        "declared decay exponent not honored by profile", std::invalid_argument);

    // no C^2 data -> second derivative refuses
    auto flat = RadialProfile::custom("flat", [](double) { return 1.0; }, 0.1);
    CHECK_FALSE(flat.has_c2());
    CHECK_THROWS_AS(flat.second_derivative(1.0), std::invalid_argument);
}
