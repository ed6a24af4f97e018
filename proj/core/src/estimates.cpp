#include "halfwave/estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "halfwave/bessel.hpp"
#include "halfwave/fractional.hpp"
#include "halfwave/spectral.hpp"
#include "quadrature_util.hpp"

namespace halfwave {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double regime_shape(int n, double q, double x) {
    double ax = std::abs(x);
    if (std::abs(q - static_cast<double>(n)) < 1e-12)
        return std::pow(bracket(ax), -n - 1.0) * (1.0 + std::log1p(ax));
    if (q < static_cast<double>(n)) return std::pow(bracket(ax), -q - 1.0);
    return std::pow(bracket(ax), -n - 1.0);
}

std::string regime_tag(int n, double q) {
    if (std::abs(q - static_cast<double>(n)) < 1e-12) return "q=n";
    return q < static_cast<double>(n) ? "q<n" : "q>n";
}

double tail_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= 10.0 && x[i] <= 100.0 && y[i] > 0.0) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 2) return 0.0;
    return detail::loglog_slope(xs, ys);
}

// Grid used for the multiplier-route left-hand sides.  The half width keeps
// the wrapped weight below ~1e-6 at the boundary where affordable; the
// spacing keeps the weight's spectrum resolved (it decays like e^{-|xi|}).
SpectralGrid multiplier_grid(int n, double q, bool* guard_ok) {
    double L;
    int N;
    if (n == 1) {
        double want = std::pow(1e6, 1.0 / q);
        double l = 1024.0;
        while (l < want && l < 16384.0) l *= 2.0;
        L = l;
        N = static_cast<int>(L) * 16;  // h = 0.125
    } else if (n == 2) {
        L = 256.0;
        N = 2048;  // h = 0.25
    } else {
        L = 48.0;
        N = 160;  // h = 0.6; coarse, flagged through the guard
    }
    if (guard_ok) *guard_ok = std::pow(bracket(L), -q) < 1e-6 && (n < 3);
    return make_grid(n, L, N);
}

// 4-point Lagrange interpolation along the last (contiguous) axis of the
// centered slice x_other = 0.  Real-even inputs under real symbols keep the
// imaginary part at rounding level, so the real part carries the value.
double interp_center_abs(const ComplexField& f, double x) {
    const auto& g = f.grid;
    const int N = g.points_per_axis();
    std::size_t offset = 0;
    for (int d = 0; d < g.dim() - 1; ++d)
        offset = (offset + static_cast<std::size_t>(N / 2)) * static_cast<std::size_t>(N);
    double t = (x + g.half_width()) / g.spacing();
    int base = static_cast<int>(std::floor(t)) - 1;
    base = std::clamp(base, 0, N - 4);
    double num = 0.0;
    for (int j = 0; j < 4; ++j) {
        double c = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == j) continue;
            c *= (t - (base + l)) / static_cast<double>(j - l);
        }
        num += c * f.values[offset + static_cast<std::size_t>(base + j)].real();
    }
    return std::abs(num);
}

std::map<std::pair<int, double>, double>& envelope_cache() {
    static std::map<std::pair<int, double>, double> cache;
    return cache;
}
std::mutex& envelope_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::vector<double> estimate_sample_points() {
    std::vector<double> pts{0.0};
    auto geo = detail::geometric_points(1e-2, 100.0, 200);
    pts.insert(pts.end(), geo.begin(), geo.end());
    return pts;
}

EstimateReport weight_decay_report(int n_dim, double q) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(q > 0.0)) throw std::invalid_argument("weight power must be positive");

    EstimateReport rep;
    rep.id = "half-laplacian-weight-decay";
    rep.n_dim = n_dim;
    rep.q = q;
    rep.regime = regime_tag(n_dim, q);
    rep.samples = estimate_sample_points();

    RadialProfile w = RadialProfile::weight(q);
    rep.lhs.reserve(rep.samples.size());
    rep.rhs_shape.reserve(rep.samples.size());
    for (double x : rep.samples) {
        rep.lhs.push_back(std::abs(frac_laplacian_radial(w, n_dim, x)));
        rep.rhs_shape.push_back(regime_shape(n_dim, q, x));
    }
    rep.ratio.resize(rep.samples.size());
    double sup = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        rep.ratio[i] = rep.lhs[i] / rep.rhs_shape[i];
        finite = finite && std::isfinite(rep.ratio[i]);
        sup = std::max(sup, rep.ratio[i]);
    }
    rep.empirical_constant = sup;
    rep.loglog_slope = tail_slope(rep.samples, rep.lhs);
    rep.prescribed_bound = false;
    rep.pass = finite && sup > 0.0;
    {
        std::lock_guard<std::mutex> lock(envelope_mutex());
        envelope_cache()[{n_dim, q}] = sup;
    }
    return rep;
}

namespace {

double envelope_constant(int n_dim, double q) {
    {
        std::lock_guard<std::mutex> lock(envelope_mutex());
        auto it = envelope_cache().find({n_dim, q});
        if (it != envelope_cache().end()) return it->second;
    }
    return weight_decay_report(n_dim, q).empirical_constant;
}

}  // namespace

MassiveEstimateSet massive_estimate_report(int n_dim, double q, double mass, double radius) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(q > 0.5 * n_dim))
        throw std::invalid_argument("weight power must exceed n/2 (operator domain condition)");
    if (!(mass >= 0.0)) throw std::invalid_argument("mass must be nonnegative");
    if (!(radius > 0.0)) throw std::invalid_argument("functional radius must be positive");

    const auto samples = estimate_sample_points();
    const double kq = kernel_weighted_l1(n_dim, q);
    const double peetre = std::pow(2.0, 0.5 * q);

    // (a) remainder bound: |R_m <x>^{-q}| <= 2^{q/2} ||<.>^q K||_1 <m>^{q+1} <x>^{-q}.
    EstimateReport rem;
    rem.id = "remainder-weight-bound";
    rem.n_dim = n_dim;
    rem.q = q;
    rem.mass = mass;
    rem.radius = radius;
    rem.samples = samples;
    rem.prescribed_bound = true;
    bool guard_a = true;
    SpectralGrid ga = multiplier_grid(n_dim, q, &guard_a);
    ComplexField wa = weight_field(ga, q);
    ComplexField ra = apply_symbol(wa, SymbolSpec::remainder_op(mass));
    const double mfac_literal = std::pow(bracket(mass), q + 1.0);
    for (double x : samples) {
        rem.lhs.push_back(interp_center_abs(ra, x));
        rem.rhs_shape.push_back(peetre * kq * mfac_literal * std::pow(bracket(x), -q));
    }

    // (b) triangle assembly: |sqrt(m^2-Lap) w| <= A_emp shape_q + 2^{q/2} ||<.>^q K||_1
    // m <m>^q <x>^{-q}.  The second factor is the direct bound on
    // int_0^m <theta>^q dtheta, so it vanishes with m and the m = 0 case
    // reduces exactly to the massless envelope.
    EstimateReport tri;
    tri.id = "massive-weight-bound";
    tri.n_dim = n_dim;
    tri.q = q;
    tri.mass = mass;
    tri.radius = radius;
    tri.samples = samples;
    tri.prescribed_bound = true;
    double a_emp = envelope_constant(n_dim, q);
    ComplexField ma = apply_symbol(wa, SymbolSpec::massive_op(mass));
    const double mfac_refined = mass * std::pow(bracket(mass), q);
    for (double x : samples) {
        tri.lhs.push_back(interp_center_abs(ma, x));
        tri.rhs_shape.push_back(a_emp * regime_shape(n_dim, q, x) +
                                peetre * kq * mfac_refined * std::pow(bracket(x), -q));
    }

    // (c) scaled bound through the rescaling identity
    //   (m^2-Lap)^{1/2} <./R>^{-n-1} = R^{-1} ((R^2 m^2-Lap)^{1/2} <.>^{-n-1})(./R):
    // apply the mass R*m operator on the reference grid and read it at x/R.
    EstimateReport sc;
    sc.id = "scaled-massive-bound";
    sc.n_dim = n_dim;
    sc.q = static_cast<double>(n_dim) + 1.0;
    sc.mass = mass;
    sc.radius = radius;
    sc.samples = samples;
    sc.prescribed_bound = true;
    bool guard_c = true;
    SpectralGrid gc = multiplier_grid(n_dim, sc.q, &guard_c);
    ComplexField wc = weight_field(gc, sc.q);
    ComplexField mc = apply_symbol(wc, SymbolSpec::massive_op(radius * mass));
    const double at = atilde(n_dim);
    const double rmfac = std::pow(bracket(radius * mass), n_dim + 2.0);
    for (double x : samples) {
        sc.lhs.push_back(interp_center_abs(mc, x / radius) / radius);
        sc.rhs_shape.push_back(at * rmfac * std::pow(bracket(x / radius), -(n_dim + 1.0)) /
                               radius);
    }

    // Shared bookkeeping: sup ratio, slack, pass with a cross-evaluator
    // allowance on the triangle check (its sharp constant comes from the
    // singular-integral evaluator while the lhs is spectral).
    auto finalize = [](EstimateReport& r, double tol_scale) {
        double sup = 0.0, slack = std::numeric_limits<double>::infinity();
        bool ok = true;
        r.ratio.resize(r.samples.size());
        for (std::size_t i = 0; i < r.samples.size(); ++i) {
            double rhs = r.rhs_shape[i];
            r.ratio[i] = rhs > 0.0 ? r.lhs[i] / rhs : 0.0;
            slack = std::min(slack, rhs - r.lhs[i]);
            if (rhs > 0.0) sup = std::max(sup, r.ratio[i]);
            ok = ok && std::isfinite(r.lhs[i]);
            if (!(r.lhs[i] <= rhs + tol_scale * rhs + 1e-300)) ok = false;
        }
        r.empirical_constant = sup;
        r.slack = slack;
        r.pass = ok;
    };
    // The triangle check compares a spectral lhs against a singular-integral
    // constant whose sup sits at the sample boundary, where periodic
    // wraparound contributes ~0.5% at the default widths; 1% absorbs it.
    finalize(rem, mass == 0.0 ? 0.0 : 1e-9);
    finalize(tri, 1e-2);
    finalize(sc, 1e-9);
    rem.grid_guard_ok = guard_a;
    tri.grid_guard_ok = guard_a;
    sc.grid_guard_ok = guard_c;
    // m = 0 degenerate remainder: the symbol is identically zero, so the lhs
    // must vanish to rounding regardless of the grid.
    if (mass == 0.0) {
        for (double v : rem.lhs)
            if (!(std::abs(v) <= 1e-12)) rem.pass = false;
    }
    return {rem, tri, sc};
}

EstimateReport kernel_bound_report(int n_dim) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    EstimateReport rep;
    rep.id = "kernel-envelopes";
    rep.n_dim = n_dim;
    rep.prescribed_bound = false;

    auto near = detail::geometric_points(1e-3, 2.0, 120);
    auto far = detail::geometric_points(2.0, 40.0, 120);
    rep.samples = near;
    rep.samples.insert(rep.samples.end(), far.begin() + 1, far.end());

    double sup = 0.0;
    bool finite = true;
    for (double r : rep.samples) {
        double k = bessel_kernel(n_dim, r);
        double shape;
        if (r <= 2.0) {
            shape = (n_dim == 1) ? std::log(2.0 / r) + 1.0
                                 : 1.0 + std::pow(r, 1.0 - static_cast<double>(n_dim));
        } else {
            shape = std::exp(-0.5 * r);
        }
        rep.lhs.push_back(k);
        rep.rhs_shape.push_back(shape);
        double ratio = k / shape;
        rep.ratio.push_back(ratio);
        finite = finite && std::isfinite(ratio);
        sup = std::max(sup, ratio);
    }
    rep.empirical_constant = sup;
    // Tail slope of log K against log r over the smallest decade shows the
    // r^{1-n} singularity for n >= 2.
    std::vector<double> xs(rep.samples.begin(), rep.samples.begin() + 40);
    std::vector<double> ys(rep.lhs.begin(), rep.lhs.begin() + 40);
    rep.loglog_slope = detail::loglog_slope(xs, ys);
    rep.pass = finite && sup > 0.0;
    return rep;
}

namespace {

EstimateReport cordoba_from_field(const ComplexField& phi) {
    double scale = linf_norm(phi);
    for (const auto& v : phi.values)
        if (std::abs(v.imag()) > 1e-14 * std::max(1.0, scale))
            throw std::invalid_argument("pointwise product inequality needs a real field");

    ComplexField lphi = apply_symbol(phi, SymbolSpec::massless_op());
    ComplexField phi2{phi.grid, phi.values};
    for (auto& v : phi2.values) v = v.real() * v.real();
    ComplexField lphi2 = apply_symbol(phi2, SymbolSpec::massless_op());

    EstimateReport rep;
    rep.id = "pointwise-product-inequality";
    rep.n_dim = phi.grid.dim();
    rep.prescribed_bound = true;

    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        double lhs2 = 2.0 * phi.values[i].real() * lphi.values[i].real();
        min_slack = std::min(min_slack, lhs2 - lphi2.values[i].real());
    }

    // Record the center line for inspection; pass rides on the global grid
    // minimum.
    const int N = phi.grid.points_per_axis();
    std::size_t offset = 0;
    for (int d = 0; d < phi.grid.dim() - 1; ++d)
        offset = (offset + static_cast<std::size_t>(N / 2)) * static_cast<std::size_t>(N);
    for (int j = 0; j < N; ++j) {
        rep.samples.push_back(phi.grid.coordinate(j));
        double two_f_lf = 2.0 * phi.values[offset + j].real() * lphi.values[offset + j].real();
        rep.lhs.push_back(lphi2.values[offset + j].real());
        rep.rhs_shape.push_back(two_f_lf);
        rep.ratio.push_back(std::abs(two_f_lf) > 1e-12 ? lphi2.values[offset + j].real() / two_f_lf
                                                       : 0.0);
    }
    rep.slack = min_slack;
    rep.empirical_constant = 1.0;
    rep.pass = min_slack >= -1e-8;
    return rep;
}

}  // namespace

EstimateReport cordoba_check(const ComplexField& real_phi) { return cordoba_from_field(real_phi); }

EstimateReport cordoba_check(int n_dim, const RadialProfile& profile) {
    if (n_dim < 1 || n_dim > 2)
        throw std::invalid_argument("product inequality checked in dimensions 1 and 2");
    SpectralGrid g = (n_dim == 1) ? make_grid(1, 128.0, 4096) : make_grid(2, 128.0, 1024);
    ComplexField phi = sample_radial(g, [&](double r) { return profile(r); });
    return cordoba_from_field(phi);
}

double atilde(int n_dim) {
    static std::array<double, 4> cache{};
    static std::array<bool, 4> have{};
    static std::mutex mu;
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    {
        std::lock_guard<std::mutex> lock(mu);
        if (have[n_dim]) return cache[n_dim];
    }
    double q = static_cast<double>(n_dim) + 1.0;
    double value = envelope_constant(n_dim, q) +
                   std::pow(2.0, 0.5 * q) * kernel_weighted_l1(n_dim, q);
    std::lock_guard<std::mutex> lock(mu);
    cache[n_dim] = value;
    have[n_dim] = true;
    return cache[n_dim];
}

}  // namespace halfwave
