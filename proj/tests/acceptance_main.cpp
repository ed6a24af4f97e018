// Standalone acceptance gate.  Each criterion prints exactly one
// [PASS]/[FAIL] line with its wall time; a criterion also fails when it
// overruns its runtime budget.  The exit code is the number of failures.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "halfwave/bessel.hpp"
#include "halfwave/estimates.hpp"
#include "halfwave/fractional.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/lifespan.hpp"
#include "halfwave/profile.hpp"
#include "halfwave/simulator.hpp"
#include "halfwave/spectral.hpp"

namespace {

using namespace halfwave;

bool expect(bool cond, std::string& why, const std::string& msg) {
    if (!cond) {
        if (!why.empty()) why += "; ";
        why += msg;
    }
    return cond;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

// 1. quadrature normalizer of the principal-value half Laplacian vs 1/pi
bool criterion_normalizer(std::string& why) {
    const double b1 = normalization_constant(1);
    const double target = 1.0 / std::numbers::pi;
    return expect(std::abs(b1 - target) < 1e-7, why,
                  "B_1 = " + num(b1) + " differs from 1/pi by " + num(std::abs(b1 - target)));
}

// 2. singular-integral and spectral evaluators vs the closed-form image
//    (-Lap)^{1/2} (1+x^2)^{-1} = (1-x^2)/(1+x^2)^2 in n = 1
bool criterion_closed_form(std::string& why) {
    bool ok = true;
    auto closed = [](double x) {
        double s = 1.0 + x * x;
        return (1.0 - x * x) / (s * s);
    };
    RadialProfile lorentzian = RadialProfile::weight(2.0);

    SpectralGrid g = make_grid(1, 80.0, 8192);
    ComplexField image = apply_symbol(weight_field(g, 2.0), SymbolSpec::massless_op());

    double worst_singular = 0.0, worst_spectral = 0.0, worst_pair = 0.0;
    for (int j = 0; j < 50; ++j) {
        int i = 3584 + (1024 * j) / 49;  // grid nodes spanning -10 <= x <= 10
        double x = g.coordinate(i);
        double exact = closed(x);
        double singular = frac_laplacian_radial(lorentzian, 1, std::abs(x));
        double spectral = image.values[static_cast<std::size_t>(i)].real();
        worst_singular = std::max(worst_singular, std::abs(singular - exact));
        worst_spectral = std::max(worst_spectral, std::abs(spectral - exact));
        worst_pair = std::max(worst_pair, std::abs(spectral - singular));
    }
    ok &= expect(worst_singular < 1e-4, why, "singular-integral error " + num(worst_singular));
    ok &= expect(worst_spectral < 1e-3, why, "spectral error " + num(worst_spectral));
    ok &= expect(worst_pair < 1e-3, why, "evaluator mismatch " + num(worst_pair));
    return ok;
}

// 3. unit kernel mass and strict positivity at every tabulated radius
bool criterion_kernel_mass(std::string& why) {
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
        double mass = kernel_weighted_l1(n, 0.0);
        ok &= expect(std::abs(mass - 1.0) < 1e-6, why,
                     "||K||_1 = " + num(mass) + " in n=" + std::to_string(n));
        KernelTable table = KernelTable::build(n);
        double lowest = *std::min_element(table.values().begin(), table.values().end());
        ok &= expect(lowest > 0.0, why,
                     "non-positive kernel sample " + num(lowest) + " in n=" + std::to_string(n));
    }
    return ok;
}

// 4. decay of the half Laplacian of <x>^{-q}: tail slopes in the power
//    regimes and the logarithmic correction at q = n
bool criterion_decay_regimes(std::string& why) {
    bool ok = true;
    // q < n representative (2,1): here the half Laplacian has the closed form
    // (Fourier pair <x>^{-1} <-> 2 pi e^{-|xi|}/|xi| in n=2, multiply by |xi|,
    // invert) lhs = <x>^{-3} exactly, so the measured slope is -3.  That is
    // strictly inside the <x>^{-q-1} envelope: the bound itself is confirmed
    // by the ratio supremum staying at 1 (attained at the origin).
    auto sub = weight_decay_report(2, 1.0);
    ok &= expect(std::abs(sub.loglog_slope + 3.0) < 0.1, why,
                 "(n,q)=(2,1) slope " + num(sub.loglog_slope));
    ok &= expect(std::abs(sub.empirical_constant - 1.0) < 1e-5, why,
                 "(n,q)=(2,1) envelope ratio sup " + num(sub.empirical_constant));
    auto sup = weight_decay_report(1, 2.0);  // q > n: slope -(n+1)
    ok &= expect(std::abs(sup.loglog_slope + 2.0) < 0.1, why,
                 "(n,q)=(1,2) slope " + num(sup.loglog_slope));

    auto crit = weight_decay_report(1, 1.0);
    ok &= expect(crit.regime == "q=n", why, "regime tag '" + crit.regime + "'");
    ok &= expect(crit.pass && std::isfinite(crit.empirical_constant), why,
                 "log-corrected envelope not finite");
    // the bare ratio lhs * <x>^{n+1} must grow (the log factor is real) ...
    double near_one = 0.0, near_hundred = 0.0;
    for (std::size_t i = 0; i < crit.samples.size(); ++i) {
        double x = crit.samples[i];
        double bare = crit.lhs[i] * (1.0 + x * x);
        if (std::abs(x - 1.0) < 0.05) near_one = bare;
        if (x > 95.0) near_hundred = bare;
    }
    ok &= expect(near_one > 0.0 && near_hundred > 2.0 * near_one, why,
                 "no logarithmic growth against the bare power shape");
    // ... while the ratio against the corrected shape stays bounded
    double max_ratio = *std::max_element(crit.ratio.begin(), crit.ratio.end());
    ok &= expect(max_ratio <= crit.empirical_constant * (1.0 + 1e-12), why,
                 "log-corrected ratio exceeds its recorded supremum");
    return ok;
}

// 5. massive-operator bounds across the (m, R) panel at n = 1, q = 2,
//    with an identically vanishing remainder at m = 0
bool criterion_massive_panel(std::string& why) {
    bool ok = true;
    for (double m : {0.0, 0.5, 1.0, 2.0}) {
        for (double R : {0.5, 1.0, 2.0}) {
            MassiveEstimateSet set = massive_estimate_report(1, 2.0, m, R);
            std::string tag = "(m=" + num(m) + ", R=" + num(R) + ")";
            ok &= expect(set.remainder_bound.pass, why, "remainder bound fails at " + tag);
            ok &= expect(set.massive_pointwise.pass, why, "pointwise bound fails at " + tag);
            ok &= expect(set.scaled_form.pass, why, "scaled bound fails at " + tag);
            if (m == 0.0) {
                double peak = *std::max_element(set.remainder_bound.lhs.begin(),
                                                set.remainder_bound.lhs.end());
                ok &= expect(peak <= 1e-12, why,
                             "remainder lhs " + num(peak) + " at m=0, R=" + num(R));
            }
        }
    }
    return ok;
}

RadialProfile hermite_profile(double c, double sigma) {
    double s2 = sigma * sigma;
    auto f = [c, s2](double r) { return (1.0 - c * r * r) * std::exp(-r * r / (2.0 * s2)); };
    auto d2 = [c, s2](double r) {
        double e = std::exp(-r * r / (2.0 * s2));
        double r2 = r * r;
        return e * (-(c / (s2 * s2)) * r2 * r2 + ((5.0 * c + 1.0 / s2) / s2) * r2 -
                    (2.0 * c + 1.0 / s2));
    };
    char name[64];
    std::snprintf(name, sizeof name, "hermite(c=%g, sigma=%g)", c, sigma);
    return RadialProfile::custom(name, f, 6.0, d2);
}

// 6. pointwise product inequality 2 phi L phi - L(phi^2) >= 0 on twenty
//    deterministic profiles: gaussians and sign-changing Hermite types
bool criterion_cordoba(std::string& why) {
    bool ok = true;
    std::vector<RadialProfile> profiles;
    for (double sigma : {0.75, 1.0, 2.0, 3.0}) profiles.push_back(RadialProfile::gaussian(sigma));
    const std::array<std::pair<double, double>, 6> hermites = {
        {{1.0, 1.0}, {0.5, 1.0}, {2.0, 1.0}, {1.0, 2.0}, {1.0, 0.75}, {0.5, 2.0}}};
    for (auto [c, sigma] : hermites) profiles.push_back(hermite_profile(c, sigma));

    int total = 0;
    for (int n : {1, 2}) {
        for (const RadialProfile& prof : profiles) {
            auto rep = cordoba_check(n, prof);
            ++total;
            std::string tag = prof.name() + " in n=" + std::to_string(n);
            ok &= expect(rep.slack >= -1e-8, why, tag + ": slack " + num(rep.slack));
            ok &= expect(rep.pass, why, tag + ": not passing");
        }
    }
    ok &= expect(total == 20, why, "profile count " + std::to_string(total));
    return ok;
}

// 7. certificate algebra on seeded random problems: the lifespan bound is
//    the blow-up time of y' = C2 y^p, certificates appear exactly above the
//    threshold, and massless thresholds are a pure power of the radius
bool criterion_certificates(std::string& why) {
    bool ok = true;
    std::mt19937 rng(20260823u);
    std::uniform_int_distribution<int> dim_pick(1, 3);
    std::uniform_real_distribution<double> p_pick(1.1, 3.0);
    std::uniform_real_distribution<double> m_pick(0.0, 2.0);
    std::uniform_real_distribution<double> lam_mod(0.2, 3.0);
    std::uniform_real_distribution<double> lam_arg(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> R_pick(0.3, 3.0);
    std::uniform_real_distribution<double> ratio_log(std::log(0.2), std::log(5.0));

    int with_cert = 0, without_cert = 0, massless_checked = 0;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        int n = dim_pick(rng);
        double p = p_pick(rng);
        double m = (trial % 5 == 0) ? 0.0 : m_pick(rng);
        std::complex<double> lambda = std::polar(lam_mod(rng), lam_arg(rng));
        double R = R_pick(rng);
        double ratio = std::exp(ratio_log(rng));
        std::string tag = " at trial " + std::to_string(trial);

        ProblemSpec probe = make_problem(n, p, lambda, m, DatumSpec::plain(1.0));
        double threshold = certification_threshold(probe, R, 5.0);
        double base = weighted_mass(probe.datum, n, probe.alpha, R);
        ok &= expect(base > 0.0, why, "non-positive unit mass" + tag);

        ProblemSpec s = make_problem(n, p, lambda, m, DatumSpec::plain(ratio * threshold / base));
        double M0 = weighted_mass(s.datum, n, s.alpha, R);
        auto cert = certify(s, R, 5.0);
        ok &= expect(cert.has_value() == (M0 > threshold), why,
                     "certificate presence disagrees with the threshold" + tag);
        if (cert) {
            ++with_cert;
            double y0 = cert->M0 - cert->C1;
            double ode_time = std::pow(y0, 1.0 - p) / ((p - 1.0) * cert->C2);
            ok &= expect(std::abs(cert->Tbound - ode_time) <= 1e-12 * ode_time, why,
                         "Tbound " + num(cert->Tbound) + " vs ODE blow-up time " +
                             num(ode_time) + tag);
            ok &= expect(std::abs(cert->threshold - threshold) <= 1e-12 * threshold, why,
                         "threshold echo" + tag);
        } else {
            ++without_cert;
        }
        if (m == 0.0) {
            ++massless_checked;
            double ctilde = amplitude_constants(s, 5.0).Ctilde;
            double massless = ctilde * std::pow(R, n - 1.0 / (p - 1.0));
            ok &= expect(std::abs(threshold - massless) <= 1e-12 * massless, why,
                         "massless threshold " + num(threshold) + " vs " + num(massless) + tag);
        }
    }
    ok &= expect(with_cert >= 20 && without_cert >= 20, why,
                 "unbalanced branches: " + std::to_string(with_cert) + " certified, " +
                     std::to_string(without_cert) + " rejected");
    ok &= expect(massless_checked == 20, why, "massless sample count");
    return ok;
}

// 8. matched-radius lifespan scaling: fitted slope of Tbound(R*) vs mu for
//    the singular and decaying families, within 1% of the exact exponents
bool criterion_scaling(std::string& why) {
    bool ok = true;
    const std::complex<double> lambda{0.0, -1.0};

    std::vector<double> mus(16), times(16);
    for (int i = 0; i < 16; ++i) {
        mus[i] = 10.0 * std::pow(100.0, i / 15.0);
        ProblemSpec s = make_problem(1, 2.0, lambda, 0.0, DatumSpec::inner(mus[i], 0.25));
        times[i] = corollary_radii(s, 5.0).Tbound_at_R_star;
    }
    double inner_slope = fit_slope(mus, times);
    const double inner_theory = -4.0 / 3.0;  // -1/(1/(p-1) - k) at p=2, k=1/4
    ok &= expect(std::abs(inner_slope - inner_theory) <= 0.01 * std::abs(inner_theory), why,
                 "inner-family slope " + num(inner_slope) + " vs " + num(inner_theory));

    for (int i = 0; i < 16; ++i) {
        mus[i] = 1e-3 * std::pow(100.0, i / 15.0);
        ProblemSpec s = make_problem(1, 1.8, lambda, 0.0, DatumSpec::outer(mus[i], 0.8));
        times[i] = corollary_radii(s, 5.0).Tbound_at_R_star;
    }
    double outer_slope = fit_slope(mus, times);
    const double outer_theory = -20.0 / 9.0;  // -1/(1/(p-1) - min(n,k)) at p=1.8, k=0.8
    ok &= expect(std::abs(outer_slope - outer_theory) <= 0.01 * std::abs(outer_theory), why,
                 "outer-family slope " + num(outer_slope) + " vs " + num(outer_theory));
    return ok;
}

// 9. simulator consistency: exact free flow, fourth-order core scheme, and
//    three certified mollified data that blow up inside their lifespan
//    bounds with the discrete ODE inequality holding along the way
bool criterion_simulator(std::string& why) {
    bool ok = true;
    const std::complex<double> lambda{0.0, -1.0};

    {
        ProblemSpec s = make_problem(1, 2.0, lambda, 0.7, DatumSpec::plain(1.0));
        SimConfig cfg;
        cfg.grid = make_grid(1, 20.0, 256);
        cfg.free_flow = true;
        cfg.t_max = 10.0;
        cfg.dt_initial = 0.05;
        auto traj = evolve(s, cfg);
        ok &= expect(traj.terminated == TerminationReason::reached_t_max, why,
                     "free flow did not reach t_max");
        double drift = 0.0;
        for (double v : traj.l2) drift = std::max(drift, std::abs(v - traj.l2.front()));
        drift /= traj.l2.front();
        ok &= expect(drift < 1e-10, why, "free-flow L2 drift " + num(drift));
    }

    {
        ProblemSpec s = make_problem(1, 2.0, lambda, 0.5, DatumSpec::plain(1.0));
        auto final_at = [&](double dt) {
            SimConfig cfg;
            cfg.grid = make_grid(1, 16.0, 256);
            cfg.fixed_step = true;
            cfg.dt_initial = dt;
            cfg.t_max = 0.1;
            auto tr = evolve(s, cfg);
            return *tr.final_state;
        };
        ComplexField f1 = final_at(0.01), f2 = final_at(0.005), f3 = final_at(0.0025);
        auto max_diff = [](const ComplexField& a, const ComplexField& b) {
            double d = 0.0;
            for (std::size_t i = 0; i < a.values.size(); ++i)
                d = std::max(d, std::abs(a.values[i] - b.values[i]));
            return d;
        };
        double order = std::log2(max_diff(f1, f2) / max_diff(f2, f3));
        ok &= expect(order >= 2.0, why, "self-convergence order " + num(order));
    }

    struct BlowupRun {
        double k, mollify_cells, mass_ratio;
    };
    for (BlowupRun run : {BlowupRun{0.25, 4.0, 2.5}, BlowupRun{0.30, 5.0, 3.0},
                          BlowupRun{0.20, 3.0, 2.2}}) {
        SpectralGrid g = make_grid(1, 16.0, 1024);
        std::string tag = "run(k=" + num(run.k) + ")";

        DatumSpec probe_datum = DatumSpec::inner(1.0, run.k);
        probe_datum.mollify_radius = run.mollify_cells * g.spacing();
        ProblemSpec probe = make_problem(1, 2.0, lambda, 0.0, probe_datum);
        double threshold = certification_threshold(probe, 1.0, atilde(1));
        double base = weighted_mass(probe.datum, 1, probe.alpha, 1.0);

        DatumSpec datum = probe_datum;
        datum.mu = run.mass_ratio * threshold / base;
        ProblemSpec s = make_problem(1, 2.0, lambda, 0.0, datum);
        auto cert = certify(s, 1.0, atilde(1));
        ok &= expect(cert.has_value(), why, tag + ": no certificate");
        if (!cert) continue;

        SimConfig cfg;
        cfg.grid = g;
        cfg.dt_initial = 2e-3;
        cfg.dt_min = 1e-10;
        cfg.t_max = cert->Tbound;
        cfg.blowup_sup_threshold = 500.0;
        auto traj = evolve(s, cfg);
        ok &= expect(traj.terminated == TerminationReason::blowup, why,
                     tag + ": no blow-up inside the lifespan bound");
        if (traj.blowup_time)
            ok &= expect(*traj.blowup_time <= cert->Tbound, why,
                         tag + ": blow-up at " + num(*traj.blowup_time) + " after Tbound " +
                             num(cert->Tbound));
        auto report = ode_inequality_report(traj, *cert, s.p);
        ok &= expect(report.checked > 10, why, tag + ": too few checked steps");
        ok &= expect(report.fraction >= 0.99, why,
                     tag + ": ODE inequality fraction " + num(report.fraction));
    }
    return ok;
}

struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    const std::array<Criterion, 9> criteria = {{
        {1, "principal-value normalizer matches 1/pi", 1.0, criterion_normalizer},
        {2, "singular and spectral evaluators match the closed-form derivative", 10.0,
         criterion_closed_form},
        {3, "unit kernel mass and positivity in n = 1, 2, 3", 10.0, criterion_kernel_mass},
        {4, "weight-decay tail slopes and the logarithmic critical regime", 60.0,
         criterion_decay_regimes},
        {5, "massive operator bounds across the (m, R) panel", 60.0, criterion_massive_panel},
        {6, "product inequality on 20 deterministic profiles", 30.0, criterion_cordoba},
        {7, "certificate algebra on 100 random problems", 5.0, criterion_certificates},
        {8, "matched-radius lifespan scaling exponents", 5.0, criterion_scaling},
        {9, "simulator free flow, convergence order, certified blow-ups", 300.0,
         criterion_simulator},
    }};

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string why;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(why);
        } catch (const std::exception& ex) {
            ok = false;
            expect(false, why, std::string("exception: ") + ex.what());
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > c.budget_seconds) {
            ok = false;
            expect(false, why,
                   "runtime " + num(elapsed) + " s over the " + num(c.budget_seconds) +
                       " s budget");
        }
        std::printf("[%s] criterion %d: %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL",
                    c.id, c.label, elapsed, c.budget_seconds);
        if (!ok) {
            if (why.size() > 600) why = why.substr(0, 600) + "...";
            std::printf("       %s\n", why.c_str());
        }
        failures += ok ? 0 : 1;
    }
    std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
    return failures;
}
