#include "halfwave/lifespan.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "halfwave/fractional.hpp"
#include "quadrature_util.hpp"

namespace halfwave {

using detail::integrate_gk;
using detail::integrate_ts;

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

// mass enters only through the symbol m^2, so sign is immaterial.
double abs_mass(const ProblemSpec& s) { return std::abs(s.mass); }

}  // namespace

ProblemSpec make_problem(int n_dim, double p, std::complex<double> lambda, double mass,
                         DatumSpec datum, std::optional<std::complex<double>> alpha) {
    ProblemSpec s;
    s.n_dim = n_dim;
    s.p = p;
    s.lambda = lambda;
    s.mass = mass;
    s.alpha = alpha.value_or(std::conj(lambda) / std::abs(lambda));
    s.datum = std::move(datum);
    validate(s);
    return s;
}

void validate(const ProblemSpec& s) {
    if (s.n_dim < 1 || s.n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(s.p > 1.0)) throw std::invalid_argument("nonlinearity power must exceed 1");
    if (std::abs(s.lambda) == 0.0 || !std::isfinite(std::abs(s.lambda)))
        throw std::invalid_argument("coupling lambda must be nonzero and finite");
    if (!std::isfinite(s.mass)) throw std::invalid_argument("mass must be finite");
    double ral = (s.alpha * s.lambda).real();
    if (!(ral > 0.0)) throw std::invalid_argument("Re(alpha*lambda) must be positive");

    const DatumSpec& d = s.datum;
    if (!(d.mu > 0.0)) throw std::invalid_argument("datum amplitude must be positive");
    if (!(d.k >= 0.0)) throw std::invalid_argument("datum exponent must be nonnegative");
    if (!(d.mollify_radius >= 0.0)) throw std::invalid_argument("mollify radius must be nonnegative");
    double inv_pm1 = 1.0 / (s.p - 1.0);
    switch (d.kind) {
        case DatumSpec::Kind::inner_singular:
            if (!(d.k < std::min(0.5 * s.n_dim, inv_pm1)))
                throw std::invalid_argument(
                    "inner-singular datum needs k < min(n/2, 1/(p-1))");
            break;
        case DatumSpec::Kind::outer_decay:
            if (!(d.k > 0.5 * s.n_dim && d.k < inv_pm1))
                throw std::invalid_argument("outer-decay datum needs n/2 < k < 1/(p-1)");
            break;
        case DatumSpec::Kind::grid_field:
            if (!d.field) throw std::invalid_argument("grid datum carries no field");
            if (d.field->grid.dim() != s.n_dim)
                throw std::invalid_argument("grid datum dimension mismatch");
            if (d.field->values.size() != d.field->grid.point_count())
                throw std::invalid_argument("grid datum size mismatch");
            break;
        case DatumSpec::Kind::plain_integrable:
            break;
    }
}

double holder_conjugate(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("conjugate exponent needs p > 1");
    return p / (p - 1.0);
}

double weight_l1_norm(int n_dim) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    static std::array<double, 4> cache{};
    static std::array<bool, 4> have{};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!have[n_dim]) {
        // omega_n int_0^inf r^{n-1} <r>^{-n-1} dr, compactified by r = u/(1-u).
        double n = n_dim;
        double integral = integrate_gk(
            [n](double u) {
                double r = u / (1.0 - u);
                return std::pow(r, n - 1.0) * std::pow(1.0 + r * r, -(n + 1.0) / 2.0) /
                       ((1.0 - u) * (1.0 - u));
            },
            0.0, 1.0, 1e-12, "weight mass");
        cache[n_dim] = sphere_surface_area(n_dim) * integral;
        have[n_dim] = true;
    }
    return cache[n_dim];
}

AmplitudeConstants amplitude_constants(const ProblemSpec& s, double atilde_n) {
    validate(s);
    if (!(atilde_n > 0.0)) throw std::invalid_argument("envelope constant must be positive");
    const double p = s.p;
    const double pp = holder_conjugate(p);
    const double ral = (s.alpha * s.lambda).real();
    const double aa = std::abs(s.alpha);
    const double W = weight_l1_norm(s.n_dim);

    double ct_p = std::pow(2.0, 1.0 + pp / p) * std::pow(p, -pp / p) * (1.0 / pp) *
                  std::pow(ral, -pp) * std::pow(aa, p + pp) * std::pow(atilde_n, pp) *
                  std::pow(W, p);
    AmplitudeConstants out;
    out.Ctilde = std::pow(ct_p, 1.0 / p);
    out.D = 0.5 * ral * std::pow(aa, -p) * std::pow(W, 1.0 - p);
    return out;
}

double weighted_mass(const ComplexField& u0, std::complex<double> alpha, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("functional radius must be positive");
    ComplexField w = weight_field(u0.grid, u0.grid.dim() + 1.0, R);
    std::complex<double> integral = integrate_product(u0, w);
    return -(alpha * integral).imag();
}

double weighted_mass(const DatumSpec& d, int n_dim, std::complex<double> alpha, double R) {
    if (n_dim < 1 || n_dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(R > 0.0)) throw std::invalid_argument("functional radius must be positive");
    if (d.kind == DatumSpec::Kind::grid_field) {
        if (!d.field) throw std::invalid_argument("grid datum carries no field");
        return weighted_mass(*d.field, alpha, R);
    }
    // Canonical realization u0 = -i conj(alpha) mu g / |alpha|^2 gives
    // -Im(alpha u0) = mu g exactly, so M is alpha-free here.
    const double np1 = n_dim + 1.0;
    auto w = [&](double r) { return std::pow(1.0 + (r / R) * (r / R), -np1 / 2.0); };
    double radial = 0.0;
    switch (d.kind) {
        case DatumSpec::Kind::inner_singular: {
            if (!(d.k < n_dim))
                throw std::invalid_argument("inner datum integral diverges (k >= n)");
            double h = std::min(d.mollify_radius, 1.0);
            // The capped head int_0^h r^{n-1} w dr has elementary
            // antiderivatives; closed forms sidestep a quadrature whose
            // relative target is meaningless when h is tiny (the value
            // scales with h but the error-estimate floor does not).
            double head = 0.0;
            if (h > 0.0) {
                double t = h / R;
                double core;
                switch (n_dim) {
                    case 1:
                        core = R * std::atan(t);
                        break;
                    case 2: {
                        // R^2 (1 - 1/sqrt(1+t^2)) without the small-t cancellation
                        double sq = std::sqrt(1.0 + t * t);
                        core = R * R * t * t / (sq * (sq + 1.0));
                        break;
                    }
                    default: {
                        // (R^3/2)(atan t - t/(1+t^2)); both terms are ~t for
                        // small t while the difference is ~(2/3)t^3, so switch
                        // to the alternating series below the crossover.
                        double diff;
                        if (t < 0.5) {
                            double t2 = t * t, tk = t2 * t;
                            diff = 0.0;
                            for (int j = 1; j < 40; ++j) {
                                double term = 2.0 * j / (2.0 * j + 1.0) * tk;
                                diff += (j % 2 == 1) ? term : -term;
                                tk *= t2;
                                if (term < 1e-18 * diff) break;
                            }
                        } else {
                            diff = std::atan(t) - t / (1.0 + t * t);
                        }
                        core = 0.5 * R * R * R * diff;
                        break;
                    }
                }
                head = std::pow(h, -d.k) * core;
            }
            double body = h < 1.0
                              ? integrate_ts(
                                    [&](double r) { return std::pow(r, n_dim - 1.0 - d.k) * w(r); },
                                    h, 1.0, 1e-12)
                              : 0.0;
            radial = head + body;
            break;
        }
        case DatumSpec::Kind::outer_decay: {
            // r = 1/u moves [1, inf) to (0, 1].  Written directly in u the
            // integrand is R^{n+1} u^k (1 + R^2 u^2)^{-(n+1)/2}, manifestly
            // regular at u = 0 (forming r = 1/u first would overflow on the
            // denormal abscissas the quadrature probes near the endpoint).
            radial = integrate_ts(
                [&](double u) {
                    return std::pow(R, np1) * std::pow(u, d.k) *
                           std::pow(1.0 + (R * u) * (R * u), -np1 / 2.0);
                },
                0.0, 1.0, 1e-12);
            break;
        }
        case DatumSpec::Kind::plain_integrable: {
            radial = integrate_gk(
                [&](double r) {
                    return std::exp(-0.5 * r * r) * std::pow(r, n_dim - 1.0) * w(r);
                },
                0.0, 40.0, 1e-12, "gaussian datum");
            break;
        }
        case DatumSpec::Kind::grid_field:
            break;  // handled above
    }
    return d.mu * sphere_surface_area(n_dim) * radial;
}

double certification_threshold(const ProblemSpec& s, double R, double atilde_n) {
    validate(s);
    if (!(R > 0.0)) throw std::invalid_argument("functional radius must be positive");
    AmplitudeConstants c = amplitude_constants(s, atilde_n);
    const double p = s.p;
    const double n = s.n_dim;
    const double m = abs_mass(s);
    return c.Ctilde * std::pow(bracket(R * m), (n + 2.0) / (p - 1.0)) *
           std::pow(R, n - 1.0 / (p - 1.0));
}

std::optional<BlowupCertificate> certify(const ProblemSpec& s, double R, double atilde_n) {
    double threshold = certification_threshold(s, R, atilde_n);  // validates s, R
    AmplitudeConstants c = amplitude_constants(s, atilde_n);
    const double p = s.p;
    const double n = s.n_dim;
    double M0 = weighted_mass(s.datum, s.n_dim, s.alpha, R);
    if (!(M0 > threshold)) return std::nullopt;

    BlowupCertificate cert;
    cert.R = R;
    cert.alpha = s.alpha;
    cert.M0 = M0;
    cert.threshold = threshold;
    cert.Ctilde = c.Ctilde;
    cert.D = c.D;
    cert.C1 = threshold;
    cert.C2 = c.D * std::pow(R, -n * (p - 1.0));
    cert.Tbound = (1.0 / (p - 1.0)) * (1.0 / c.D) * std::pow(R, n * (p - 1.0)) *
                  std::pow(M0 - threshold, 1.0 - p);
    return cert;
}

std::optional<BlowupCertificate> optimize_radius(const ProblemSpec& s, double R_min, double R_max,
                                                 int grid_points, double atilde_n) {
    if (!(R_min > 0.0) || !(R_max >= R_min)) throw std::invalid_argument("empty radius range");
    if (grid_points < 1) throw std::invalid_argument("radius grid needs at least one point");
    std::optional<BlowupCertificate> best;
    std::vector<double> grid =
        grid_points == 1 ? std::vector<double>{R_min}
                         : detail::geometric_points(R_min, R_max, grid_points);
    for (double R : grid) {
        auto cert = certify(s, R, atilde_n);
        if (!cert) continue;
        if (!best || cert->Tbound < best->Tbound) best = cert;  // ties keep the smaller R
    }
    return best;
}

CorollaryScales corollary_radii(const ProblemSpec& s, double atilde_n) {
    validate(s);
    const auto kind = s.datum.kind;
    if (kind != DatumSpec::Kind::inner_singular && kind != DatumSpec::Kind::outer_decay)
        throw std::invalid_argument("matched radii exist for the singular/decaying families only");

    AmplitudeConstants c = amplitude_constants(s, atilde_n);
    const double p = s.p;
    const double n = s.n_dim;
    const double k = s.datum.k;
    const double mu = s.datum.mu;
    const double inv_pm1 = 1.0 / (p - 1.0);
    const double omega = sphere_surface_area(s.n_dim);

    CorollaryScales out;
    double k_eff;
    if (kind == DatumSpec::Kind::inner_singular) {
        k_eff = k;
        out.I = std::pow(2.0, -n - 1.0) * omega / (n - k);
    } else {
        k_eff = std::min(n, k);
        if (k < n) {
            out.I = std::pow(2.0, -n - 2.0) * omega / (n - k);
        } else {
            double J = std::abs(n - k) < 1e-12
                           ? std::log(2.0)
                           : (std::pow(2.0, n - k) - 1.0) / (n - k);
            out.I = std::pow(2.0, -n - 1.0) * omega * J;
        }
    }

    // Matched radius equating mu I R^{(n-k)_+} with the doubled threshold.
    double gate = std::pow(2.0, (n + p + 1.0) * inv_pm1) * c.Ctilde;
    out.R_star = std::pow(mu * out.I / gate, 1.0 / (k_eff - inv_pm1));
    out.exponent = -1.0 / (inv_pm1 - k_eff);
    out.Tbound_at_R_star = inv_pm1 * std::pow(2.0, p - 1.0) / c.D *
                           std::pow(gate, -k_eff * (p - 1.0) / (k_eff - inv_pm1)) *
                           std::pow(mu * out.I, -1.0 / (inv_pm1 - k_eff));
    out.mass_limit = 1.0 / out.R_star;
    double m = abs_mass(s);
    bool mass_ok = m <= out.mass_limit;
    out.asymptotic_regime = mass_ok && (kind == DatumSpec::Kind::inner_singular
                                            ? out.R_star < 1.0
                                            : out.R_star > 1.0);
    return out;
}

}  // namespace halfwave
