#pragma once

#include <complex>
#include <optional>

#include "halfwave/grid.hpp"

namespace halfwave {

/// Initial datum, either an explicit grid field or one of the radial
/// families u0 = -i conj(alpha)/|alpha|^2 * mu * g(|x|):
///   inner_singular    g = r^{-k} restricted to r <= 1
///   outer_decay       g = r^{-k} restricted to r > 1
///   plain_integrable  g = exp(-r^2/2)
/// mollify_radius > 0 caps the inner singularity at g(mollify_radius),
/// which is how simulations realize the singular family on a mesh.
struct DatumSpec {
    enum class Kind { grid_field, inner_singular, outer_decay, plain_integrable };
    Kind kind = Kind::plain_integrable;
    double mu = 1.0;
    double k = 0.0;
    double mollify_radius = 0.0;
    std::optional<ComplexField> field;

    static DatumSpec inner(double mu, double k) { return {Kind::inner_singular, mu, k, 0.0, {}}; }
    static DatumSpec outer(double mu, double k) { return {Kind::outer_decay, mu, k, 0.0, {}}; }
    static DatumSpec plain(double mu) { return {Kind::plain_integrable, mu, 0.0, 0.0, {}}; }
    static DatumSpec grid(ComplexField f) {
        return {Kind::grid_field, 1.0, 0.0, 0.0, std::move(f)};
    }
};

struct ProblemSpec {
    int n_dim = 1;
    double p = 2.0;
    std::complex<double> lambda{0.0, -1.0};
    double mass = 0.0;
    std::complex<double> alpha{0.0, 1.0};
    DatumSpec datum;
};

/// Build and validate a problem.  alpha defaults to conj(lambda)/|lambda|,
/// which maximizes Re(alpha*lambda) at unit modulus.
ProblemSpec make_problem(int n_dim, double p, std::complex<double> lambda, double mass,
                         DatumSpec datum,
                         std::optional<std::complex<double>> alpha = std::nullopt);

/// Throws std::invalid_argument when p <= 1, lambda = 0, Re(alpha*lambda) <= 0,
/// or the datum family exponent leaves its admissible window.
void validate(const ProblemSpec&);

double holder_conjugate(double p);           // p' = p/(p-1)

/// W_n = int <x>^{-n-1} dx over R^n, by adaptive quadrature (cached); the
/// closed forms pi, 2 pi, pi^2 are reserved for tests.
double weight_l1_norm(int n_dim);

/// Amplitude constants of the mass-flux differential inequality
///   d/dt M >= c M^p - c' for the weighted mass M (R = 1 normalization):
///   Ctilde feeds the concentration threshold, D the blow-up rate.
struct AmplitudeConstants {
    double Ctilde = 0.0;
    double D = 0.0;
};
AmplitudeConstants amplitude_constants(const ProblemSpec&, double atilde_n);

/// M_R(0) = -Im( alpha int u0 <x/R>^{-n-1} dx ), grid or semi-analytic.
double weighted_mass(const ComplexField& u0, std::complex<double> alpha, double R);
double weighted_mass(const DatumSpec&, int n_dim, std::complex<double> alpha, double R);

/// Everything needed to certify finite-time blow-up at functional radius R:
/// once M0 exceeds threshold, M - C1 dominates the ODE y' = C2 y^p and
/// Tbound is that ODE's blow-up time.
struct BlowupCertificate {
    double R = 1.0;
    std::complex<double> alpha{0.0, 1.0};
    double M0 = 0.0;
    double threshold = 0.0;
    double Ctilde = 0.0;
    double D = 0.0;
    double Tbound = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
};

/// Concentration threshold at radius R; the initial mass must exceed this
/// for a certificate to exist (it becomes the certificate's C1).
double certification_threshold(const ProblemSpec&, double R, double atilde_n);

/// nullopt when M0 <= threshold (no certificate at this radius).
std::optional<BlowupCertificate> certify(const ProblemSpec&, double R, double atilde_n);

/// Scan a logarithmic R-grid and keep the certificate with the smallest
/// Tbound; deterministic for fixed inputs.
std::optional<BlowupCertificate> optimize_radius(const ProblemSpec&, double R_min, double R_max,
                                                 int grid_points, double atilde_n);

/// Closed-form matched radius R_* for the singular/decaying families, the
/// lifespan power law at R_*, and the proof's smallness conditions.
struct CorollaryScales {
    double I = 0.0;                // datum shape integral I1 or I2
    double R_star = 0.0;
    double exponent = 0.0;         // d log Tbound / d log mu
    double Tbound_at_R_star = 0.0;
    double mass_limit = 0.0;       // validity needs |m| <= 1/R_star
    bool asymptotic_regime = false;  // R_star landed on the side the matching assumes
};
CorollaryScales corollary_radii(const ProblemSpec&, double atilde_n);

}  // namespace halfwave
