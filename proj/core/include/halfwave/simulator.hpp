#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "halfwave/lifespan.hpp"
#include "halfwave/spectral.hpp"

namespace halfwave {

struct SimConfig {
    SpectralGrid grid;
    double dt_initial = 1e-3;
    double dt_min = 1e-12;
    double t_max = 1.0;
    double blowup_sup_threshold = 1e6;
    double functional_radius = 1.0;          // R of the weighted mass M_R
    std::optional<std::complex<double>> alpha;  // multiplier of M_R; defaults to the problem's
    double local_error_target = 1e-8;        // step-doubling acceptance level
    bool fixed_step = false;                 // disable the controller
    bool free_flow = false;                  // drop the nonlinearity entirely
    bool dealias = false;                    // run a doubled-grid cross-check
};

enum class TerminationReason { reached_t_max, blowup, dt_underflow };

struct TrajectoryRecord {
    std::vector<double> times, M, l2, linf;
    std::vector<double> dt_used;             // step taken into each recorded state
    std::vector<double> m_err;               // step-doubling error of M at each state
    std::size_t accepted_steps = 0, rejected_steps = 0;
    TerminationReason terminated = TerminationReason::reached_t_max;
    std::optional<double> blowup_time;       // last resolved time when sup-norm escape fired
    double functional_radius = 1.0;
    std::complex<double> alpha{0.0, 1.0};
    std::optional<double> refinement_deviation;  // max M mismatch vs doubled grid (dealias mode)
    std::optional<ComplexField> final_state;
};

/// Realize the problem's datum on a grid.  Singular families are capped at
/// one mesh spacing (the returned field reports the cap through the
/// mollified weighted mass, not here).
ComplexField realize_datum(const ProblemSpec&, const SpectralGrid&);

/// Integrate i u_t + sqrt(m^2 - Lap) u = lambda |u|^p by a Lawson
/// (integrating factor) RK4 scheme with step-doubling error control.
/// The linear flow is applied exactly in Fourier space, so free_flow runs
/// conserve the L2 norm to rounding.
TrajectoryRecord evolve(const ProblemSpec&, const SimConfig&);

/// Check d/dt(M - C1) >= C2 (M - C1)^p along a recorded trajectory via
/// forward difference quotients (with the recorded M error as tolerance)
/// and in integrated form against the exact ODE solution.
struct OdeInequalityReport {
    std::size_t checked = 0, satisfied = 0;
    double fraction = 1.0;
    double min_slack = 0.0;
    std::size_t integrated_checked = 0, integrated_satisfied = 0;
    bool integrated_ok = true;
    bool beyond_ode_horizon = false;  // trajectory outlived the comparison ODE
};
OdeInequalityReport ode_inequality_report(const TrajectoryRecord&, const BlowupCertificate&,
                                          double p);

}  // namespace halfwave
