#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "halfwave/grid.hpp"

namespace halfwave {

/// Fourier multipliers used throughout: all are functions of |xi| only.
///
///   massive     sqrt(m^2 + |xi|^2)
///   massless    |xi|
///   remainder   sqrt(m^2 + |xi|^2) - |xi|, evaluated in the cancellation-free
///               form m^2 / (sqrt(m^2 + |xi|^2) + |xi|)
///   propagator  exp(i t sqrt(m^2 + |xi|^2))
struct SymbolSpec {
    enum class Kind { massive, massless, remainder, propagator };
    Kind kind = Kind::massless;
    double mass = 0.0;
    double time = 0.0;  // propagator only

    static SymbolSpec massive_op(double m) { return {Kind::massive, m, 0.0}; }
    static SymbolSpec massless_op() { return {Kind::massless, 0.0, 0.0}; }
    static SymbolSpec remainder_op(double m) { return {Kind::remainder, m, 0.0}; }
    static SymbolSpec propagator_op(double m, double t) { return {Kind::propagator, m, t}; }
};

std::complex<double> symbol_value(const SymbolSpec&, double xi_norm_sq);

/// FFT workhorse bound to one grid shape.  Plans are created once
/// (FFTW_ESTIMATE, so runs are reproducible) and scratch buffers are reused.
/// Instances are not thread-safe; use one per thread.
class SpectralEngine {
public:
    explicit SpectralEngine(const SpectralGrid&);
    ~SpectralEngine();
    SpectralEngine(SpectralEngine&&) noexcept;
    SpectralEngine& operator=(SpectralEngine&&) noexcept;
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    const SpectralGrid& grid() const;

    /// |xi|^2 per flat DFT index, precomputed once.
    const std::vector<double>& mode_xi_sq() const;

    std::vector<std::complex<double>> forward(std::span<const std::complex<double>>);
    std::vector<std::complex<double>> inverse(std::span<const std::complex<double>>);

    /// u -> F^{-1}( sigma(|xi|^2) F u ) with a caller-supplied symbol.
    ComplexField apply_multiplier(const ComplexField&,
                                  const std::function<std::complex<double>(double)>& sigma);
    ComplexField apply(const ComplexField&, const SymbolSpec&);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Convenience entry point; engines are cached per (thread, grid shape).
ComplexField apply_symbol(const ComplexField&, const SymbolSpec&);

}  // namespace halfwave
