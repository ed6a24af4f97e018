#include "halfwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace halfwave {

namespace {

// FFTW's planner mutates global state; serialize plan create/destroy.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::complex<double> symbol_value(const SymbolSpec& s, double xi_sq) {
    const double m = s.mass;
    const double xi = std::sqrt(xi_sq);
    switch (s.kind) {
        case SymbolSpec::Kind::massive:
            return std::sqrt(m * m + xi_sq);
        case SymbolSpec::Kind::massless:
            return xi;
        case SymbolSpec::Kind::remainder: {
            if (m == 0.0) return 0.0;
            return m * m / (std::sqrt(m * m + xi_sq) + xi);
        }
        case SymbolSpec::Kind::propagator: {
            double phase = s.time * std::sqrt(m * m + xi_sq);
            return {std::cos(phase), std::sin(phase)};
        }
    }
    throw std::logic_error("unreachable symbol kind");
}

struct SpectralEngine::Impl {
    SpectralGrid grid;
    fftw_plan plan_fwd = nullptr, plan_bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::vector<double> xi_sq;
    std::size_t total = 0;

    explicit Impl(const SpectralGrid& g) : grid(g), total(g.point_count()) {
        buf = fftw_alloc_complex(total);
        if (!buf) throw std::bad_alloc();
        int dims[3] = {g.points_per_axis(), g.points_per_axis(), g.points_per_axis()};
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            plan_fwd = fftw_plan_dft(g.dim(), dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
            plan_bwd = fftw_plan_dft(g.dim(), dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        if (!plan_fwd || !plan_bwd) throw std::runtime_error("FFTW plan creation failed");

        // |xi|^2 per flat index, separable across axes.
        const int n = g.points_per_axis();
        std::vector<double> axis(n);
        for (int k = 0; k < n; ++k) {
            double f = g.frequency(k);
            axis[k] = f * f;
        }
        xi_sq.assign(total, 0.0);
        std::size_t stride = total;
        for (int d = 0; d < g.dim(); ++d) {
            stride /= static_cast<std::size_t>(n);
            for (std::size_t i = 0; i < total; ++i) {
                std::size_t k = (i / stride) % static_cast<std::size_t>(n);
                xi_sq[i] += axis[k];
            }
        }
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan_fwd) fftw_destroy_plan(plan_fwd);
        if (plan_bwd) fftw_destroy_plan(plan_bwd);
        if (buf) fftw_free(buf);
    }

    void load(std::span<const std::complex<double>> in) {
        if (in.size() != total) throw std::invalid_argument("field size does not match grid");
        std::memcpy(buf, in.data(), total * sizeof(fftw_complex));
    }

    std::vector<std::complex<double>> unload(double scale) {
        std::vector<std::complex<double>> out(total);
        std::memcpy(out.data(), buf, total * sizeof(fftw_complex));
        if (scale != 1.0)
            for (auto& v : out) v *= scale;
        return out;
    }
};

SpectralEngine::SpectralEngine(const SpectralGrid& g) : impl_(std::make_unique<Impl>(g)) {}
SpectralEngine::~SpectralEngine() = default;
SpectralEngine::SpectralEngine(SpectralEngine&&) noexcept = default;
SpectralEngine& SpectralEngine::operator=(SpectralEngine&&) noexcept = default;

const SpectralGrid& SpectralEngine::grid() const { return impl_->grid; }
const std::vector<double>& SpectralEngine::mode_xi_sq() const { return impl_->xi_sq; }

std::vector<std::complex<double>> SpectralEngine::forward(
    std::span<const std::complex<double>> in) {
    impl_->load(in);
    fftw_execute(impl_->plan_fwd);
    return impl_->unload(1.0);
}

std::vector<std::complex<double>> SpectralEngine::inverse(
    std::span<const std::complex<double>> in) {
    impl_->load(in);
    fftw_execute(impl_->plan_bwd);
    return impl_->unload(1.0 / static_cast<double>(impl_->total));
}

ComplexField SpectralEngine::apply_multiplier(
    const ComplexField& u, const std::function<std::complex<double>(double)>& sigma) {
    if (!(u.grid == impl_->grid)) throw std::invalid_argument("field grid does not match engine");
    if (!all_finite(u)) throw std::invalid_argument("field contains non-finite entries");
    auto hat = forward(u.values);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= sigma(impl_->xi_sq[i]);
    return ComplexField{impl_->grid, inverse(hat)};
}

ComplexField SpectralEngine::apply(const ComplexField& u, const SymbolSpec& s) {
    return apply_multiplier(u, [&s](double xi2) { return symbol_value(s, xi2); });
}

ComplexField apply_symbol(const ComplexField& u, const SymbolSpec& s) {
    // One cached engine per grid shape per thread; trajectories that need
    // tight control instantiate their own engine instead.
    using Key = std::tuple<int, double, int>;
    thread_local std::map<Key, SpectralEngine> cache;
    Key key{u.grid.dim(), u.grid.half_width(), u.grid.points_per_axis()};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, SpectralEngine(u.grid)).first;
    return it->second.apply(u, s);
}

}  // namespace halfwave
