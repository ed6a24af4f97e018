#include <benchmark/benchmark.h>

#include <complex>

#include "halfwave/bessel.hpp"
#include "halfwave/fractional.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/lifespan.hpp"
#include "halfwave/profile.hpp"
#include "halfwave/simulator.hpp"
#include "halfwave/spectral.hpp"

namespace hw = halfwave;

namespace {

hw::ComplexField gaussian_field(const hw::SpectralGrid& g) {
    hw::ComplexField f{g, std::vector<std::complex<double>>(g.point_count())};
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        double r = hw::radius_at(g, i);
        f.values[i] = std::exp(-0.5 * r * r);
    }
    return f;
}

void BM_apply_symbol_1d(benchmark::State& state) {
    auto g = hw::make_grid(1, 40.0, int(state.range(0)));
    auto f = gaussian_field(g);
    auto spec = hw::SymbolSpec::massive_op(1.0);
    for (auto _ : state) {
        auto out = hw::apply_symbol(f, spec);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_apply_symbol_1d)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_apply_symbol_2d(benchmark::State& state) {
    auto g = hw::make_grid(2, 40.0, int(state.range(0)));
    auto f = gaussian_field(g);
    auto spec = hw::SymbolSpec::massless_op();
    for (auto _ : state) {
        auto out = hw::apply_symbol(f, spec);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_apply_symbol_2d)->Arg(128)->Arg(256);

void BM_frac_laplacian_point(benchmark::State& state) {
    auto profile = hw::RadialProfile::weight(2.0);
    const int n = int(state.range(0));
    std::vector<double> x(n, 0.0);
    x[0] = 1.5;
    for (auto _ : state) {
        double v = hw::frac_laplacian_point(profile, n, x);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_frac_laplacian_point)->Arg(1)->Arg(2)->Arg(3);

void BM_bessel_kernel(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state) {
        double v = hw::bessel_kernel(n, 1.0);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_bessel_kernel)->Arg(1)->Arg(2)->Arg(3);

void BM_kernel_table_build(benchmark::State& state) {
    for (auto _ : state) {
        auto t = hw::KernelTable::build(2, std::size_t(state.range(0)));
        benchmark::DoNotOptimize(t.values().data());
    }
}
BENCHMARK(BM_kernel_table_build)->Arg(64);

void BM_evolve_short(benchmark::State& state) {
    auto spec = hw::make_problem(1, 2.0, {0.0, -1.0}, 0.5, hw::DatumSpec::plain(1.0));
    hw::SimConfig cfg;
    cfg.grid = hw::make_grid(1, 20.0, int(state.range(0)));
    cfg.dt_initial = 1e-3;
    cfg.t_max = 1e-2;
    cfg.fixed_step = true;
    for (auto _ : state) {
        auto traj = hw::evolve(spec, cfg);
        benchmark::DoNotOptimize(traj.times.data());
    }
}
BENCHMARK(BM_evolve_short)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
