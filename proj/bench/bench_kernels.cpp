// Serial vs OpenMP comparison for the batch kernels: pointwise divergence
// profiles, per-scale sequence norms, covering search, spectrum grids.
//
//   ./bench_kernels [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "wavediv/besov.hpp"
#include "wavediv/covering.hpp"
#include "wavediv/divergence.hpp"
#include "wavediv/generators.hpp"
#include "wavediv/rng.hpp"
#include "wavediv/spectrum.hpp"

using namespace wavediv;

namespace {

struct Fixture {
    BesovParams params{0.5, 2.0, 2.0, 1};
    WaveletSystem haar = haar_system(1);
    DyadicCovering covering;
    CoefficientField field;
    std::vector<std::vector<double>> points;

    explicit Fixture(int jmax, int n_points) {
        CoveringSearchOptions opts;
        opts.max_depth = 1;
        opts.c0 = 1.0;
        opts.grid_per_cube = 8;
        covering = *find_dyadic_covering(haar, opts).covering;
        SaturatingConfig cfg{params, covering, jmax, 42, 1};
        field = saturating_random(cfg);
        CounterRng rng(7);
        for (int n = 0; n < n_points; ++n)
            points.push_back({rng.uniform01({static_cast<std::uint64_t>(n)})});
    }
};

Fixture& fixture() {
    static Fixture f(16, 2048);
    return f;
}

void bm_profiles(benchmark::State& state, ExecPolicy exec) {
    auto& f = fixture();
    EstimatorSettings st;
    st.j_min = 12;
    st.mode = FitMode::CompRatio;
    for (auto _ : state) {
        auto profs = divergence_profiles(f.field, f.haar, f.points, st, exec);
        benchmark::DoNotOptimize(profs);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.points.size()));
}

void bm_profiles_serial_reference(benchmark::State& state) {
    auto& f = fixture();
    EstimatorSettings st;
    st.j_min = 12;
    st.mode = FitMode::CompRatio;
    for (auto _ : state) {
        auto profs = divergence_profiles_serial(f.field, f.haar, f.points, st);
        benchmark::DoNotOptimize(profs);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.points.size()));
}

void bm_besov(benchmark::State& state, ExecPolicy exec) {
    auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f.field, f.params, exec));
}

void bm_besov_naive_reference(benchmark::State& state) {
    auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm_serial(f.field, f.params));
}

void bm_covering(benchmark::State& state, ExecPolicy exec) {
    auto db = daubechies4_system(12);
    CoveringSearchOptions opts;
    opts.max_depth = 3;
    opts.c0 = 0.05;
    opts.grid_per_cube = 8;
    opts.exec = exec;
    for (auto _ : state) benchmark::DoNotOptimize(find_dyadic_covering(db, opts));
}

void bm_spectrum(benchmark::State& state, ExecPolicy exec) {
    auto& f = fixture();
    SpectrumSettings st;
    st.grid_bits = 10;
    st.estimator.j_min = 12;
    st.estimator.mode = FitMode::CompRatio;
    st.exec = exec;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_spectrum(f.field, f.haar, st));
}

}  // namespace

BENCHMARK_CAPTURE(bm_profiles, serial, ExecPolicy::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_profiles, openmp, ExecPolicy::OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_profiles_serial_reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_besov, serial, ExecPolicy::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_besov, openmp, ExecPolicy::OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_besov_naive_reference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_covering, serial, ExecPolicy::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_covering, openmp, ExecPolicy::OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_spectrum, serial, ExecPolicy::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_spectrum, openmp, ExecPolicy::OpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
