#include <benchmark/benchmark.h>

#include "channelspin/config.hpp"
#include "channelspin/ensemble.hpp"
#include "channelspin/oracle.hpp"
#include "channelspin/spin.hpp"
#include "channelspin/trajectory.hpp"

namespace {

using namespace channelspin;

Trajectory default_trajectory() {
    const RunConfig config = default_config();
    const double theta =
        config.entry_theta_frac * lindhard_angle(config.particle, config.channel);
    return make_trajectory({config.entry_x0_m, theta}, config.particle, config.channel);
}

void bm_psi(benchmark::State& state) {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-13;
        benchmark::DoNotOptimize(psi(t, params));
    }
}
BENCHMARK(bm_psi);

void bm_lambda(benchmark::State& state) {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-13;
        benchmark::DoNotOptimize(lambda_coefficient(t, params));
    }
}
BENCHMARK(bm_lambda);

void bm_integrate_bmt(benchmark::State& state) {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    const IntegratorConfig config{trajectory.orbit.tau_s / 200.0};
    const double depth = static_cast<double>(state.range(0)) * 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_bmt(trajectory, params, depth, config));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_integrate_bmt)->Arg(10)->Arg(100)->Complexity(benchmark::oN);

void bm_average_components(benchmark::State& state) {
    const RunConfig run = default_config();
    EnsembleConfig config = run.ensemble_for(0.25, Divergence::off);
    config.n_points = static_cast<int>(state.range(0));
    config.n_depth_samples = 200;
    for (auto _ : state) {
        benchmark::DoNotOptimize(average_components(config, run.particle, run.channel,
                                                    CrystalMode::bent, Divergence::off));
    }
}
BENCHMARK(bm_average_components)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
