#include "channelspin/ensemble.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <utility>

#include "channelspin/constants.hpp"
#include "channelspin/errors.hpp"
#include "channelspin/spin.hpp"
#include "channelspin/trajectory.hpp"

namespace channelspin {

std::vector<double> entry_grid(int n_points, const CrystalChannel& channel) {
    if (n_points <= 0) {
        throw ValidationError("n_points > 0 violated (n_points = " +
                              std::to_string(n_points) + ")");
    }
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    const double d = channel.spacing_m;
    for (int n = 0; n < n_points; ++n) {
        grid[static_cast<std::size_t>(n)] =
            -0.5 * d + (static_cast<double>(n) + 0.5) * d / static_cast<double>(n_points);
    }
    return grid;
}

double gaussian_sample(double mean, double sigma, std::mt19937_64& engine) {
    if (sigma < 0.0) {
        throw ValidationError("sigma >= 0 violated (sigma = " + std::to_string(sigma) + ")");
    }
    // Two engine draws happen unconditionally so that runs differing only in
    // sigma consume the stream identically (common random numbers).
    const double u1 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (sigma == 0.0) {
        return mean;
    }
    // Box-Muller, cosine branch. 1 - u1 lies in (0, 1], so the log is finite.
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
}

int resolve_thread_count(int n_tasks) {
    if (n_tasks <= 1) {
        return 1;
    }
    int cap = 0;
    if (const char* env = std::getenv("CHANNELSPIN_THREADS")) {
        if (std::strlen(env) > 0) {
            int value = 0;
            const char* end = env + std::strlen(env);
            const auto [ptr, ec] = std::from_chars(env, end, value);
            if (ec != std::errc{} || ptr != end || value < 0) {
                throw ValidationError(
                    "CHANNELSPIN_THREADS must be a nonnegative integer (got \"" +
                    std::string(env) + "\")");
            }
            cap = value;
        }
    }
    int workers = cap;
    if (workers == 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) {
            workers = 1;
        }
    }
    if (workers > n_tasks) {
        workers = n_tasks;
    }
    return workers < 1 ? 1 : workers;
}

namespace {

void validate_ensemble(const EnsembleConfig& config) {
    if (config.n_points <= 0) {
        throw ValidationError("n_points > 0 violated");
    }
    if (config.n_depth_samples < 2) {
        throw ValidationError("n_depth_samples >= 2 violated");
    }
    if (!(config.depth_max_m > 0.0)) {
        throw ValidationError("depth_max > 0 violated");
    }
    if (config.sigma_theta_rad < 0.0 || config.sigma_gamma < 0.0) {
        throw ValidationError("spread sigmas must be nonnegative");
    }
    if (config.gamma_mean != 0.0 && config.gamma_mean <= 1.0) {
        throw ValidationError("gamma_mean > 1 violated (0 inherits the particle gamma)");
    }
}

std::vector<double> depth_grid(const EnsembleConfig& config) {
    const auto n = static_cast<std::size_t>(config.n_depth_samples);
    std::vector<double> depths(n);
    for (std::size_t k = 0; k < n; ++k) {
        depths[k] = config.depth_max_m * static_cast<double>(k) /
                    static_cast<double>(n - 1);
    }
    return depths;
}

// Phase 1 output: one (entry angle, gamma) pair per entry point, drawn in
// entry order from a single engine.
struct EntrySamples {
    std::vector<double> thetas_rad;
    std::vector<double> gammas;
};

EntrySamples draw_samples(const EnsembleConfig& config, const ParticleSpec& particle,
                          Divergence divergence) {
    const double gamma_mean =
        config.gamma_mean > 0.0 ? config.gamma_mean : particle.gamma;
    const double sigma_theta =
        divergence == Divergence::on ? config.sigma_theta_rad : 0.0;
    const double sigma_gamma = divergence == Divergence::on ? config.sigma_gamma : 0.0;

    std::mt19937_64 engine(config.seed);
    EntrySamples samples;
    const auto n = static_cast<std::size_t>(config.n_points);
    samples.thetas_rad.resize(n);
    samples.gammas.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples.thetas_rad[i] = gaussian_sample(config.theta_mean_rad, sigma_theta, engine);
        samples.gammas[i] = gaussian_sample(gamma_mean, sigma_gamma, engine);
    }
    return samples;
}

// Phase 2: per-entry polarization rows, computed independently per entry into
// preallocated storage. Worker threads own disjoint index ranges, so the
// result does not depend on the worker count.
struct EntryRows {
    std::vector<double> zeta_x;  // n_points x n_depths, row-major
    std::vector<double> zeta_y;
    std::vector<char> channeled;  // 1 = contributes, 0 = rejected
};

EntryRows compute_rows(const EnsembleConfig& config, const ParticleSpec& particle,
                       const CrystalChannel& channel, CrystalMode mode,
                       double omega_scale, const EntrySamples& samples,
                       const std::vector<double>& grid,
                       const std::vector<double>& depths) {
    const auto n_entries = static_cast<std::size_t>(config.n_points);
    const std::size_t n_depths = depths.size();

    EntryRows rows;
    rows.zeta_x.assign(n_entries * n_depths, 0.0);
    rows.zeta_y.assign(n_entries * n_depths, 0.0);
    rows.channeled.assign(n_entries, 0);

    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto run_entry = [&](std::size_t i) {
        const double gamma_i = samples.gammas[i];
        if (!(gamma_i > 1.0)) {
            return;  // below rest energy, rejected
        }
        ParticleSpec particle_i = particle;
        particle_i.gamma = gamma_i;
        const EntryConditions entry{grid[i], samples.thetas_rad[i]};

        Trajectory trajectory;
        try {
            trajectory = make_trajectory(entry, particle_i, channel);
        } catch (const NotChanneled&) {
            return;  // over-barrier entry, rejected
        }
        trajectory.orbit.omega_rad_s *= omega_scale;
        const PhaseParams params = phase_params(trajectory);

        const double speed = particle_i.beta() * constants::speed_of_light;
        double* zx = rows.zeta_x.data() + i * n_depths;
        double* zy = rows.zeta_y.data() + i * n_depths;
        for (std::size_t k = 0; k < n_depths; ++k) {
            const double t = depths[k] / speed;
            const InPlaneSpin spin =
                mode == CrystalMode::bent
                    ? spin_cartesian_bent(t, params, InitialSpin::perpendicular)
                    : spin_cartesian_straight(t, params, InitialSpin::perpendicular);
            zx[k] = spin.zeta_x;
            zy[k] = spin.zeta_y;
        }
        rows.channeled[i] = 1;
    };

    const int n_workers = resolve_thread_count(config.n_points);
    if (n_workers == 1) {
        for (std::size_t i = 0; i < n_entries; ++i) {
            run_entry(i);
        }
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            const std::size_t lo = n_entries * static_cast<std::size_t>(w) /
                                   static_cast<std::size_t>(n_workers);
            const std::size_t hi = n_entries * static_cast<std::size_t>(w + 1) /
                                   static_cast<std::size_t>(n_workers);
            workers.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) {
                        run_entry(i);
                    }
                } catch (...) {
                    const std::scoped_lock lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            });
        }
        for (auto& worker : workers) {
            worker.join();
        }
        if (first_error) {
            std::rethrow_exception(first_error);
        }
    }
    return rows;
}

// Phase 3: fixed-order reduction over channeled entries.
DepthScan reduce_rows(const EnsembleConfig& config, const ParticleSpec& particle,
                      const CrystalChannel& channel, const EntryRows& rows,
                      std::vector<double> depths) {
    const auto n_entries = static_cast<std::size_t>(config.n_points);
    const std::size_t n_depths = depths.size();

    DepthScan scan;
    scan.depths_m = std::move(depths);
    scan.avg_zeta_x.assign(n_depths, 0.0);
    scan.avg_zeta_y.assign(n_depths, 0.0);

    for (std::size_t i = 0; i < n_entries; ++i) {
        if (!rows.channeled[i]) {
            ++scan.n_rejected;
            continue;
        }
        ++scan.n_channeled;
        const double* zx = rows.zeta_x.data() + i * n_depths;
        const double* zy = rows.zeta_y.data() + i * n_depths;
        for (std::size_t k = 0; k < n_depths; ++k) {
            scan.avg_zeta_x[k] += zx[k];
            scan.avg_zeta_y[k] += zy[k];
        }
    }
    if (scan.n_channeled == 0) {
        throw AllRejected("no entry point channeled; check entry angle and spreads");
    }
    const double inv = 1.0 / static_cast<double>(scan.n_channeled);
    for (std::size_t k = 0; k < n_depths; ++k) {
        scan.avg_zeta_x[k] *= inv;
        scan.avg_zeta_y[k] *= inv;
    }
    scan.avg_phi_rad = averaged_angle(scan.avg_zeta_x, scan.avg_zeta_y);
    scan.exceeds_dechanneling_bound =
        config.depth_max_m > 0.1 * dechanneling_length(particle, channel);
    return scan;
}

DepthScan scan_internal(const EnsembleConfig& config, const ParticleSpec& particle,
                        const CrystalChannel& channel, double omega_scale,
                        CrystalMode mode, Divergence divergence) {
    validate_ensemble(config);
    particle.validate();
    channel.validate();
    if (!(omega_scale > 0.0) || !std::isfinite(omega_scale)) {
        throw ValidationError("omega_scale must be positive and finite");
    }
    const EntrySamples samples = draw_samples(config, particle, divergence);
    const std::vector<double> grid = entry_grid(config.n_points, channel);
    const std::vector<double> depths = depth_grid(config);
    const EntryRows rows =
        compute_rows(config, particle, channel, mode, omega_scale, samples, grid, depths);
    return reduce_rows(config, particle, channel, rows, depths);
}

}  // namespace

DepthScan average_components(const EnsembleConfig& config, const ParticleSpec& particle,
                             const CrystalChannel& channel, CrystalMode mode,
                             Divergence divergence) {
    return scan_internal(config, particle, channel, 1.0, mode, divergence);
}

std::vector<double> averaged_angle(const std::vector<double>& avg_zeta_x,
                                   const std::vector<double>& avg_zeta_y) {
    if (avg_zeta_x.size() != avg_zeta_y.size()) {
        throw GridMismatch("component vectors must have equal length");
    }
    std::vector<double> angles(avg_zeta_x.size());
    for (std::size_t k = 0; k < angles.size(); ++k) {
        angles[k] = rotation_angle(avg_zeta_x[k], avg_zeta_y[k]);
    }
    return angles;
}

CurvatureScan curvature_contribution(const EnsembleConfig& config,
                                     const ParticleSpec& particle,
                                     const CrystalChannel& channel,
                                     Divergence divergence) {
    // Both scans draw from the same seed, so every entry is paired: identical
    // samples, identical rejections, and the same Psi history in both modes.
    const DepthScan bent =
        average_components(config, particle, channel, CrystalMode::bent, divergence);
    const DepthScan straight =
        average_components(config, particle, channel, CrystalMode::straight, divergence);

    CurvatureScan scan;
    scan.depths_m = bent.depths_m;
    scan.phi_cr_rad.resize(scan.depths_m.size());
    for (std::size_t k = 0; k < scan.depths_m.size(); ++k) {
        scan.phi_cr_rad[k] = bent.avg_phi_rad[k] - straight.avg_phi_rad[k];
    }

    const double gamma_mean =
        config.gamma_mean > 0.0 ? config.gamma_mean : particle.gamma;
    ParticleSpec reference = particle;
    reference.gamma = gamma_mean;
    const double speed = reference.beta() * constants::speed_of_light;
    const double omega = speed / channel.bend_radius_m;
    scan.phi_lyuboshitz_rad.resize(scan.depths_m.size());
    for (std::size_t k = 0; k < scan.depths_m.size(); ++k) {
        const double bend = omega * (scan.depths_m[k] / speed);
        scan.phi_lyuboshitz_rad[k] =
            lyuboshitz_angle(particle.g_factor, gamma_mean, bend);
    }
    return scan;
}

DepthScan scaled_omega_scan(const EnsembleConfig& config, const ParticleSpec& particle,
                            const CrystalChannel& channel, double omega_scale,
                            CrystalMode mode, Divergence divergence) {
    return scan_internal(config, particle, channel, omega_scale, mode, divergence);
}

}  // namespace channelspin
