#include "channelspin/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "channelspin/constants.hpp"
#include "channelspin/errors.hpp"

namespace channelspin {

namespace {

// Steps and duration for a run of physical depth `depth_m` along the channel.
// The step is snapped down so the grid lands exactly on the total duration.
struct StepPlan {
    std::size_t n_steps;
    double step_s;
    double duration_s;
};

StepPlan plan_steps(const Trajectory& trajectory, double depth_m,
                    const IntegratorConfig& config) {
    if (!(config.step_s > 0.0)) {
        throw ValidationError("integrator step must be positive (step = " +
                              std::to_string(config.step_s) + " s)");
    }
    const double max_step = trajectory.orbit.tau_s / 100.0;
    if (config.step_s > max_step) {
        throw StepTooLarge("step " + std::to_string(config.step_s) +
                           " s exceeds tau/100 = " + std::to_string(max_step) + " s");
    }
    const double duration =
        depth_m / (trajectory.particle.beta() * constants::speed_of_light);
    const auto n = static_cast<std::size_t>(std::ceil(duration / config.step_s));
    if (n == 0 || n > config.max_steps) {
        throw ValidationError("step count " + std::to_string(n) +
                              " is outside (0, max_steps]");
    }
    return {n, duration / static_cast<double>(n), duration};
}

}  // namespace

RadialPath integrate_radial(const Trajectory& trajectory, double depth_m,
                            const IntegratorConfig& config) {
    const StepPlan plan = plan_steps(trajectory, depth_m, config);
    const ParticleSpec& particle = trajectory.particle;
    const CrystalChannel& channel = trajectory.channel;

    // Transverse equation of motion in the radial offset r:
    //   r'' = field_radial(r) c^2 / (gamma m c^2)
    const double accel_scale = constants::speed_of_light * constants::speed_of_light /
                               (particle.gamma * particle.rest_energy_ev);
    const auto accel = [&](double r) { return field_radial(r, channel) * accel_scale; };

    RadialPath path;
    path.bend_radius_m = channel.bend_radius_m;
    path.times_s.reserve(plan.n_steps + 1);
    path.offsets_m.reserve(plan.n_steps + 1);
    path.velocities_m_s.reserve(plan.n_steps + 1);

    double r = trajectory.entry.x0_m;
    double v = constants::speed_of_light * trajectory.entry.theta_rad;
    const double h = plan.step_s;

    path.times_s.push_back(0.0);
    path.offsets_m.push_back(r);
    path.velocities_m_s.push_back(v);

    for (std::size_t i = 0; i < plan.n_steps; ++i) {
        const double k1r = v;
        const double k1v = accel(r);
        const double k2r = v + 0.5 * h * k1v;
        const double k2v = accel(r + 0.5 * h * k1r);
        const double k3r = v + 0.5 * h * k2v;
        const double k3v = accel(r + 0.5 * h * k2r);
        const double k4r = v + h * k3v;
        const double k4v = accel(r + h * k3r);
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        path.times_s.push_back(static_cast<double>(i + 1) * h);
        path.offsets_m.push_back(r);
        path.velocities_m_s.push_back(v);
    }
    return path;
}

SpinPath integrate_bmt(const Trajectory& trajectory, const PhaseParams& params,
                       double depth_m, const IntegratorConfig& config) {
    const StepPlan plan = plan_steps(trajectory, depth_m, config);

    SpinPath path;
    path.times_s.reserve(plan.n_steps + 1);
    path.zeta_rho.reserve(plan.n_steps + 1);
    path.zeta_phi.reserve(plan.n_steps + 1);
    path.zeta_z.reserve(plan.n_steps + 1);

    // Precession about the bend axis in the co-rotating polar frame:
    //   zeta_rho' = Lambda zeta_phi, zeta_phi' = -Lambda zeta_rho, zeta_z' = 0
    double z_rho = 1.0;
    double z_phi = 0.0;
    const double z_z = 0.0;
    const double h = plan.step_s;

    path.times_s.push_back(0.0);
    path.zeta_rho.push_back(z_rho);
    path.zeta_phi.push_back(z_phi);
    path.zeta_z.push_back(z_z);

    for (std::size_t i = 0; i < plan.n_steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double l1 = lambda_coefficient(t, params);
        const double l2 = lambda_coefficient(t + 0.5 * h, params);
        const double l4 = lambda_coefficient(t + h, params);

        const double k1r = l1 * z_phi;
        const double k1p = -l1 * z_rho;
        const double k2r = l2 * (z_phi + 0.5 * h * k1p);
        const double k2p = -l2 * (z_rho + 0.5 * h * k1r);
        const double k3r = l2 * (z_phi + 0.5 * h * k2p);
        const double k3p = -l2 * (z_rho + 0.5 * h * k2r);
        const double k4r = l4 * (z_phi + h * k3p);
        const double k4p = -l4 * (z_rho + h * k3r);

        z_rho += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        z_phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);

        path.times_s.push_back(static_cast<double>(i + 1) * h);
        path.zeta_rho.push_back(z_rho);
        path.zeta_phi.push_back(z_phi);
        path.zeta_z.push_back(z_z);
    }
    return path;
}

std::vector<double> unwrap_phase(const SpinPath& path) {
    std::vector<double> phase(path.zeta_rho.size());
    double accumulated = 0.0;
    double prev_raw = 0.0;
    for (std::size_t i = 0; i < phase.size(); ++i) {
        const double raw = std::atan2(path.zeta_phi[i], path.zeta_rho[i]);
        if (i == 0) {
            accumulated = raw;
        } else {
            double delta = raw - prev_raw;
            while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
            while (delta <= -std::numbers::pi) delta += 2.0 * std::numbers::pi;
            accumulated += delta;
        }
        prev_raw = raw;
        phase[i] = accumulated;
    }
    return phase;
}

PhaseComparison compare_phase(const std::vector<double>& times_a,
                              const std::vector<double>& psi_a,
                              const std::vector<double>& times_b,
                              const std::vector<double>& psi_b,
                              double tolerance_rad) {
    if (times_a.size() != psi_a.size() || times_b.size() != psi_b.size() ||
        times_a.size() != times_b.size() || times_a.empty()) {
        throw GridMismatch("phase comparison requires equal, nonempty sample grids");
    }
    double max_abs = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < times_a.size(); ++i) {
        const double scale = std::fmax(std::abs(times_a[i]), std::abs(times_b[i]));
        if (std::abs(times_a[i] - times_b[i]) > 1e-12 * std::fmax(scale, 1e-300)) {
            throw GridMismatch("sample times diverge at index " + std::to_string(i));
        }
        const double err = std::abs(psi_a[i] - psi_b[i]);
        max_abs = std::fmax(max_abs, err);
        sum_sq += err * err;
    }
    PhaseComparison cmp;
    cmp.max_abs_error_rad = max_abs;
    cmp.rms_error_rad = std::sqrt(sum_sq / static_cast<double>(times_a.size()));
    cmp.n_samples = times_a.size();
    cmp.tolerance_rad = tolerance_rad;
    cmp.pass = max_abs <= tolerance_rad;
    return cmp;
}

}  // namespace channelspin
