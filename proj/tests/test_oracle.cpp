#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "channelspin/constants.hpp"
#include "channelspin/errors.hpp"
#include "channelspin/oracle.hpp"

using namespace channelspin;

namespace {

ParticleSpec particle() { return ParticleSpec::antiproton(1e6); }
CrystalChannel channel() { return CrystalChannel::tungsten100(); }

Trajectory default_trajectory() {
    const double theta = 0.25 * lindhard_angle(particle(), channel());
    return make_trajectory({0.45e-10, theta}, particle(), channel());
}

double one_period_depth(const Trajectory& trajectory) {
    return period(trajectory) * trajectory.particle.beta() * constants::speed_of_light;
}

double max_offset_error(const Trajectory& trajectory, const RadialPath& path) {
    double worst = 0.0;
    for (std::size_t i = 0; i < path.times_s.size(); ++i) {
        worst = std::fmax(worst, std::abs(path.offsets_m[i] -
                                          radial_offset(path.times_s[i], trajectory)));
    }
    return worst;
}

}  // namespace

TEST_CASE("integrated radial motion follows the analytic orbit") {
    const Trajectory trajectory = default_trajectory();
    const IntegratorConfig config{trajectory.orbit.tau_s / 1000.0};
    const RadialPath path = integrate_radial(trajectory, one_period_depth(trajectory), config);
    CHECK(path.times_s.size() >= 1000);
    CHECK(max_offset_error(trajectory, path) <= 1e-9 * channel().b_m);
    // Velocities ride along too.
    double worst_v = 0.0;
    for (std::size_t i = 0; i < path.times_s.size(); ++i) {
        worst_v = std::fmax(worst_v, std::abs(path.velocities_m_s[i] -
                                              rho_dot(path.times_s[i], trajectory)));
    }
    CHECK(worst_v <= 1e-6 * constants::speed_of_light * lindhard_angle(particle(), channel()));
}

TEST_CASE("halving the step cuts the radial error sixteenfold") {
    const Trajectory trajectory = default_trajectory();
    // Generic span: over whole periods the leading error term cancels on
    // the closed orbit and the measured order inflates past 5.
    const double depth = 0.37 * one_period_depth(trajectory);
    std::vector<double> errors;
    for (const double divisor : {100.0, 200.0, 400.0}) {
        const IntegratorConfig config{trajectory.orbit.tau_s / divisor};
        errors.push_back(max_offset_error(trajectory, integrate_radial(trajectory, depth, config)));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        CAPTURE(i);
        CHECK(order >= 3.7);
        CHECK(order <= 4.3);
    }
}

TEST_CASE("integrated spin phase matches the closed form") {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    const IntegratorConfig config{trajectory.orbit.tau_s / 1000.0};
    const SpinPath path = integrate_bmt(trajectory, params, 1e-3, config);

    const std::vector<double> integrated = unwrap_phase(path);
    std::vector<double> closed(path.times_s.size());
    for (std::size_t i = 0; i < closed.size(); ++i) {
        closed[i] = psi(path.times_s[i], params);
    }
    const PhaseComparison cmp =
        compare_phase(path.times_s, closed, path.times_s, integrated, 1e-9);
    CHECK(cmp.pass);
    CHECK(cmp.max_abs_error_rad <= 1e-9);
    CHECK(cmp.rms_error_rad <= cmp.max_abs_error_rad);
    CHECK(cmp.n_samples == path.times_s.size());
}

TEST_CASE("integrated spin keeps norm and out-of-plane component") {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    const IntegratorConfig config{trajectory.orbit.tau_s / 1000.0};
    const SpinPath path = integrate_bmt(trajectory, params, 1e-3, config);
    double worst_norm = 0.0;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < path.times_s.size(); ++i) {
        const double norm2 = path.zeta_rho[i] * path.zeta_rho[i] +
                             path.zeta_phi[i] * path.zeta_phi[i] +
                             path.zeta_z[i] * path.zeta_z[i];
        worst_norm = std::fmax(worst_norm, std::abs(norm2 - 1.0));
        worst_z = std::fmax(worst_z, std::abs(path.zeta_z[i]));
    }
    CHECK(worst_norm <= 1e-9);
    CHECK(worst_z <= 1e-10);
}

TEST_CASE("phase unwrapping survives many turns") {
    // Synthetic uniform rotation: five full turns sampled coarsely enough to
    // approach, but not hit, the half-turn-per-sample limit.
    SpinPath path;
    const int n = 400;
    const double rate = 5.0 * 2.0 * std::numbers::pi;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        path.times_s.push_back(t);
        path.zeta_rho.push_back(std::cos(rate * t));
        path.zeta_phi.push_back(std::sin(rate * t));
        path.zeta_z.push_back(0.0);
    }
    const std::vector<double> unwrapped = unwrap_phase(path);
    for (int i = 0; i <= n; ++i) {
        CHECK(unwrapped[static_cast<std::size_t>(i)] ==
              doctest::Approx(rate * i / n).epsilon(1e-12));
    }
}

TEST_CASE("steps that cannot resolve the orbit are refused") {
    const Trajectory trajectory = default_trajectory();
    const PhaseParams params = phase_params(trajectory);
    const IntegratorConfig too_coarse{trajectory.orbit.tau_s / 50.0};
    CHECK_THROWS_AS(integrate_radial(trajectory, 1e-3, too_coarse), StepTooLarge);
    CHECK_THROWS_AS(integrate_bmt(trajectory, params, 1e-3, too_coarse), StepTooLarge);

    IntegratorConfig capped{trajectory.orbit.tau_s / 200.0};
    capped.max_steps = 10;
    CHECK_THROWS_AS(integrate_radial(trajectory, 1e-3, capped), ValidationError);

    const IntegratorConfig zero_step{0.0};
    CHECK_THROWS_AS(integrate_radial(trajectory, 1e-3, zero_step), ValidationError);
}

TEST_CASE("phase comparison rejects mismatched grids") {
    const std::vector<double> t1 = {0.0, 1.0, 2.0};
    const std::vector<double> t2 = {0.0, 1.0};
    const std::vector<double> p1 = {0.0, 0.1, 0.2};
    const std::vector<double> p2 = {0.0, 0.1};
    CHECK_THROWS_AS(compare_phase(t1, p1, t2, p2, 1e-6), GridMismatch);

    const std::vector<double> t3 = {0.0, 1.5, 2.0};
    CHECK_THROWS_AS(compare_phase(t1, p1, t3, p1, 1e-6), GridMismatch);

    const PhaseComparison cmp = compare_phase(t1, p1, t1, {0.0, 0.1, 0.2 + 5e-7}, 1e-6);
    CHECK(cmp.pass);
    CHECK(cmp.max_abs_error_rad == doctest::Approx(5e-7));
    const PhaseComparison failed = compare_phase(t1, p1, t1, {0.0, 0.1, 0.2 + 5e-6}, 1e-6);
    CHECK_FALSE(failed.pass);
}
