#include "channelspin/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "channelspin/errors.hpp"

namespace channelspin {

PhaseParams phase_params(const Trajectory& trajectory) {
    PhaseParams params{};
    params.orbit = trajectory.orbit;
    params.c_const = c_const(trajectory.orbit, trajectory.particle, trajectory.channel);
    params.gamma = trajectory.particle.gamma;
    params.g_factor = trajectory.particle.g_factor;
    params.charge_sign = trajectory.particle.charge_sign;
    params.b_m = trajectory.channel.b_m;
    params.bend_radius_m = trajectory.channel.bend_radius_m;
    return params;
}

double theta_fn(double x, double amp) {
    const double sx = std::sin(x);
    return std::cos(x) / std::sqrt(2.0 * (1.0 + amp * amp * sx * sx));
}

double phi_fn(double x, double amp, double r_tau_omega_m, double b_m) {
    // Continuous branch of the arccot: the denominator never vanishes, so
    // this form is smooth through the cosine zeros where the principal
    // value jumps by pi.
    const double sx = std::sin(x);
    return std::atan(amp * b_m * std::cos(x) /
                     (r_tau_omega_m * std::sqrt(1.0 + amp * amp * sx * sx)));
}

double phi_fn_principal_from_cos(double cos_x, double sin2_x, double amp,
                                 double r_tau_omega_m, double b_m) {
    if (cos_x == 0.0) {
        throw PoleAtHalfPi("principal arccot is undefined where cos(x) = 0");
    }
    const double q = r_tau_omega_m * std::sqrt(1.0 + amp * amp * sin2_x) /
                     (amp * b_m * cos_x);
    return std::atan2(1.0, q);  // arccot with range (0, pi)
}

double phi_fn_principal(double x, double amp, double r_tau_omega_m, double b_m) {
    const double sx = std::sin(x);
    return phi_fn_principal_from_cos(std::cos(x), sx * sx, amp, r_tau_omega_m, b_m);
}

double c_const(const OrbitParams& orbit, const ParticleSpec& particle,
               const CrystalChannel& channel) {
    const double a = orbit.amp;
    const double r_tau_omega = channel.bend_radius_m * orbit.tau_s * orbit.omega_rad_s;
    return particle.charge_sign * std::numbers::sqrt2 * a * r_tau_omega *
           particle.g_factor * channel.v0_ev /
           (particle.gamma * particle.rest_energy_ev * (1.0 + a * a) * channel.b_m);
}

double psi(double t_s, const PhaseParams& params) {
    const OrbitParams& orbit = params.orbit;
    const double r_tau_omega = params.bend_radius_m * orbit.tau_s * orbit.omega_rad_s;
    const double x = (t_s - orbit.t0_s) / orbit.tau_s;
    const double x_entry = -orbit.t0_s / orbit.tau_s;
    const double d_theta = theta_fn(x, orbit.amp) - theta_fn(x_entry, orbit.amp);
    const double d_phi = phi_fn(x, orbit.amp, r_tau_omega, params.b_m) -
                         phi_fn(x_entry, orbit.amp, r_tau_omega, params.b_m);
    return params.c_const * d_theta + (params.gamma - 1.0) * d_phi;
}

double lambda_coefficient(double t_s, const PhaseParams& params) {
    const OrbitParams& orbit = params.orbit;
    const double a = orbit.amp;
    const double x = (t_s - orbit.t0_s) / orbit.tau_s;
    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double s = 1.0 + a * a * sx * sx;
    const double r_tau_omega = params.bend_radius_m * orbit.tau_s * orbit.omega_rad_s;

    // Field term, written through C so the rate and the closed-form phase
    // share one constant: C (1+A^2) / (sqrt(2) tau) = A R Omega g V0
    // charge_sign / (gamma m c^2 b).
    const double field_term = params.c_const * (1.0 + a * a) * sx /
                              (std::numbers::sqrt2 * orbit.tau_s * s * std::sqrt(s));

    const double frame_term = (a * params.bend_radius_m * orbit.omega_rad_s * sx /
                               std::sqrt(s)) *
                              (1.0 + a * a) * params.b_m * (params.gamma - 1.0) /
                              (a * a * params.b_m * params.b_m * cx * cx +
                               r_tau_omega * r_tau_omega * s);

    return field_term + frame_term;
}

SpinState spin_polar(double t_s, const PhaseParams& params, double zeta_z0,
                     double psi_offset) {
    if (std::abs(zeta_z0) > 1.0) {
        throw ValidationError("|zeta_z0| <= 1 violated (zeta_z0 = " +
                              std::to_string(zeta_z0) + ")");
    }
    const double in_plane = std::sqrt(1.0 - zeta_z0 * zeta_z0);
    const double phase = psi(t_s, params) + psi_offset;
    return {in_plane * std::cos(phase), in_plane * std::sin(phase), zeta_z0};
}

InPlaneSpin spin_cartesian_bent(double t_s, const PhaseParams& params,
                                InitialSpin initial, double psi_offset) {
    const double angle = params.orbit.omega_rad_s * t_s + psi(t_s, params) + psi_offset;
    if (initial == InitialSpin::perpendicular) {
        return {std::sin(angle), std::cos(angle)};
    }
    return {std::cos(angle), std::sin(angle)};
}

InPlaneSpin spin_cartesian_straight(double t_s, const PhaseParams& params,
                                    InitialSpin initial, double psi_offset) {
    const double angle = psi(t_s, params) + psi_offset;
    if (initial == InitialSpin::perpendicular) {
        return {std::sin(angle), std::cos(angle)};
    }
    return {std::cos(angle), std::sin(angle)};
}

double rotation_angle(double zeta_x, double zeta_y) {
    const double norm = std::hypot(zeta_x, zeta_y);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DegenerateInPlane("in-plane polarization vector vanished");
    }
    const double ratio = std::fmin(1.0, std::fmax(-1.0, zeta_y / norm));
    return std::asin(ratio);
}

double lyuboshitz_angle(double g_factor, double gamma, double bend_rad) {
    return ((g_factor - 2.0) * (gamma * gamma - 1.0) / (2.0 * gamma) +
            (gamma - 1.0) / gamma) *
           bend_rad;
}

}  // namespace channelspin
