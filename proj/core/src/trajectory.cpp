#include "channelspin/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "channelspin/errors.hpp"

namespace channelspin {

Trajectory make_trajectory(const EntryConditions& entry, const ParticleSpec& particle,
                           const CrystalChannel& channel) {
    return {particle, channel, entry, orbit_params(entry, particle, channel)};
}

double solve_t0(const EntryConditions& entry, double amp, double tau_s,
                const CrystalChannel& channel) {
    const double pi = std::numbers::pi;
    const double s = std::sinh(entry.x0_m / channel.b_m);  // A sin(-t0/tau) must equal this

    if (amp == 0.0) {
        if (entry.x0_m != 0.0) {
            throw InconsistentEntry("zero-amplitude orbit cannot pass through x0 = " +
                                    std::to_string(entry.x0_m));
        }
        return 0.0;  // degenerate center orbit
    }

    // Allow for rounding when the amplitude was derived from this same entry.
    if (std::abs(s) > amp * (1.0 + 1e-12)) {
        throw InconsistentEntry("|sinh(x0/b)| = " + std::to_string(std::abs(s)) +
                                " exceeds orbit amplitude A = " + std::to_string(amp));
    }

    // Work in u = -t0/tau: A sin(u) = s with sign(cos u) matching sign(theta).
    if (entry.theta_rad == 0.0) {
        // Turning-point entry: cos u = 0, sin u = +-1 picked by the side.
        const double u = (s >= 0.0) ? 0.5 * pi : -0.5 * pi;
        return -u * tau_s;
    }

    const double ratio = std::fmin(1.0, std::fmax(-1.0, s / amp));
    const double u1 = std::asin(ratio);  // rising branch, cos u1 >= 0

    if (entry.theta_rad > 0.0) {
        return -u1 * tau_s;
    }
    // Falling branch: candidates pi - u1 and -pi - u1; smallest |t0| wins,
    // ties toward positive t0.
    const double ua = pi - u1;
    const double ub = -pi - u1;
    const double u = (std::abs(ua) < std::abs(ub)) ? ua : ub;
    return -u * tau_s;
}

double radial_offset(double t_s, const Trajectory& trajectory) {
    const OrbitParams& orbit = trajectory.orbit;
    const double x = (t_s - orbit.t0_s) / orbit.tau_s;
    return trajectory.channel.b_m * std::asinh(orbit.amp * std::sin(x));
}

double rho(double t_s, const Trajectory& trajectory) {
    return trajectory.channel.bend_radius_m + radial_offset(t_s, trajectory);
}

double rho_dot(double t_s, const Trajectory& trajectory) {
    const OrbitParams& orbit = trajectory.orbit;
    const double x = (t_s - orbit.t0_s) / orbit.tau_s;
    const double sx = std::sin(x);
    return (trajectory.channel.b_m * orbit.amp / orbit.tau_s) * std::cos(x) /
           std::sqrt(1.0 + orbit.amp * orbit.amp * sx * sx);
}

double phi(double t_s, const Trajectory& trajectory) {
    return trajectory.orbit.omega_rad_s * t_s;
}

double period(const Trajectory& trajectory) {
    return 2.0 * std::numbers::pi * trajectory.orbit.tau_s;
}

}  // namespace channelspin
