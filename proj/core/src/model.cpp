#include "channelspin/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "channelspin/constants.hpp"
#include "channelspin/errors.hpp"
#include "channelspin/trajectory.hpp"

namespace channelspin {

namespace {

[[noreturn]] void fail_invariant(const std::string& what) {
    throw ValidationError(what);
}

}  // namespace

double ParticleSpec::beta() const {
    return std::sqrt(1.0 - 1.0 / (gamma * gamma));
}

double ParticleSpec::velocity() const {
    return beta() * constants::speed_of_light;
}

void ParticleSpec::validate() const {
    if (!(rest_energy_ev > 0.0)) {
        fail_invariant("rest_energy_ev > 0 violated (rest_energy_ev = " +
                       std::to_string(rest_energy_ev) + ")");
    }
    if (charge_sign != 1.0 && charge_sign != -1.0) {
        fail_invariant("charge_sign must be +1 or -1 (charge_sign = " +
                       std::to_string(charge_sign) + ")");
    }
    if (!(gamma > 1.0)) {
        fail_invariant("gamma > 1 violated (gamma = " + std::to_string(gamma) + ")");
    }
    if (!std::isfinite(g_factor)) {
        fail_invariant("g_factor must be finite");
    }
}

ParticleSpec ParticleSpec::antiproton(double gamma, double g_factor) {
    return {constants::antiproton_rest_energy_ev, -1.0, g_factor, gamma};
}

void CrystalChannel::validate() const {
    if (!(v0_ev > 0.0)) {
        fail_invariant("v0_ev > 0 violated (v0_ev = " + std::to_string(v0_ev) + ")");
    }
    if (!(b_m > 0.0)) {
        fail_invariant("b_m > 0 violated (b_m = " + std::to_string(b_m) + ")");
    }
    if (!(spacing_m > 0.0)) {
        fail_invariant("spacing_m > 0 violated (spacing_m = " +
                       std::to_string(spacing_m) + ")");
    }
    if (!(bend_radius_m > 100.0 * spacing_m)) {
        fail_invariant("bend_radius_m >> spacing_m violated (bend_radius_m = " +
                       std::to_string(bend_radius_m) + ")");
    }
    if (!(radiation_length_m > 0.0)) {
        fail_invariant("radiation_length_m > 0 violated (radiation_length_m = " +
                       std::to_string(radiation_length_m) + ")");
    }
}

CrystalChannel CrystalChannel::tungsten100() {
    // Well depth calibrated so the Lindhard angle at gamma = 1e6 comes out
    // at 4.2e-7 rad; width and spacing for the (100) planes.
    return {82.8, 0.3e-10, 1.58e-10, 1.0, constants::tungsten_radiation_length_m};
}

double potential_straight(double x_m, const CrystalChannel& channel) {
    const double c = std::cosh(x_m / channel.b_m);
    return -channel.v0_ev / (c * c);
}

double potential_bent(double r_m, const CrystalChannel& channel) {
    // Written as V0 + V(r) so the offset identity holds exactly in floating
    // point, not just algebraically.
    return channel.v0_ev + potential_straight(r_m, channel);
}

double field_radial(double r_m, const CrystalChannel& channel) {
    const double u = r_m / channel.b_m;
    const double sech = 1.0 / std::cosh(u);
    return -(2.0 * channel.v0_ev / channel.b_m) * sech * sech * std::tanh(u);
}

double lindhard_angle(const ParticleSpec& particle, const CrystalChannel& channel) {
    return std::sqrt(2.0 * channel.v0_ev / (particle.gamma * particle.rest_energy_ev));
}

double transverse_energy(const EntryConditions& entry, const ParticleSpec& particle,
                         const CrystalChannel& channel) {
    if (std::abs(entry.x0_m) > 0.5 * channel.spacing_m) {
        fail_invariant("|x0_m| <= spacing_m/2 violated (x0_m = " +
                       std::to_string(entry.x0_m) + ")");
    }
    const double kinetic = 0.5 * particle.gamma * particle.rest_energy_ev *
                           entry.theta_rad * entry.theta_rad;
    return kinetic + potential_bent(entry.x0_m, channel);
}

OrbitParams orbit_params(const EntryConditions& entry, const ParticleSpec& particle,
                         const CrystalChannel& channel) {
    particle.validate();
    channel.validate();

    const double eps = transverse_energy(entry, particle, channel);
    if (!(eps < channel.v0_ev)) {
        throw NotChanneled("eps_perp/V0 = " + std::to_string(eps / channel.v0_ev) +
                           " >= 1: entry is not channeled");
    }

    OrbitParams orbit{};
    orbit.eps_perp_ev = eps;
    orbit.amp = std::sqrt(eps / (channel.v0_ev - eps));
    orbit.tau_s = (channel.b_m / constants::speed_of_light) *
                  std::sqrt(particle.gamma * particle.rest_energy_ev /
                            (2.0 * (channel.v0_ev - eps)));
    orbit.omega_rad_s = particle.velocity() / channel.bend_radius_m;
    orbit.t0_s = solve_t0(entry, orbit.amp, orbit.tau_s, channel);
    return orbit;
}

double dechanneling_length(const ParticleSpec& particle, const CrystalChannel& channel) {
    const double me2 = constants::electron_rest_energy_ev * constants::electron_rest_energy_ev;
    return constants::fine_structure / (2.0 * std::numbers::pi) *
           (2.0 * channel.v0_ev * particle.gamma * particle.rest_energy_ev / me2) *
           channel.radiation_length_m;
}

}  // namespace channelspin
