#pragma once

// Closed-form channeled trajectory in the bent channel.
//
// The radial offset follows r(t) = b asinh(A sin((t - t0)/tau)), which
// satisfies energy conservation (gamma m / 2) r_dot^2 + V_B(r) = eps_perp
// exactly; the azimuthal angle advances uniformly, phi(t) = Omega t.

#include "channelspin/model.hpp"

namespace channelspin {

struct Trajectory {
    ParticleSpec particle;
    CrystalChannel channel;
    EntryConditions entry;
    OrbitParams orbit;
};

// Builds the orbit for the given entry. Throws NotChanneled.
Trajectory make_trajectory(const EntryConditions& entry, const ParticleSpec& particle,
                           const CrystalChannel& channel);

// Entry phase offset t0: the smallest |t0| with
//   b asinh(A sin(-t0/tau)) = x0   and   sign(r_dot(0)) = sign(theta),
// ties broken toward positive t0. For theta = 0 the entry is a turning
// point (cos(-t0/tau) = 0). A = 0 is the degenerate center orbit (t0 = 0).
// Throws InconsistentEntry when |sinh(x0/b)| > A.
double solve_t0(const EntryConditions& entry, double amp, double tau_s,
                const CrystalChannel& channel);

// r(t) = rho(t) - R. Kept separate from rho() so tests and integrators can
// work at the channel scale (~1e-11 m) without losing precision to R ~ 1 m.
double radial_offset(double t_s, const Trajectory& trajectory);

double rho(double t_s, const Trajectory& trajectory);  // R + radial_offset

// dr/dt = (b A / tau) cos((t - t0)/tau) / sqrt(1 + A^2 sin^2((t - t0)/tau)).
double rho_dot(double t_s, const Trajectory& trajectory);

double phi(double t_s, const Trajectory& trajectory);  // Omega * t

double period(const Trajectory& trajectory);  // 2 pi tau

}  // namespace channelspin
