#pragma once

// Continuous-potential model of planar channeling in a bent crystal.
//
// A single crystal plane is modeled by the Poschl-Teller well
//     V(x) = -V0 / cosh^2(x/b),
// and bending the planes to radius R shifts the zero so the bent-channel
// effective potential V_B(r) = V0 [1 - cosh^(-2)(r/b)] is confining in the
// radial offset r = rho - R.
//
// Unit system: energies in eV (the elementary charge is absorbed into V0,
// so "field" values are energy gradients in eV/m), lengths in m, times in
// s, angles in rad. Rest mass appears only as the rest energy m c^2 in eV.

#include <cstdint>

namespace channelspin {

struct ParticleSpec {
    double rest_energy_ev;  // m c^2
    double charge_sign;     // -1 or +1, in units of the elementary charge
    double g_factor;        // gyromagnetic factor
    double gamma;           // Lorentz factor, > 1

    double beta() const;      // v/c
    double velocity() const;  // beta * c, m/s

    // Throws ValidationError naming the violated invariant.
    void validate() const;

    static ParticleSpec antiproton(double gamma, double g_factor = 2.0);
};

struct CrystalChannel {
    double v0_ev;               // well depth V0, > 0
    double b_m;                 // well width b, > 0
    double spacing_m;           // interplanar distance d, > 0
    double bend_radius_m;       // R, >> spacing
    double radiation_length_m;  // material radiation length, > 0

    void validate() const;

    static CrystalChannel tungsten100();
};

struct EntryConditions {
    double x0_m;       // entry offset from the channel center, |x0| <= d/2
    double theta_rad;  // entry angle to the plane
};

// Parameters of one channeled transverse orbit.
struct OrbitParams {
    double eps_perp_ev;  // transverse energy, 0 <= eps_perp < V0
    double amp;          // A = sqrt(eps_perp / (V0 - eps_perp)), >= 0
    double tau_s;        // orbit time scale; period is 2*pi*tau
    double t0_s;         // entry phase offset
    double omega_rad_s;  // angular velocity along the bend, beta*c/R
};

// V(x) = -V0 / cosh^2(x/b), in eV.
double potential_straight(double x_m, const CrystalChannel& channel);

// V_B(r) = V0 + V(r); zero at the channel center, V0 at infinity.
double potential_bent(double r_m, const CrystalChannel& channel);

// -dV_B/dr = -(2 V0 / b) cosh^(-2)(r/b) tanh(r/b), in eV/m.
double field_radial(double r_m, const CrystalChannel& channel);

// Lindhard critical angle Theta_L = sqrt(2 V0 / (gamma m c^2)).
double lindhard_angle(const ParticleSpec& particle, const CrystalChannel& channel);

// eps_perp = (gamma m c^2 / 2) theta^2 + V_B(x0). Conserved along the orbit.
double transverse_energy(const EntryConditions& entry, const ParticleSpec& particle,
                         const CrystalChannel& channel);

// Full orbit solve: transverse energy, amplitude, time scale, entry phase,
// angular velocity. Throws NotChanneled when eps_perp >= V0.
OrbitParams orbit_params(const EntryConditions& entry, const ParticleSpec& particle,
                         const CrystalChannel& channel);

// Dechanneling length l_d = (alpha / 2 pi) (2 V0 gamma m c^2 / (m_e c^2)^2) L_rad.
// Scan depths beyond ~0.1 l_d leave the model's validity region.
double dechanneling_length(const ParticleSpec& particle, const CrystalChannel& channel);

}  // namespace channelspin
