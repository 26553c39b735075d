#pragma once

// Closed-form spin precession of a channeled particle.
//
// In the co-rotating polar frame the in-plane polarization obeys
//     d zeta_rho / dt =  Lambda(t) zeta_phi
//     d zeta_phi / dt = -Lambda(t) zeta_rho
//     d zeta_z   / dt =  0,
// whose solution is a pure phase: (zeta_rho, zeta_phi) = (cos Psi, sin Psi)
// with
//     Psi(t) = C [Theta(x) - Theta(x_e)] + (gamma - 1) [Phi(x) - Phi(x_e)],
//     x = (t - t0)/tau,  x_e = -t0/tau  (entry phase, so Psi(0) = 0).
//
// Sign and branch conventions, frozen here and used everywhere:
//   * d Psi / dt = -Lambda(t); lambda_coefficient() is the exact analytic
//     derivative of psi() under this convention.
//   * C carries the particle's charge sign as a factor:
//     C = charge_sign * sqrt(2) A R tau Omega g V0 / (gamma m c^2 (1+A^2) b).
//   * Phi is the continuous arccot branch: equal to the principal value on
//     (-pi/2, pi/2), extended through each cosine zero by a pi offset,
//     with Phi(0) in (0, pi). Closed form: Phi(x) =
//     atan(A b cos x / (R tau Omega sqrt(1 + A^2 sin^2 x))), total in x.
//   * Lab components: the polar frame rotates by phi(t) = Omega t, giving
//     (zeta_x, zeta_y) = (sin(phi + Psi), cos(phi + Psi)) for a spin that
//     starts perpendicular to the plane; a parallel start swaps the two.
//     The straight-channel forms drop phi(t) and keep Psi unchanged.
//
// An arbitrary initial in-plane phase is supported by the psi_offset
// argument, which adds a constant to Psi.

#include "channelspin/model.hpp"
#include "channelspin/trajectory.hpp"

namespace channelspin {

enum class InitialSpin { perpendicular, parallel };

// Polar-frame polarization components.
struct SpinState {
    double zeta_rho;
    double zeta_phi;
    double zeta_z;
};

// In-plane lab components.
struct InPlaneSpin {
    double zeta_x;
    double zeta_y;
};

// Everything the closed-form phase depends on.
struct PhaseParams {
    OrbitParams orbit;
    double c_const;        // C, see above
    double gamma;
    double g_factor;
    double charge_sign;
    double b_m;
    double bend_radius_m;
};

PhaseParams phase_params(const Trajectory& trajectory);

// Theta(x) = cos x / sqrt(2 (1 + A^2 sin^2 x)). Even, 2*pi periodic.
double theta_fn(double x, double amp);

// Continuous arccot branch (see header comment). r_tau_omega_m = R tau Omega.
double phi_fn(double x, double amp, double r_tau_omega_m, double b_m);

// Principal arccot value in (0, pi). Throws PoleAtHalfPi when cos x is
// exactly zero. The continuous phi_fn is what the phase uses; this raw form
// exists to expose the branch structure.
double phi_fn_principal(double x, double amp, double r_tau_omega_m, double b_m);

// Low-level principal form on precomputed cos x / sin^2 x. Testable at the
// exact pole, which no double argument of cos() reaches.
double phi_fn_principal_from_cos(double cos_x, double sin2_x, double amp,
                                 double r_tau_omega_m, double b_m);

// C; zero when A = 0.
double c_const(const OrbitParams& orbit, const ParticleSpec& particle,
               const CrystalChannel& channel);

// Psi(t); Psi(0) = 0 exactly.
double psi(double t_s, const PhaseParams& params);

// Lambda(t) = -dPsi/dt, rad/s:
//   [A R Omega sin x / sqrt(S)] * [ charge_sign g V0 / (gamma m c^2 b S)
//     + (1+A^2) b (gamma-1) / (A^2 b^2 cos^2 x + (R tau Omega)^2 S) ],
// with S = 1 + A^2 sin^2 x.
double lambda_coefficient(double t_s, const PhaseParams& params);

// Polar spin with an out-of-plane tilt: in-plane norm sqrt(1 - zeta_z0^2).
SpinState spin_polar(double t_s, const PhaseParams& params, double zeta_z0,
                     double psi_offset = 0.0);

// Lab components in the bent channel; phi(t) = orbit.omega * t.
InPlaneSpin spin_cartesian_bent(double t_s, const PhaseParams& params,
                                InitialSpin initial, double psi_offset = 0.0);

// Lab components in the straight channel: same Psi, no frame rotation.
InPlaneSpin spin_cartesian_straight(double t_s, const PhaseParams& params,
                                    InitialSpin initial, double psi_offset = 0.0);

// Rotation angle arcsin(zeta_y / sqrt(zeta_x^2 + zeta_y^2)).
// Throws DegenerateInPlane when the in-plane norm vanishes.
double rotation_angle(double zeta_x, double zeta_y);

// Spin rotation produced by a trajectory bend of angle `bend_rad`:
//   ((g-2)(gamma^2-1)/(2 gamma) + (gamma-1)/gamma) * bend_rad.
double lyuboshitz_angle(double g_factor, double gamma, double bend_rad);

}  // namespace channelspin
