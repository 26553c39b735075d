#pragma once

// Fixed-step RK4 cross-checks for the closed forms.
//
// Two independent integrations: the radial equation of motion
// r_ddot = -(1/(gamma m)) dV_B/dr against the analytic orbit, and the
// polar-frame spin system against the closed-form phase. Fixed step keeps
// runs bit-reproducible; the step must resolve the orbit (<= tau/100).

#include <cstddef>
#include <vector>

#include "channelspin/spin.hpp"
#include "channelspin/trajectory.hpp"

namespace channelspin {

struct IntegratorConfig {
    double step_s;                       // <= tau/100 or StepTooLarge
    std::size_t max_steps = 100000000;   // guard against runaway spans
};

// Radial motion sampled at every accepted step (t_i = i*h, h <= step_s
// chosen so the span divides evenly; endpoints exact).
struct RadialPath {
    std::vector<double> times_s;
    std::vector<double> offsets_m;     // r = rho - R
    std::vector<double> velocities_m_s;
    double bend_radius_m = 0.0;
};

// Polar spin components on the same stepping scheme.
struct SpinPath {
    std::vector<double> times_s;
    std::vector<double> zeta_rho;
    std::vector<double> zeta_phi;
    std::vector<double> zeta_z;
};

struct PhaseComparison {
    double max_abs_error_rad = 0.0;
    double rms_error_rad = 0.0;
    std::size_t n_samples = 0;
    double tolerance_rad = 0.0;
    bool pass = false;
};

// RK4 on (r, v) from (x0, c*theta) over depth_m of penetration.
// Throws StepTooLarge / ValidationError.
RadialPath integrate_radial(const Trajectory& trajectory, double depth_m,
                            const IntegratorConfig& config);

// RK4 on (zeta_rho, zeta_phi, zeta_z) from (1, 0, 0) with the analytic
// rate Lambda(t). Throws StepTooLarge / ValidationError.
SpinPath integrate_bmt(const Trajectory& trajectory, const PhaseParams& params,
                       double depth_m, const IntegratorConfig& config);

// Continuous phase atan2(zeta_phi, zeta_rho) unwrapped along the path.
std::vector<double> unwrap_phase(const SpinPath& path);

// Pointwise comparison of two phase series on one grid.
// Throws GridMismatch when the time grids differ.
PhaseComparison compare_phase(const std::vector<double>& times_a,
                              const std::vector<double>& psi_a,
                              const std::vector<double>& times_b,
                              const std::vector<double>& psi_b,
                              double tolerance_rad);

}  // namespace channelspin
