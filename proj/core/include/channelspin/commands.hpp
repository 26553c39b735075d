#pragma once

// Subcommand implementations shared by the CLI binary and the tests.
// Each writes CSV files (and SVG twins when enabled) into the configured
// output directory and reports what it wrote.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "channelspin/config.hpp"

namespace channelspin {

struct CommandResult {
    std::vector<std::filesystem::path> files;
};

// One closed-form trajectory (bent): depth_m, zeta_x, zeta_y, zeta_z,
// phi_rad (frame rotation), psi_rad (precession phase).
CommandResult cmd_single(const RunConfig& config);

// Averaged components, one file per theta fraction; no divergence.
CommandResult cmd_ensemble(const RunConfig& config);

// Same with Gaussian divergence switched on.
CommandResult cmd_divergence(const RunConfig& config);

// Bent-minus-straight angle with the Lyuboshitz reference column.
CommandResult cmd_curvature(const RunConfig& config);

// Ensemble scans with Omega scaled; bent and straight files per theta.
CommandResult cmd_omega_scaled(const RunConfig& config);

struct OracleCheckEntry {
    double x0_m = 0.0;
    double theta_rad = 0.0;
    double eps_perp_ev = 0.0;
    double max_error_rad = 0.0;
    double rms_error_rad = 0.0;
    bool pass = false;
};

struct OracleCheckReport {
    std::vector<OracleCheckEntry> entries;
    double tolerance_rad = 0.0;
    bool pass = false;
};

OracleCheckReport run_oracle_check(const RunConfig& config);

// Prints the report; returns 0 when every entry passed, 1 otherwise.
int cmd_oracle_check(const RunConfig& config, std::ostream& out);

}  // namespace channelspin
