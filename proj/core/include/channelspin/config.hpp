#pragma once

// Line-oriented run configuration: `[section]` headers, `key = value`
// pairs, `#` comments. Unknown sections or keys are parse errors. Every
// key has a default, so an empty file is a valid configuration.

#include <filesystem>
#include <string>
#include <vector>

#include "channelspin/ensemble.hpp"
#include "channelspin/model.hpp"
#include "channelspin/spin.hpp"

namespace channelspin {

struct OutputConfig {
    std::filesystem::path directory = "out";
    bool emit_svg = false;
};

// Settings for the closed-form-versus-integrator check.
struct OracleConfig {
    int entries = 10;              // random channeled entries to test
    double depth_m = 1e-3;         // span of each comparison
    double step_frac = 1e-3;       // RK4 step as a fraction of tau
    double tolerance_rad = 1e-6;   // max phase discrepancy allowed
    // Corruption hook for exercising the failure path: multiplies the
    // closed-form phase before comparison. 1.0 = honest run.
    double phase_scale = 1.0;
};

struct RunConfig {
    ParticleSpec particle = ParticleSpec::antiproton(1e6);
    CrystalChannel channel = CrystalChannel::tungsten100();

    // Ensemble scans: one run per entry-angle fraction of Theta_L.
    int n_points = 200;
    std::vector<double> theta_fracs = {0.25, 0.5, 0.75};
    double sigma_theta_frac = 0.05;  // of the resolved theta_mean
    double sigma_gamma_frac = 0.05;  // of gamma
    std::uint64_t seed = 1;
    double depth_max_m = 0.01;
    int n_depth_samples = 2000;
    double omega_scale = 1000.0;

    // Single-trajectory runs.
    double entry_x0_m = 0.45e-10;
    double entry_theta_frac = 0.25;
    InitialSpin entry_spin = InitialSpin::perpendicular;

    OutputConfig output;
    OracleConfig oracle;

    // Resolved ensemble settings for one entry-angle fraction.
    EnsembleConfig ensemble_for(double theta_frac, Divergence divergence) const;

    void validate() const;
};

RunConfig default_config();

// Throws ParseError (with line number) or ValidationError.
RunConfig parse_config_text(const std::string& text);

// Reads the file and parses it. Throws IoError when unreadable.
RunConfig parse_config(const std::filesystem::path& path);

// Canonical key = value rendering; parse_config_text round-trips it.
std::string serialize_config(const RunConfig& config);

}  // namespace channelspin
