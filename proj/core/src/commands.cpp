#include "channelspin/commands.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "channelspin/constants.hpp"
#include "channelspin/csv.hpp"
#include "channelspin/ensemble.hpp"
#include "channelspin/errors.hpp"
#include "channelspin/oracle.hpp"
#include "channelspin/spin.hpp"
#include "channelspin/svg.hpp"
#include "channelspin/trajectory.hpp"

namespace channelspin {

namespace {

// Depth scans assume the particle stays channeled; past a tenth of the
// dechanneling length that assumption degrades.
void warn_if_beyond_dechanneling(const RunConfig& config) {
    const double bound =
        0.1 * dechanneling_length(config.particle, config.channel);
    if (config.depth_max_m > bound) {
        std::fprintf(stderr,
                     "warning: depth_max_m = %g m exceeds 0.1 * dechanneling "
                     "length = %g m; scattering losses are not modeled\n",
                     config.depth_max_m, bound);
    }
}

void ensure_output_dir(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.output.directory, ec);
    if (ec) {
        throw IoError("cannot create output directory " +
                      config.output.directory.string() + ": " + ec.message());
    }
}

// Writes the CSV and, when enabled, an SVG twin of the non-axis columns.
void emit(const RunConfig& config, CommandResult& result, const std::string& stem,
          const std::vector<CsvColumn>& columns) {
    const std::filesystem::path csv_path = config.output.directory / (stem + ".csv");
    write_csv(csv_path, columns);
    result.files.push_back(csv_path);
    if (config.output.emit_svg) {
        const std::filesystem::path svg_path = config.output.directory / (stem + ".svg");
        write_polyline_svg(svg_path, columns, stem);
        result.files.push_back(svg_path);
    }
}

std::vector<double> depth_axis(const RunConfig& config) {
    const auto n = static_cast<std::size_t>(config.n_depth_samples);
    std::vector<double> depths(n);
    for (std::size_t k = 0; k < n; ++k) {
        depths[k] = config.depth_max_m * static_cast<double>(k) /
                    static_cast<double>(n - 1);
    }
    return depths;
}

std::vector<CsvColumn> scan_columns(const DepthScan& scan) {
    return {{"depth_m", scan.depths_m},
            {"avg_zeta_x", scan.avg_zeta_x},
            {"avg_zeta_y", scan.avg_zeta_y},
            {"avg_phi_rad", scan.avg_phi_rad}};
}

CommandResult run_scans(const RunConfig& config, Divergence divergence,
                        const std::string& prefix) {
    config.validate();
    warn_if_beyond_dechanneling(config);
    ensure_output_dir(config);
    CommandResult result;
    for (const double frac : config.theta_fracs) {
        const EnsembleConfig ensemble = config.ensemble_for(frac, divergence);
        const DepthScan scan = average_components(ensemble, config.particle,
                                                  config.channel, CrystalMode::bent,
                                                  divergence);
        emit(config, result, prefix + "_theta_" + format_double(frac),
             scan_columns(scan));
    }
    return result;
}

double uniform_in(double lo, double hi, std::mt19937_64& engine) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace

CommandResult cmd_single(const RunConfig& config) {
    config.validate();
    warn_if_beyond_dechanneling(config);
    ensure_output_dir(config);

    const double theta =
        config.entry_theta_frac * lindhard_angle(config.particle, config.channel);
    const EntryConditions entry{config.entry_x0_m, theta};
    const Trajectory trajectory = make_trajectory(entry, config.particle, config.channel);
    const PhaseParams params = phase_params(trajectory);
    const double speed = config.particle.beta() * constants::speed_of_light;

    const std::vector<double> depths = depth_axis(config);
    std::vector<double> zeta_x(depths.size());
    std::vector<double> zeta_y(depths.size());
    std::vector<double> zeta_z(depths.size(), 0.0);
    std::vector<double> phi_rad(depths.size());
    std::vector<double> psi_rad(depths.size());
    for (std::size_t k = 0; k < depths.size(); ++k) {
        const double t = depths[k] / speed;
        const InPlaneSpin spin = spin_cartesian_bent(t, params, config.entry_spin);
        zeta_x[k] = spin.zeta_x;
        zeta_y[k] = spin.zeta_y;
        phi_rad[k] = phi(t, trajectory);
        psi_rad[k] = psi(t, params);
    }

    CommandResult result;
    emit(config, result, "single",
         {{"depth_m", depths},
          {"zeta_x", zeta_x},
          {"zeta_y", zeta_y},
          {"zeta_z", zeta_z},
          {"phi_rad", phi_rad},
          {"psi_rad", psi_rad}});
    return result;
}

CommandResult cmd_ensemble(const RunConfig& config) {
    return run_scans(config, Divergence::off, "ensemble");
}

CommandResult cmd_divergence(const RunConfig& config) {
    return run_scans(config, Divergence::on, "divergence");
}

CommandResult cmd_curvature(const RunConfig& config) {
    config.validate();
    warn_if_beyond_dechanneling(config);
    ensure_output_dir(config);
    CommandResult result;
    for (const double frac : config.theta_fracs) {
        const EnsembleConfig ensemble = config.ensemble_for(frac, Divergence::off);
        const CurvatureScan scan = curvature_contribution(ensemble, config.particle,
                                                          config.channel,
                                                          Divergence::off);
        emit(config, result, "curvature_theta_" + format_double(frac),
             {{"depth_m", scan.depths_m},
              {"phi_cr_rad", scan.phi_cr_rad},
              {"phi_lyub_rad", scan.phi_lyuboshitz_rad}});
    }
    return result;
}

CommandResult cmd_omega_scaled(const RunConfig& config) {
    config.validate();
    warn_if_beyond_dechanneling(config);
    ensure_output_dir(config);
    CommandResult result;
    for (const double frac : config.theta_fracs) {
        const EnsembleConfig ensemble = config.ensemble_for(frac, Divergence::off);
        const DepthScan bent =
            scaled_omega_scan(ensemble, config.particle, config.channel,
                              config.omega_scale, CrystalMode::bent, Divergence::off);
        const DepthScan straight =
            scaled_omega_scan(ensemble, config.particle, config.channel,
                              config.omega_scale, CrystalMode::straight,
                              Divergence::off);
        const std::string suffix = "_theta_" + format_double(frac);
        emit(config, result, "omega_scaled_bent" + suffix, scan_columns(bent));
        emit(config, result, "omega_scaled_straight" + suffix, scan_columns(straight));
    }
    return result;
}

OracleCheckReport run_oracle_check(const RunConfig& config) {
    config.validate();
    const ParticleSpec& particle = config.particle;
    const CrystalChannel& channel = config.channel;
    const double theta_l = lindhard_angle(particle, channel);
    const double half = 0.5 * channel.spacing_m;

    std::mt19937_64 engine(config.seed);
    OracleCheckReport report;
    report.tolerance_rad = config.oracle.tolerance_rad;
    report.pass = true;

    for (int i = 0; i < config.oracle.entries; ++i) {
        // Rejection-sample a channeled entry.
        EntryConditions entry{};
        Trajectory trajectory;
        bool found = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            entry.x0_m = uniform_in(-half, half, engine);
            entry.theta_rad = uniform_in(-theta_l, theta_l, engine);
            try {
                trajectory = make_trajectory(entry, particle, channel);
            } catch (const NotChanneled&) {
                continue;
            }
            found = true;
            break;
        }
        if (!found) {
            throw ValidationError("could not sample a channeled entry in 10000 draws");
        }

        const PhaseParams params = phase_params(trajectory);
        const IntegratorConfig integ{config.oracle.step_frac * trajectory.orbit.tau_s};
        const SpinPath path = integrate_bmt(trajectory, params, config.oracle.depth_m, integ);
        const std::vector<double> oracle_phase = unwrap_phase(path);

        std::vector<double> closed(path.times_s.size());
        for (std::size_t k = 0; k < closed.size(); ++k) {
            closed[k] = config.oracle.phase_scale * psi(path.times_s[k], params);
        }
        const PhaseComparison cmp =
            compare_phase(path.times_s, closed, path.times_s, oracle_phase,
                          config.oracle.tolerance_rad);

        OracleCheckEntry record;
        record.x0_m = entry.x0_m;
        record.theta_rad = entry.theta_rad;
        record.eps_perp_ev = trajectory.orbit.eps_perp_ev;
        record.max_error_rad = cmp.max_abs_error_rad;
        record.rms_error_rad = cmp.rms_error_rad;
        record.pass = cmp.pass;
        report.pass = report.pass && cmp.pass;
        report.entries.push_back(record);
    }
    return report;
}

int cmd_oracle_check(const RunConfig& config, std::ostream& out) {
    const OracleCheckReport report = run_oracle_check(config);
    int n_pass = 0;
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const OracleCheckEntry& entry = report.entries[i];
        n_pass += entry.pass ? 1 : 0;
        out << "entry " << (i + 1) << "/" << report.entries.size()
            << ": x0 = " << format_double(entry.x0_m)
            << " m, theta = " << format_double(entry.theta_rad)
            << " rad, max |dpsi| = " << format_double(entry.max_error_rad)
            << " rad, rms = " << format_double(entry.rms_error_rad) << " rad "
            << (entry.pass ? "PASS" : "FAIL") << "\n";
    }
    out << "oracle check: " << (report.pass ? "PASS" : "FAIL") << " (" << n_pass << "/"
        << report.entries.size() << " within " << format_double(report.tolerance_rad)
        << " rad)\n";
    return report.pass ? 0 : 1;
}

}  // namespace channelspin
