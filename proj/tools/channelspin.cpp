// Command-line front end: spin precession of channeled particles in a bent
// crystal. Subcommands write CSV files (17 significant digits, LF endings)
// into the configured output directory.
//
// Exit codes: 0 success, 1 physics or configuration constraint violated,
// 2 unreadable input or config syntax error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "channelspin/commands.hpp"
#include "channelspin/config.hpp"
#include "channelspin/errors.hpp"

namespace {

void report_files(const channelspin::CommandResult& result) {
    for (const auto& file : result.files) {
        std::cout << "wrote " << file.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin rotation of channeled particles in a bent crystal"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool svg = false;
    std::uint64_t seed = 0;

    app.add_option("-c,--config", config_path,
                   "Configuration file (line-oriented key = value sections)");
    app.add_option("-o,--out", out_dir, "Output directory (overrides the config)");
    app.add_flag("--svg", svg, "Write an SVG plot next to each CSV");
    CLI::Option* seed_option =
        app.add_option("--seed", seed, "Ensemble seed (overrides the config)");

    // Options after the subcommand fall through to the parent parser.
    CLI::App* sub_single = app.add_subcommand(
        "single", "Spin components along one channeled trajectory");
    CLI::App* sub_ensemble = app.add_subcommand(
        "ensemble", "Entry-averaged spin components versus depth, per entry angle");
    CLI::App* sub_divergence = app.add_subcommand(
        "divergence", "Entry-averaged components with Gaussian beam spreads");
    CLI::App* sub_curvature = app.add_subcommand(
        "curvature", "Bent-minus-straight rotation angle with the Lyuboshitz curve");
    CLI::App* sub_omega = app.add_subcommand(
        "omega-scaled", "Ensemble scans with the frame rotation rate scaled up");
    CLI::App* sub_oracle = app.add_subcommand(
        "oracle-check", "Compare the closed-form phase against RK4 integration");
    CLI::App* sub_print = app.add_subcommand(
        "print-config", "Print the fully resolved configuration");
    for (CLI::App* sub : {sub_single, sub_ensemble, sub_divergence, sub_curvature,
                          sub_omega, sub_oracle, sub_print}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        channelspin::RunConfig config = config_path.empty()
                                            ? channelspin::default_config()
                                            : channelspin::parse_config(config_path);
        if (!out_dir.empty()) {
            config.output.directory = out_dir;
        }
        if (svg) {
            config.output.emit_svg = true;
        }
        if (seed_option->count() > 0) {
            config.seed = seed;
        }
        config.validate();

        if (sub_single->parsed()) {
            report_files(channelspin::cmd_single(config));
        } else if (sub_ensemble->parsed()) {
            report_files(channelspin::cmd_ensemble(config));
        } else if (sub_divergence->parsed()) {
            report_files(channelspin::cmd_divergence(config));
        } else if (sub_curvature->parsed()) {
            report_files(channelspin::cmd_curvature(config));
        } else if (sub_omega->parsed()) {
            report_files(channelspin::cmd_omega_scaled(config));
        } else if (sub_oracle->parsed()) {
            return channelspin::cmd_oracle_check(config, std::cout);
        } else if (sub_print->parsed()) {
            std::cout << channelspin::serialize_config(config);
        }
        return 0;
    } catch (const channelspin::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const channelspin::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const channelspin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
