#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "channelspin/commands.hpp"
#include "channelspin/csv.hpp"
#include "channelspin/errors.hpp"
#include "channelspin/model.hpp"

using namespace channelspin;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("channelspin_cmd_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string::size_type start = 0;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        REQUIRE(end != std::string::npos);  // every line LF-terminated
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<double> split_fields(const std::string& line) {
    std::vector<double> fields;
    std::string::size_type start = 0;
    while (start <= line.size()) {
        auto end = line.find(',', start);
        if (end == std::string::npos) end = line.size();
        double value = 0.0;
        const auto* first = line.data() + start;
        const auto* last = line.data() + end;
        const auto result = std::from_chars(first, last, value);
        REQUIRE(result.ec == std::errc{});
        REQUIRE(result.ptr == last);
        fields.push_back(value);
        start = end + 1;
    }
    return fields;
}

RunConfig small_run(const std::string& dir_name) {
    RunConfig config = default_config();
    config.output.directory = fresh_dir(dir_name);
    config.n_points = 24;
    config.n_depth_samples = 40;
    config.depth_max_m = 1e-3;
    return config;
}

}  // namespace

TEST_CASE("doubles render with enough digits to round-trip") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(0.1) == "0.10000000000000001");
    for (const double value : {1.0 / 3.0, 4.2011267837160443e-7,
                               6.928094921346219e-13, -1e300, -0.0}) {
        const std::string text = format_double(value);
        double parsed = 0.0;
        const auto result =
            std::from_chars(text.data(), text.data() + text.size(), parsed);
        REQUIRE(result.ec == std::errc{});
        CHECK(parsed == value);
    }
}

TEST_CASE("csv rendering is exact and strictly rectangular") {
    const std::string text =
        render_csv({{"a", {1.0, 2.0}}, {"b", {0.5, -3.0}}});
    CHECK(text == "a,b\n1,0.5\n2,-3\n");
    CHECK(text.find('\r') == std::string::npos);
    CHECK_THROWS_AS(render_csv({}), ValidationError);
    CHECK_THROWS_AS(render_csv({{"a", {1.0}}, {"b", {1.0, 2.0}}}), GridMismatch);
}

TEST_CASE("the single-trajectory table starts at the entry state") {
    RunConfig config = small_run("single");
    const CommandResult result = cmd_single(config);
    REQUIRE(result.files.size() == 1);
    CHECK(result.files[0] == config.output.directory / "single.csv");

    const std::string text = slurp(result.files[0]);
    CHECK(text.find('\r') == std::string::npos);
    const std::vector<std::string> lines = split_lines(text);
    REQUIRE(lines.size() == 41);  // header + n_depth_samples rows
    CHECK(lines[0] == "depth_m,zeta_x,zeta_y,zeta_z,phi_rad,psi_rad");
    CHECK(lines[1] == "0,0,1,0,0,0");
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const std::vector<double> fields = split_fields(lines[row]);
        REQUIRE(fields.size() == 6);
        CHECK(fields[3] == 0.0);  // spin stays in the bend plane
    }
    const std::vector<double> last = split_fields(lines.back());
    CHECK(last[0] == config.depth_max_m);

    // Identical bytes on a rerun into a fresh directory.
    RunConfig again = config;
    again.output.directory = fresh_dir("single_rerun");
    const CommandResult rerun = cmd_single(again);
    CHECK(slurp(rerun.files[0]) == text);

    // A parallel initial spin starts on the other axis.
    RunConfig parallel = config;
    parallel.output.directory = fresh_dir("single_parallel");
    parallel.entry_spin = InitialSpin::parallel;
    const CommandResult swapped = cmd_single(parallel);
    CHECK(split_lines(slurp(swapped.files[0]))[1] == "0,1,0,0,0,0");

    fs::remove_all(config.output.directory);
    fs::remove_all(again.output.directory);
    fs::remove_all(parallel.output.directory);
}

TEST_CASE("ensemble scans write one file per entry angle") {
    RunConfig config = small_run("ensemble");
    const CommandResult result = cmd_ensemble(config);
    REQUIRE(result.files.size() == 3);
    CHECK(result.files[0].filename() == "ensemble_theta_0.25.csv");
    CHECK(result.files[1].filename() == "ensemble_theta_0.5.csv");
    CHECK(result.files[2].filename() == "ensemble_theta_0.75.csv");

    for (const fs::path& path : result.files) {
        const std::vector<std::string> lines = split_lines(slurp(path));
        REQUIRE(lines.size() == 41);
        CHECK(lines[0] == "depth_m,avg_zeta_x,avg_zeta_y,avg_phi_rad");
        const std::vector<double> first = split_fields(lines[1]);
        CHECK(first[0] == 0.0);
        CHECK(first[1] == 0.0);  // every entry starts at (0, 1)
        CHECK(first[2] == 1.0);
        CHECK(first[3] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    }

    RunConfig again = config;
    again.output.directory = fresh_dir("ensemble_rerun");
    const CommandResult rerun = cmd_ensemble(again);
    CHECK(slurp(rerun.files[1]) == slurp(result.files[1]));

    RunConfig spread = config;
    spread.output.directory = fresh_dir("divergence");
    const CommandResult diverged = cmd_divergence(spread);
    REQUIRE(diverged.files.size() == 3);
    CHECK(diverged.files[0].filename() == "divergence_theta_0.25.csv");
    // Gaussian spreads change the averages away from the sharp-beam run.
    CHECK(slurp(diverged.files[1]) != slurp(result.files[1]));

    fs::remove_all(config.output.directory);
    fs::remove_all(again.output.directory);
    fs::remove_all(spread.output.directory);
}

TEST_CASE("the curvature table carries the reference column") {
    RunConfig config = small_run("curvature");
    config.theta_fracs = {0.5};
    const CommandResult result = cmd_curvature(config);
    REQUIRE(result.files.size() == 1);
    CHECK(result.files[0].filename() == "curvature_theta_0.5.csv");

    const std::vector<std::string> rows = split_lines(slurp(result.files[0]));
    REQUIRE(rows.size() == 41);
    CHECK(rows[0] == "depth_m,phi_cr_rad,phi_lyub_rad");
    CHECK(rows[1] == "0,0,0");

    const std::vector<double> last = split_fields(rows.back());
    const double bend = config.depth_max_m / config.channel.bend_radius_m;
    CHECK(last[1] == doctest::Approx(bend).epsilon(1e-9));
    CHECK(last[2] == doctest::Approx(lyuboshitz_angle(config.particle.g_factor,
                                                      config.particle.gamma, bend))
                         .epsilon(1e-12));

    fs::remove_all(config.output.directory);
}

TEST_CASE("scaled-precession scans emit bent and straight tables") {
    RunConfig config = small_run("omega_scaled");
    config.theta_fracs = {0.5};
    const CommandResult result = cmd_omega_scaled(config);
    REQUIRE(result.files.size() == 2);
    CHECK(result.files[0].filename() == "omega_scaled_bent_theta_0.5.csv");
    CHECK(result.files[1].filename() == "omega_scaled_straight_theta_0.5.csv");
    for (const fs::path& path : result.files) {
        const std::vector<std::string> rows = split_lines(slurp(path));
        REQUIRE(rows.size() == 41);
        CHECK(rows[0] == "depth_m,avg_zeta_x,avg_zeta_y,avg_phi_rad");
    }
    CHECK(slurp(result.files[0]) != slurp(result.files[1]));
    fs::remove_all(config.output.directory);
}

TEST_CASE("svg twins appear next to the tables without touching them") {
    RunConfig config = small_run("svg_on");
    config.theta_fracs = {0.5};
    config.output.emit_svg = true;
    const CommandResult result = cmd_ensemble(config);
    REQUIRE(result.files.size() == 2);
    CHECK(result.files[0].filename() == "ensemble_theta_0.5.csv");
    CHECK(result.files[1].filename() == "ensemble_theta_0.5.svg");

    const std::string svg = slurp(result.files[1]);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("avg_zeta_x") != std::string::npos);  // legend labels
    CHECK(svg.find("avg_phi_rad") != std::string::npos);

    RunConfig plain = config;
    plain.output.directory = fresh_dir("svg_off");
    plain.output.emit_svg = false;
    const CommandResult bare = cmd_ensemble(plain);
    REQUIRE(bare.files.size() == 1);
    CHECK(slurp(bare.files[0]) == slurp(result.files[0]));

    RunConfig again = config;
    again.output.directory = fresh_dir("svg_rerun");
    const CommandResult rerun = cmd_ensemble(again);
    CHECK(slurp(rerun.files[1]) == svg);

    fs::remove_all(config.output.directory);
    fs::remove_all(plain.output.directory);
    fs::remove_all(again.output.directory);
}

TEST_CASE("the integrator check passes honestly and rejects a skewed phase") {
    const RunConfig config = default_config();
    const OracleCheckReport report = run_oracle_check(config);
    CHECK(report.pass);
    CHECK(report.tolerance_rad == 1e-6);
    REQUIRE(report.entries.size() == 10);
    const double half_channel = 0.5 * config.channel.spacing_m;
    const double theta_l = lindhard_angle(config.particle, config.channel);
    for (const OracleCheckEntry& entry : report.entries) {
        CHECK(entry.pass);
        CHECK(entry.max_error_rad < report.tolerance_rad);
        CHECK(entry.rms_error_rad <= entry.max_error_rad);
        CHECK(std::abs(entry.x0_m) < half_channel);
        CHECK(std::abs(entry.theta_rad) < theta_l);
        CHECK(entry.eps_perp_ev < config.channel.v0_ev);
    }

    std::ostringstream out;
    CHECK(cmd_oracle_check(config, out) == 0);
    CHECK(out.str().find("oracle check: PASS (10/10") != std::string::npos);

    RunConfig skewed = config;
    skewed.oracle.phase_scale = 1.01;
    const OracleCheckReport bad = run_oracle_check(skewed);
    CHECK_FALSE(bad.pass);
    for (const OracleCheckEntry& entry : bad.entries) {
        CHECK_FALSE(entry.pass);
    }
    std::ostringstream out_bad;
    CHECK(cmd_oracle_check(skewed, out_bad) == 1);
    CHECK(out_bad.str().find("FAIL") != std::string::npos);
}
