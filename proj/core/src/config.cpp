#include "channelspin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "channelspin/csv.hpp"
#include "channelspin/errors.hpp"

namespace channelspin {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
        throw ParseError(line, "expected a finite number, got \"" + value + "\"");
    }
    return out;
}

int parse_int(const std::string& value, int line) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected an integer, got \"" + value + "\"");
    }
    return out;
}

std::uint64_t parse_uint64(const std::string& value, int line) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected a nonnegative integer, got \"" + value + "\"");
    }
    return out;
}

bool parse_bool(const std::string& value, int line) {
    if (value == "true") {
        return true;
    }
    if (value == "false") {
        return false;
    }
    throw ParseError(line, "expected true or false, got \"" + value + "\"");
}

std::vector<double> parse_list(const std::string& value, int line) {
    std::vector<double> out;
    std::string::size_type start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto piece =
            trim(value.substr(start, comma == std::string::npos ? std::string::npos
                                                                : comma - start));
        if (piece.empty()) {
            throw ParseError(line, "empty element in list \"" + value + "\"");
        }
        out.push_back(parse_double(piece, line));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.empty()) {
        throw ParseError(line, "expected a comma-separated list of numbers");
    }
    return out;
}

InitialSpin parse_spin(const std::string& value, int line) {
    if (value == "perpendicular") {
        return InitialSpin::perpendicular;
    }
    if (value == "parallel") {
        return InitialSpin::parallel;
    }
    throw ParseError(line, "expected perpendicular or parallel, got \"" + value + "\"");
}

void apply_key(RunConfig& config, const std::string& section, const std::string& key,
               const std::string& value, int line) {
    if (section == "particle") {
        if (key == "gamma") config.particle.gamma = parse_double(value, line);
        else if (key == "g_factor") config.particle.g_factor = parse_double(value, line);
        else if (key == "charge_sign") config.particle.charge_sign = parse_double(value, line);
        else if (key == "rest_energy_ev") config.particle.rest_energy_ev = parse_double(value, line);
        else throw ParseError(line, "unknown key \"" + key + "\" in [particle]");
    } else if (section == "crystal") {
        if (key == "v0_ev") config.channel.v0_ev = parse_double(value, line);
        else if (key == "b_m") config.channel.b_m = parse_double(value, line);
        else if (key == "spacing_m") config.channel.spacing_m = parse_double(value, line);
        else if (key == "bend_radius_m") config.channel.bend_radius_m = parse_double(value, line);
        else if (key == "radiation_length_m") config.channel.radiation_length_m = parse_double(value, line);
        else throw ParseError(line, "unknown key \"" + key + "\" in [crystal]");
    } else if (section == "ensemble") {
        if (key == "n_points") config.n_points = parse_int(value, line);
        else if (key == "theta_fracs") config.theta_fracs = parse_list(value, line);
        else if (key == "sigma_theta_frac") config.sigma_theta_frac = parse_double(value, line);
        else if (key == "sigma_gamma_frac") config.sigma_gamma_frac = parse_double(value, line);
        else if (key == "seed") config.seed = parse_uint64(value, line);
        else if (key == "depth_max_m") config.depth_max_m = parse_double(value, line);
        else if (key == "n_depth_samples") config.n_depth_samples = parse_int(value, line);
        else if (key == "omega_scale") config.omega_scale = parse_double(value, line);
        else throw ParseError(line, "unknown key \"" + key + "\" in [ensemble]");
    } else if (section == "entry") {
        if (key == "x0_m") config.entry_x0_m = parse_double(value, line);
        else if (key == "theta_frac") config.entry_theta_frac = parse_double(value, line);
        else if (key == "spin") config.entry_spin = parse_spin(value, line);
        else throw ParseError(line, "unknown key \"" + key + "\" in [entry]");
    } else if (section == "output") {
        if (key == "directory") {
            if (value.empty()) throw ParseError(line, "directory must not be empty");
            config.output.directory = value;
        } else if (key == "svg") {
            config.output.emit_svg = parse_bool(value, line);
        } else {
            throw ParseError(line, "unknown key \"" + key + "\" in [output]");
        }
    } else if (section == "oracle") {
        if (key == "entries") config.oracle.entries = parse_int(value, line);
        else if (key == "depth_m") config.oracle.depth_m = parse_double(value, line);
        else if (key == "step_frac") config.oracle.step_frac = parse_double(value, line);
        else if (key == "tolerance_rad") config.oracle.tolerance_rad = parse_double(value, line);
        else if (key == "phase_scale") config.oracle.phase_scale = parse_double(value, line);
        else throw ParseError(line, "unknown key \"" + key + "\" in [oracle]");
    } else {
        throw ParseError(line, "unknown section [" + section + "]");
    }
}

}  // namespace

EnsembleConfig RunConfig::ensemble_for(double theta_frac, Divergence divergence) const {
    EnsembleConfig ensemble;
    ensemble.n_points = n_points;
    ensemble.theta_mean_rad = theta_frac * lindhard_angle(particle, channel);
    ensemble.gamma_mean = particle.gamma;
    if (divergence == Divergence::on) {
        ensemble.sigma_theta_rad = sigma_theta_frac * ensemble.theta_mean_rad;
        ensemble.sigma_gamma = sigma_gamma_frac * particle.gamma;
    }
    ensemble.seed = seed;
    ensemble.depth_max_m = depth_max_m;
    ensemble.n_depth_samples = n_depth_samples;
    return ensemble;
}

void RunConfig::validate() const {
    particle.validate();
    channel.validate();
    if (n_points <= 0) {
        throw ValidationError("n_points > 0 violated");
    }
    if (theta_fracs.empty()) {
        throw ValidationError("theta_fracs must not be empty");
    }
    for (const double frac : theta_fracs) {
        if (!std::isfinite(frac)) {
            throw ValidationError("theta_fracs must be finite");
        }
    }
    if (sigma_theta_frac < 0.0 || sigma_gamma_frac < 0.0) {
        throw ValidationError("spread fractions must be nonnegative");
    }
    if (!(depth_max_m > 0.0)) {
        throw ValidationError("depth_max_m > 0 violated");
    }
    if (n_depth_samples < 2) {
        throw ValidationError("n_depth_samples >= 2 violated");
    }
    if (!(omega_scale > 0.0) || !std::isfinite(omega_scale)) {
        throw ValidationError("omega_scale must be positive and finite");
    }
    if (!(std::abs(entry_x0_m) < 0.5 * channel.spacing_m)) {
        throw ValidationError("entry x0 must lie strictly inside the channel");
    }
    if (!std::isfinite(entry_theta_frac)) {
        throw ValidationError("entry theta_frac must be finite");
    }
    if (output.directory.empty()) {
        throw ValidationError("output directory must not be empty");
    }
    if (oracle.entries <= 0) {
        throw ValidationError("oracle entries > 0 violated");
    }
    if (!(oracle.depth_m > 0.0)) {
        throw ValidationError("oracle depth_m > 0 violated");
    }
    if (!(oracle.step_frac > 0.0)) {
        throw ValidationError("oracle step_frac > 0 violated");
    }
    if (!(oracle.tolerance_rad > 0.0)) {
        throw ValidationError("oracle tolerance_rad > 0 violated");
    }
    if (!(oracle.phase_scale > 0.0) || !std::isfinite(oracle.phase_scale)) {
        throw ValidationError("oracle phase_scale must be positive and finite");
    }
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw_line;
    std::string section;
    int line_number = 0;
    while (std::getline(stream, raw_line)) {
        ++line_number;
        const auto hash = raw_line.find('#');
        if (hash != std::string::npos) {
            raw_line.erase(hash);
        }
        const std::string line = trim(raw_line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError(line_number, "malformed section header \"" + line + "\"");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto equals = line.find('=');
        if (equals == std::string::npos) {
            throw ParseError(line_number, "expected key = value, got \"" + line + "\"");
        }
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty()) {
            throw ParseError(line_number, "missing key before '='");
        }
        if (section.empty()) {
            throw ParseError(line_number, "key \"" + key + "\" appears before any section");
        }
        apply_key(config, section, key, value, line_number);
    }
    config.validate();
    return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (file.bad()) {
        throw IoError("failed reading config file " + path.string());
    }
    return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    std::string out;
    const auto put = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };
    const auto put_num = [&](const std::string& key, double value) {
        put(key, format_double(value));
    };

    out += "[particle]\n";
    put_num("gamma", config.particle.gamma);
    put_num("g_factor", config.particle.g_factor);
    put_num("charge_sign", config.particle.charge_sign);
    put_num("rest_energy_ev", config.particle.rest_energy_ev);

    out += "\n[crystal]\n";
    put_num("v0_ev", config.channel.v0_ev);
    put_num("b_m", config.channel.b_m);
    put_num("spacing_m", config.channel.spacing_m);
    put_num("bend_radius_m", config.channel.bend_radius_m);
    put_num("radiation_length_m", config.channel.radiation_length_m);

    out += "\n[ensemble]\n";
    put("n_points", std::to_string(config.n_points));
    std::string fracs;
    for (std::size_t i = 0; i < config.theta_fracs.size(); ++i) {
        if (i > 0) {
            fracs += ", ";
        }
        fracs += format_double(config.theta_fracs[i]);
    }
    put("theta_fracs", fracs);
    put_num("sigma_theta_frac", config.sigma_theta_frac);
    put_num("sigma_gamma_frac", config.sigma_gamma_frac);
    put("seed", std::to_string(config.seed));
    put_num("depth_max_m", config.depth_max_m);
    put("n_depth_samples", std::to_string(config.n_depth_samples));
    put_num("omega_scale", config.omega_scale);

    out += "\n[entry]\n";
    put_num("x0_m", config.entry_x0_m);
    put_num("theta_frac", config.entry_theta_frac);
    put("spin", config.entry_spin == InitialSpin::perpendicular ? "perpendicular"
                                                                : "parallel");

    out += "\n[output]\n";
    put("directory", config.output.directory.string());
    put("svg", config.output.emit_svg ? "true" : "false");

    out += "\n[oracle]\n";
    put("entries", std::to_string(config.oracle.entries));
    put_num("depth_m", config.oracle.depth_m);
    put_num("step_frac", config.oracle.step_frac);
    put_num("tolerance_rad", config.oracle.tolerance_rad);
    put_num("phase_scale", config.oracle.phase_scale);

    return out;
}

}  // namespace channelspin
