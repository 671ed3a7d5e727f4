#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "spingrad/constants.hpp"
#include "spingrad/gas.hpp"
#include "spingrad/gradient.hpp"

// JSON run configuration and output serialization for the CLI. Parsing is
// strict: unknown keys anywhere in the document are rejected, so typos fail
// loudly instead of silently falling back to defaults.

namespace spingrad::io {

using ojson = nlohmann::ordered_json;

struct SpinStateSection {
    double z_polarization = 0.0;      // Δn/n
    double transverse_fraction = 0.5; // |n₊|/n
};

struct XsecSection {
    double x_min = 5.0;  // k a/ħ grid, dimensionless
    double x_max = 40.0;
    int n_points = 141;
};

struct DecaySection {
    double t_max = -1.0;  // s; < 0 means "waveform duration"
    int n_times = 100;
    std::array<double, 3> position{0.0, 0.0, 0.0};  // m
};

struct MCSection {
    std::size_t n_particles = 100000;
    double t_max = -1.0;          // s; < 0 means "waveform duration"
    double dt = -1.0;             // s; < 0 means "auto"
    std::uint64_t seed = 1;
    double collision_rate = -1.0; // 1/s; < 0 means "thermal-average rate of the gas"
};

struct Config {
    GasConditions gas{};
    std::optional<GradientWaveform> waveform;
    SpinStateSection spin_state;
    XsecSection xsec;
    DecaySection decay;
    MCSection mc;
    double sigma_plus_norm_c = 1.0;
};

namespace detail {

inline void reject_unknown_keys(const ojson& j, const std::string& where,
                                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw std::invalid_argument("config section \"" + where + "\" must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("unknown config key \"" + where + "." + item.key() +
                                        "\"");
    }
}

inline double get_number(const ojson& j, const std::string& where, const char* key,
                         std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw std::invalid_argument("missing config key \"" + where + "." + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_number())
        throw std::invalid_argument("config key \"" + where + "." + key + "\" must be a number");
    return v.get<double>();
}

inline std::int64_t get_integer(const ojson& j, const std::string& where, const char* key,
                                std::optional<std::int64_t> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw std::invalid_argument("missing config key \"" + where + "." + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        throw std::invalid_argument("config key \"" + where + "." + key +
                                    "\" must be an integer");
    return v.get<std::int64_t>();
}

inline std::array<double, 3> get_vec3(const ojson& j, const std::string& where, const char* key,
                                      std::optional<std::array<double, 3>> fallback) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw std::invalid_argument("missing config key \"" + where + "." + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
        throw std::invalid_argument("config key \"" + where + "." + key +
                                    "\" must be an array of three numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

inline GasConditions parse_gas(const ojson& j) {
    reject_unknown_keys(j, "gas",
                        {"temperature_K", "pressure_atm", "particle_mass_u",
                         "gyromagnetic_ratio_MHz_per_T", "hard_core_radius_A",
                         "statistics_sign"});
    GasConditions c{};
    c.temperature = get_number(j, "gas", "temperature_K");
    c.pressure = get_number(j, "gas", "pressure_atm") * constants::atm;
    c.particle_mass = get_number(j, "gas", "particle_mass_u", constants::he3_mass_u) *
                      constants::amu;
    c.gyromagnetic_ratio =
        get_number(j, "gas", "gyromagnetic_ratio_MHz_per_T",
                   constants::he3_gamma / 1e6) *
        1e6;
    c.hard_core_radius = get_number(j, "gas", "hard_core_radius_A",
                                    constants::he3_hard_core_radius / constants::angstrom) *
                         constants::angstrom;
    c.statistics_sign = static_cast<int>(get_integer(j, "gas", "statistics_sign", -1));
    c.validate();
    return c;
}

inline GradientWaveform parse_waveform(const ojson& j) {
    reject_unknown_keys(j, "waveform", {"B0_T", "u", "breakpoints"});
    GradientWaveform w;
    w.B0 = get_number(j, "waveform", "B0_T", 0.0);
    w.u = get_vec3(j, "waveform", "u", std::array<double, 3>{0.0, 0.0, 1.0});
    if (!j.contains("breakpoints"))
        throw std::invalid_argument("missing config key \"waveform.breakpoints\"");
    const auto& bp = j.at("breakpoints");
    if (!bp.is_array())
        throw std::invalid_argument("\"waveform.breakpoints\" must be an array of [t_s, G_T_per_m]");
    for (const auto& pair : bp) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw std::invalid_argument(
                "each waveform breakpoint must be a [t_s, G_T_per_m] number pair");
        w.breakpoints.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    w.validate();
    return w;
}

} // namespace detail

inline Config parse_config(const ojson& j) {
    detail::reject_unknown_keys(
        j, "config", {"gas", "waveform", "spin_state", "xsec", "decay", "mc",
                      "sigma_plus_norm_c"});
    if (!j.contains("gas"))
        throw std::invalid_argument("missing required config section \"gas\"");
    Config cfg{};
    cfg.gas = detail::parse_gas(j.at("gas"));
    if (j.contains("waveform")) cfg.waveform = detail::parse_waveform(j.at("waveform"));
    if (j.contains("spin_state")) {
        const auto& s = j.at("spin_state");
        detail::reject_unknown_keys(s, "spin_state", {"z_polarization", "transverse_fraction"});
        cfg.spin_state.z_polarization = detail::get_number(s, "spin_state", "z_polarization", 0.0);
        cfg.spin_state.transverse_fraction =
            detail::get_number(s, "spin_state", "transverse_fraction", 0.5);
    }
    if (j.contains("xsec")) {
        const auto& s = j.at("xsec");
        detail::reject_unknown_keys(s, "xsec", {"x_min", "x_max", "n_points"});
        cfg.xsec.x_min = detail::get_number(s, "xsec", "x_min", 5.0);
        cfg.xsec.x_max = detail::get_number(s, "xsec", "x_max", 40.0);
        cfg.xsec.n_points = static_cast<int>(detail::get_integer(s, "xsec", "n_points", 141));
        if (!(cfg.xsec.x_min > 0.0) || !(cfg.xsec.x_max >= cfg.xsec.x_min))
            throw std::invalid_argument("xsec grid requires 0 < x_min <= x_max");
        if (cfg.xsec.n_points < 2)
            throw std::invalid_argument("xsec.n_points must be >= 2");
    }
    if (j.contains("decay")) {
        const auto& s = j.at("decay");
        detail::reject_unknown_keys(s, "decay", {"t_max_s", "n_times", "position_m"});
        cfg.decay.t_max = detail::get_number(s, "decay", "t_max_s", -1.0);
        cfg.decay.n_times = static_cast<int>(detail::get_integer(s, "decay", "n_times", 100));
        cfg.decay.position = detail::get_vec3(s, "decay", "position_m",
                                              std::array<double, 3>{0.0, 0.0, 0.0});
        if (cfg.decay.n_times < 2) throw std::invalid_argument("decay.n_times must be >= 2");
        if (s.contains("t_max_s") && !(cfg.decay.t_max > 0.0))
            throw std::invalid_argument("decay.t_max_s must be > 0");
    }
    if (j.contains("mc")) {
        const auto& s = j.at("mc");
        detail::reject_unknown_keys(
            s, "mc", {"n_particles", "t_max_s", "dt_s", "seed", "collision_rate_per_s"});
        const std::int64_t n =
            detail::get_integer(s, "mc", "n_particles",
                                static_cast<std::int64_t>(cfg.mc.n_particles));
        if (n < 1) throw std::invalid_argument("mc.n_particles must be positive");
        cfg.mc.n_particles = static_cast<std::size_t>(n);
        cfg.mc.t_max = detail::get_number(s, "mc", "t_max_s", -1.0);
        if (s.contains("t_max_s") && !(cfg.mc.t_max > 0.0))
            throw std::invalid_argument("mc.t_max_s must be > 0");
        cfg.mc.dt = detail::get_number(s, "mc", "dt_s", -1.0);
        if (s.contains("dt_s") && !(cfg.mc.dt > 0.0))
            throw std::invalid_argument("mc.dt_s must be > 0");
        const std::int64_t seed = detail::get_integer(s, "mc", "seed", 1);
        if (seed < 0) throw std::invalid_argument("mc.seed must be >= 0");
        cfg.mc.seed = static_cast<std::uint64_t>(seed);
        cfg.mc.collision_rate = detail::get_number(s, "mc", "collision_rate_per_s", -1.0);
        if (s.contains("collision_rate_per_s") && !(cfg.mc.collision_rate >= 0.0))
            throw std::invalid_argument("mc.collision_rate_per_s must be >= 0");
    }
    cfg.sigma_plus_norm_c = detail::get_number(j, "config", "sigma_plus_norm_c", 1.0);
    if (!(cfg.sigma_plus_norm_c > 0.0))
        throw std::invalid_argument("sigma_plus_norm_c must be > 0");
    return cfg;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    ojson j;
    try {
        j = ojson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(j);
}

// ----- output serialization -----

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Column-oriented numeric table; serializes to CSV with a pinned header or
// to a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << "\n";
    }
    return os.str();
}

inline ojson to_json_points(const Table& t) {
    ojson points = ojson::array();
    for (const auto& row : t.rows) {
        ojson obj = ojson::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
        points.push_back(std::move(obj));
    }
    ojson out = ojson::object();
    out["points"] = std::move(points);
    return out;
}

// Flatten a JSON object (possibly nested) into key,value CSV rows with
// dotted paths, for commands whose natural output is a JSON object.
inline void flatten_csv(const ojson& j, const std::string& prefix, std::ostringstream& os) {
    for (const auto& item : j.items()) {
        const std::string path = prefix.empty() ? item.key() : prefix + "." + item.key();
        const auto& v = item.value();
        if (v.is_object()) {
            flatten_csv(v, path, os);
        } else if (v.is_number_float()) {
            os << path << "," << format_double(v.get<double>()) << "\n";
        } else {
            os << path << "," << v.dump() << "\n";
        }
    }
}

inline std::string to_kv_csv(const ojson& j) {
    std::ostringstream os;
    os << "key,value\n";
    flatten_csv(j, "", os);
    return os.str();
}

inline void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

} // namespace spingrad::io
