#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "spingrad/constants.hpp"
#include "spingrad/gas.hpp"
#include "spingrad/io.hpp"
#include "spingrad/kinetic.hpp"
#include "spingrad/mc.hpp"
#include "spingrad/scattering.hpp"

using namespace spingrad;
using io::ojson;
using Catch::Matchers::ContainsSubstring;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "spingrad_io_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed CLI binary with the given argument string, capturing
// stdout/stderr through temp files.
CliResult run_cli(const std::string& args) {
    static int call = 0;
    const auto out_path = scratch_dir() / ("stdout_" + std::to_string(++call));
    const auto err_path = scratch_dir() / ("stderr_" + std::to_string(call));
    const std::string cmd = std::string(SPINGRAD_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

const std::string kGasOnly = R"({"gas": {"temperature_K": 293.0, "pressure_atm": 1.0}})";

ojson parse_json(const std::string& text) { return ojson::parse(text); }

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("config defaults") {
    const auto cfg = io::parse_config(parse_json(kGasOnly));
    CHECK(cfg.gas.temperature == 293.0);
    CHECK(cfg.gas.pressure == constants::atm);
    CHECK(cfg.gas.particle_mass ==
          Catch::Approx(constants::he3_mass_u * constants::amu).epsilon(1e-15));
    CHECK(cfg.gas.gyromagnetic_ratio == Catch::Approx(constants::he3_gamma).epsilon(1e-15));
    CHECK(cfg.gas.hard_core_radius ==
          Catch::Approx(constants::he3_hard_core_radius).epsilon(1e-15));
    CHECK(cfg.gas.statistics_sign == -1);
    CHECK_FALSE(cfg.waveform.has_value());
    CHECK(cfg.spin_state.z_polarization == 0.0);
    CHECK(cfg.spin_state.transverse_fraction == 0.5);
    CHECK(cfg.xsec.x_min == 5.0);
    CHECK(cfg.xsec.x_max == 40.0);
    CHECK(cfg.xsec.n_points == 141);
    CHECK(cfg.decay.t_max < 0.0);
    CHECK(cfg.decay.n_times == 100);
    CHECK(cfg.decay.position == std::array<double, 3>{0.0, 0.0, 0.0});
    CHECK(cfg.mc.n_particles == 100000);
    CHECK(cfg.mc.dt < 0.0);
    CHECK(cfg.mc.seed == 1);
    CHECK(cfg.mc.collision_rate < 0.0);
    CHECK(cfg.sigma_plus_norm_c == 1.0);
}

TEST_CASE("config units and sections") {
    const auto cfg = io::parse_config(parse_json(R"({
        "gas": {"temperature_K": 400.0, "pressure_atm": 2.0, "particle_mass_u": 4.0,
                "gyromagnetic_ratio_MHz_per_T": 204.0, "hard_core_radius_A": 2.0,
                "statistics_sign": 1},
        "waveform": {"B0_T": 0.5, "u": [0.0, 1.0, 0.0],
                     "breakpoints": [[0.0, 0.01], [1e-3, 0.02]]},
        "spin_state": {"z_polarization": 0.2, "transverse_fraction": 0.4},
        "xsec": {"x_min": 1.0, "x_max": 2.0, "n_points": 11},
        "decay": {"t_max_s": 5e-4, "n_times": 7, "position_m": [0.0, 0.0, 0.1]},
        "mc": {"n_particles": 2000, "dt_s": 1e-5, "seed": 9,
               "collision_rate_per_s": 1e4},
        "sigma_plus_norm_c": 0.8
    })"));
    CHECK(cfg.gas.pressure == Catch::Approx(2.0 * constants::atm).epsilon(1e-15));
    CHECK(cfg.gas.particle_mass == Catch::Approx(4.0 * constants::amu).epsilon(1e-15));
    CHECK(cfg.gas.gyromagnetic_ratio == Catch::Approx(2.04e8).epsilon(1e-15));
    CHECK(cfg.gas.hard_core_radius == Catch::Approx(2e-10).epsilon(1e-15));
    CHECK(cfg.gas.statistics_sign == 1);
    REQUIRE(cfg.waveform.has_value());
    CHECK(cfg.waveform->B0 == 0.5);
    CHECK(cfg.waveform->u == std::array<double, 3>{0.0, 1.0, 0.0});
    REQUIRE(cfg.waveform->breakpoints.size() == 2);
    CHECK(cfg.waveform->breakpoints[1].second == 0.02);
    CHECK(cfg.decay.t_max == 5e-4);
    CHECK(cfg.decay.position[2] == 0.1);
    CHECK(cfg.mc.n_particles == 2000);
    CHECK(cfg.mc.seed == 9);
    CHECK(cfg.mc.collision_rate == 1e4);
    CHECK(cfg.sigma_plus_norm_c == 0.8);
}

TEST_CASE("config rejection") {
    auto parse = [](const std::string& text) { return io::parse_config(parse_json(text)); };
    CHECK_THROWS_WITH(parse(R"({"gas": {"temperature_K": 293, "pressure_atm": 1}, "bogus": 1})"),
                      ContainsSubstring("unknown config key"));
    CHECK_THROWS_WITH(parse(R"({"gas": {"temperature_K": 293, "pressure_atm": 1, "exotic": 2}})"),
                      ContainsSubstring("gas.exotic"));
    CHECK_THROWS_WITH(parse(R"({})"), ContainsSubstring("\"gas\""));
    CHECK_THROWS_WITH(parse(R"({"gas": {"pressure_atm": 1}})"),
                      ContainsSubstring("gas.temperature_K"));
    CHECK_THROWS_WITH(parse(R"({"gas": {"temperature_K": "hot", "pressure_atm": 1}})"),
                      ContainsSubstring("must be a number"));
    CHECK_THROWS_AS(
        parse(R"({"gas": {"temperature_K": 293, "pressure_atm": 1, "statistics_sign": 0}})"),
        std::invalid_argument);

    const std::string g = R"("gas": {"temperature_K": 293, "pressure_atm": 1})";
    CHECK_THROWS_WITH(parse("{" + g + R"(, "waveform": {"u": [0,0,1]}})"),
                      ContainsSubstring("waveform.breakpoints"));
    CHECK_THROWS_WITH(parse("{" + g + R"(, "waveform": {"breakpoints": [[0, 1, 2]]}})"),
                      ContainsSubstring("number pair"));
    CHECK_THROWS_WITH(
        parse("{" + g + R"(, "waveform": {"u": [1,1,0], "breakpoints": [[0,1],[1,1]]}})"),
        ContainsSubstring("unit vector"));
    CHECK_THROWS_WITH(parse("{" + g + R"(, "waveform": {"breakpoints": [[0,1],[0,2]]}})"),
                      ContainsSubstring("strictly increasing"));

    CHECK_THROWS_AS(parse("{" + g + R"(, "xsec": {"n_points": 1}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "xsec": {"x_min": -1}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "decay": {"n_times": 1}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "decay": {"t_max_s": 0}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "mc": {"seed": -1}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "mc": {"dt_s": 0}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "mc": {"n_particles": 0}})"), std::invalid_argument);
    CHECK_THROWS_AS(parse("{" + g + R"(, "sigma_plus_norm_c": 0})"), std::invalid_argument);
    CHECK_THROWS_AS(io::load_config((scratch_dir() / "missing.json").string()),
                    std::invalid_argument);
}

TEST_CASE("table serialization") {
    io::Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.5}, {2.0, 0.25}};
    CHECK(io::to_csv(t) == "a,b\n1,0.5\n2,0.25\n");
    const auto j = io::to_json_points(t);
    REQUIRE(j.contains("points"));
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][1]["a"] == 2.0);
    CHECK(j["points"][1]["b"] == 0.25);

    ojson nested;
    nested["x"] = 1.5;
    nested["inner"]["y"] = 2.5;
    nested["flag"] = true;
    const auto kv = io::to_kv_csv(nested);
    CHECK_THAT(kv, ContainsSubstring("key,value\n"));
    CHECK_THAT(kv, ContainsSubstring("x,1.5\n"));
    CHECK_THAT(kv, ContainsSubstring("inner.y,2.5\n"));
    CHECK_THAT(kv, ContainsSubstring("flag,true\n"));

    // 17 significant digits survive a parse round trip.
    const double v = 0.1234567890123456789;
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("cli xsec table matches the library") {
    const auto cfg_path = write_file("xsec.json", R"({
        "gas": {"temperature_K": 293.0, "pressure_atm": 1.0},
        "xsec": {"x_min": 5.0, "x_max": 8.0, "n_points": 4}
    })");
    const auto r = run_cli("xsec --config " + cfg_path);
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "k_over_hbar_a,sigma_U_over_pi_a2,im_sigma_I_over_pi_a2");

    const auto gas = io::parse_config(parse_json(kGasOnly)).gas;
    const auto d = derive(gas);
    const HardSphereModel m{gas.hard_core_radius, d.reduced_mass};
    const double pia2 = constants::pi * m.radius * m.radius;
    for (int i = 0; i < 4; ++i) {
        std::istringstream is(lines[1 + i]);
        std::string x_s, su_s, si_s;
        std::getline(is, x_s, ',');
        std::getline(is, su_s, ',');
        std::getline(is, si_s, ',');
        const double x = 5.0 + 3.0 * i / 3.0;
        CHECK(std::stod(x_s) == Catch::Approx(x).epsilon(1e-15));
        const double k = x * constants::hbar / m.radius;
        CHECK(std::stod(su_s) ==
              Catch::Approx(scattering::transport_xsec(k, m) / pia2).epsilon(1e-12));
        CHECK(std::stod(si_s) ==
              Catch::Approx(scattering::interference_xsec(k, m).imag() / pia2).epsilon(1e-12));
    }

    // JSON format wraps the same rows in a "points" array.
    const auto rj = run_cli("xsec --config " + cfg_path + " --format json");
    REQUIRE(rj.exit_code == 0);
    const auto j = parse_json(rj.out);
    REQUIRE(j.contains("points"));
    REQUIRE(j["points"].size() == 4);
    CHECK(j["points"][0]["k_over_hbar_a"] == 5.0);
}

TEST_CASE("cli relax output") {
    const auto cfg_path = write_file("relax.json", kGasOnly);
    const auto r = run_cli("relax --config " + cfg_path);
    REQUIRE(r.exit_code == 0);
    const auto j = parse_json(r.out);
    REQUIRE(j.size() == 2);
    REQUIRE(j.contains("alpha_per_s"));
    REQUIRE(j.contains("D_mm2_per_s"));

    // Reproduce what the command should have computed from the same config
    // (the file's 1 atm differs from the reference-condition pressure).
    const auto gas = io::parse_config(parse_json(kGasOnly)).gas;
    const auto d = derive(gas);
    const HardSphereModel m{gas.hard_core_radius, d.reduced_mass};
    const auto relax = relaxation(d, scattering::thermal_integrals(m, gas.temperature));
    CHECK(j["alpha_per_s"].get<double>() == Catch::Approx(relax.alpha).epsilon(1e-12));
    CHECK(j["D_mm2_per_s"].get<double>() == Catch::Approx(relax.D * 1e6).epsilon(1e-12));

    // csv format flattens to key,value rows.
    const auto rcsv = run_cli("relax --config " + cfg_path + " --format csv");
    REQUIRE(rcsv.exit_code == 0);
    CHECK_THAT(rcsv.out, ContainsSubstring("key,value\nalpha_per_s,"));
}

TEST_CASE("cli decay table and truncation warning") {
    const std::string quiet = R"({
        "gas": {"temperature_K": 293.0, "pressure_atm": 1.0},
        "waveform": {"breakpoints": [[0.0, 1e-3], [2.9e-4, 1e-3]]},
        "decay": {"n_times": 5}
    })";
    const auto quiet_path = write_file("decay_quiet.json", quiet);
    const auto r = run_cli("decay --config " + quiet_path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.empty());
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] ==
          "t,attenuation_2nd_order,attenuation_classical,attenuation_nocollision,"
          "phase_re,phase_im");
    CHECK_THAT(lines[1], ContainsSubstring("0,1,1,1,"));  // t = 0: no decay yet

    // A strong gradient drives the truncation exponent past its validity
    // threshold; the command warns on stderr but still exits 0.
    const std::string loud = R"({
        "gas": {"temperature_K": 293.0, "pressure_atm": 1.0},
        "waveform": {"breakpoints": [[0.0, 0.31], [2.9e-4, 0.31]]},
        "decay": {"n_times": 5}
    })";
    const auto loud_path = write_file("decay_loud.json", loud);
    const auto rl = run_cli("decay --config " + loud_path);
    CHECK(rl.exit_code == 0);
    CHECK_THAT(rl.err, ContainsSubstring("warning"));
    CHECK_THAT(rl.err, ContainsSubstring("truncation exponent"));
}

TEST_CASE("cli mc determinism and seed override") {
    const std::string cfg = R"({
        "gas": {"temperature_K": 293.0, "pressure_atm": 1.0},
        "waveform": {"breakpoints": [[0.0, 2e-4], [1e-3, 2e-4]]},
        "mc": {"n_particles": 2000, "dt_s": 1e-5, "seed": 5,
               "collision_rate_per_s": 1e4}
    })";
    const auto cfg_path = write_file("mc.json", cfg);
    const auto r1 = run_cli("mc --config " + cfg_path);
    REQUIRE(r1.exit_code == 0);
    const auto j = parse_json(r1.out);
    REQUIRE(j.size() == 5);
    REQUIRE(j.contains("mean_re"));
    REQUIRE(j.contains("mean_im"));
    REQUIRE(j.contains("std_error"));
    CHECK(j["n_particles"] == 2000);
    CHECK(j["seed"] == 5);

    // Same configuration in-process gives the same numbers.
    const auto cond = he3_conditions();
    MCConfig mc;
    mc.n_particles = 2000;
    mc.dt = 1e-5;
    mc.seed = 5;
    mc.collision_rate = 1e4;
    mc.temperature = cond.temperature;
    mc.mass = cond.particle_mass;
    mc.gamma = cond.gyromagnetic_ratio;
    mc.waveform = constant_gradient(2e-4, 1e-3);
    const auto res = simulate(mc);
    CHECK(j["mean_re"].get<double>() ==
          Catch::Approx(res.mean_attenuation.real()).epsilon(1e-12));
    CHECK(j["std_error"].get<double>() == Catch::Approx(res.std_error).epsilon(1e-12));

    const auto r2 = run_cli("mc --config " + cfg_path);
    CHECK(r2.out == r1.out);  // byte-identical rerun

    const auto r3 = run_cli("mc --config " + cfg_path + " --seed 99");
    REQUIRE(r3.exit_code == 0);
    const auto j3 = parse_json(r3.out);
    CHECK(j3["seed"] == 99);
    CHECK(j3["mean_re"].get<double>() != j["mean_re"].get<double>());
}

TEST_CASE("cli validate subset") {
    const auto r = run_cli("validate --criterion 7");
    CHECK(r.exit_code == 0);
    CHECK_THAT(r.out, ContainsSubstring("criterion 7: PASS"));
}

TEST_CASE("cli error paths exit 2") {
    CHECK(run_cli("params").exit_code == 2);  // --config missing
    CHECK(run_cli("params --config " + (scratch_dir() / "nope.json").string()).exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);

    const auto bad_key = write_file("bad_key.json",
                                    R"({"gas": {"temperature_K": 293, "pressure_atm": 1}, "zz": 1})");
    const auto r = run_cli("params --config " + bad_key);
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err, ContainsSubstring("unknown config key"));

    const auto bad_json = write_file("bad_json.json", R"({"gas": )");
    CHECK(run_cli("params --config " + bad_json).exit_code == 2);

    // decay needs a waveform section.
    const auto no_wf = write_file("no_wf.json", kGasOnly);
    const auto rd = run_cli("decay --config " + no_wf);
    CHECK(rd.exit_code == 2);
    CHECK_THAT(rd.err, ContainsSubstring("waveform"));

    // run-time validation failures inside the library also map to 2.
    const auto tiny = write_file("tiny_mc.json", R"({
        "gas": {"temperature_K": 293.0, "pressure_atm": 1.0},
        "waveform": {"breakpoints": [[0.0, 1e-4], [1e-3, 1e-4]]},
        "mc": {"n_particles": 10, "dt_s": 1e-5, "collision_rate_per_s": 1e4}
    })");
    CHECK(run_cli("mc --config " + tiny).exit_code == 2);
}

TEST_CASE("cli out file") {
    const auto cfg_path = write_file("outfile.json", kGasOnly);
    const auto target = scratch_dir() / "params_out.json";
    std::error_code ec;
    fs::remove(target, ec);
    const auto r = run_cli("params --config " + cfg_path + " --out " + target.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(target));
    const auto j = parse_json(slurp(target));
    CHECK(j.contains("checks"));
}
