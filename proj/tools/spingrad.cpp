// Command-line front end: derived parameters and regime checks, cross-section
// tables, transport coefficients, attenuation curves, the random-walk oracle,
// and the release acceptance battery.
//
// Exit codes: 0 success, 1 validation failure (red acceptance criteria),
// 2 input error (bad flags, unreadable/invalid configuration). Warnings go to
// stderr and never change the exit code.

#include <algorithm>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "spingrad/acceptance.hpp"
#include "spingrad/classical.hpp"
#include "spingrad/constants.hpp"
#include "spingrad/gas.hpp"
#include "spingrad/gradient.hpp"
#include "spingrad/io.hpp"
#include "spingrad/kinetic.hpp"
#include "spingrad/mc.hpp"
#include "spingrad/scattering.hpp"

namespace {

using spingrad::io::ojson;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format;  // "", "json", or "csv"
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void emit(const ojson& doc, const CommonOpts& opts, const std::string& default_format) {
    const std::string fmt = opts.format.empty() ? default_format : opts.format;
    if (fmt == "csv")
        spingrad::io::write_text(spingrad::io::to_kv_csv(doc), opts.out_path);
    else
        spingrad::io::write_text(doc.dump(2) + "\n", opts.out_path);
}

void emit_table(const spingrad::io::Table& table, const CommonOpts& opts,
                const std::string& default_format) {
    const std::string fmt = opts.format.empty() ? default_format : opts.format;
    if (fmt == "json")
        spingrad::io::write_text(spingrad::io::to_json_points(table).dump(2) + "\n",
                                 opts.out_path);
    else
        spingrad::io::write_text(spingrad::io::to_csv(table), opts.out_path);
}

spingrad::io::Config load(const CommonOpts& opts) {
    if (opts.config_path.empty())
        throw std::invalid_argument("--config PATH is required for this command");
    return spingrad::io::load_config(opts.config_path);
}

const spingrad::GradientWaveform& require_waveform(const spingrad::io::Config& cfg) {
    if (!cfg.waveform)
        throw std::invalid_argument("this command requires a \"waveform\" config section");
    return *cfg.waveform;
}

int cmd_params(const CommonOpts& opts) {
    const auto cfg = load(opts);
    double F_peak = 0.0;
    if (cfg.waveform) F_peak = spingrad::WaveformMoments(*cfg.waveform).F_peak();
    const auto d = spingrad::derive(cfg.gas);
    const auto diag = spingrad::diagnostics(cfg.gas, F_peak);

    ojson out;
    out["number_density_per_m3"] = d.number_density;
    out["mean_spacing_m"] = d.mean_spacing;
    out["mean_wavelength_m"] = d.mean_wavelength;
    out["a_over_d"] = diag.a_over_d;
    out["kbar_a_over_hbar"] = diag.ka_over_hbar;
    out["gradient_momentum_ratio"] = diag.gradient_momentum_ratio;
    out["degeneracy_n_lambda3"] = diag.degeneracy;
    ojson checks = ojson::object();
    for (const auto& f : diag.validity_flags) {
        ojson c;
        c["value"] = f.value;
        c["threshold"] = f.threshold;
        c["pass"] = f.pass;
        checks[f.name] = std::move(c);
        if (!f.pass)
            std::cerr << "warning: validity check \"" << f.name << "\" failed (value "
                      << f.value << ", threshold " << f.threshold << ")\n";
    }
    out["checks"] = std::move(checks);
    emit(out, opts, "json");
    return 0;
}

int cmd_xsec(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto d = spingrad::derive(cfg.gas);
    const spingrad::HardSphereModel m{cfg.gas.hard_core_radius, d.reduced_mass};
    const double pia2 = spingrad::constants::pi * m.radius * m.radius;

    spingrad::io::Table table;
    table.columns = {"k_over_hbar_a", "sigma_U_over_pi_a2", "im_sigma_I_over_pi_a2"};
    const auto& g = cfg.xsec;
    for (int i = 0; i < g.n_points; ++i) {
        const double x =
            g.x_min + (g.x_max - g.x_min) * static_cast<double>(i) / (g.n_points - 1);
        const double k = x * spingrad::constants::hbar / m.radius;
        table.rows.push_back({x, spingrad::scattering::transport_xsec(k, m) / pia2,
                              spingrad::scattering::interference_xsec(k, m).imag() / pia2});
    }
    emit_table(table, opts, "csv");
    return 0;
}

int cmd_relax(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto d = spingrad::derive(cfg.gas);
    const spingrad::HardSphereModel m{cfg.gas.hard_core_radius, d.reduced_mass};
    const auto ci = spingrad::scattering::thermal_integrals(m, cfg.gas.temperature);
    const auto relax = spingrad::relaxation(d, ci);
    ojson out;
    out["alpha_per_s"] = relax.alpha;
    out["D_mm2_per_s"] = relax.D * 1e6;
    emit(out, opts, "json");
    return 0;
}

int cmd_decay(const CommonOpts& opts) {
    const auto cfg = load(opts);
    const auto& waveform = require_waveform(cfg);
    const spingrad::WaveformMoments wf(waveform);
    const double T = waveform.total_time();
    double t_max = cfg.decay.t_max > 0.0 ? cfg.decay.t_max : T;
    if (t_max > T * (1.0 + 1e-12))
        throw std::invalid_argument("decay.t_max_s exceeds the waveform duration");

    const auto d = spingrad::derive(cfg.gas);
    const spingrad::HardSphereModel m{cfg.gas.hard_core_radius, d.reduced_mass};
    const auto ci = spingrad::scattering::thermal_integrals(m, cfg.gas.temperature);
    const auto relax = spingrad::relaxation(d, ci);
    const double gamma = cfg.gas.gyromagnetic_ratio;

    spingrad::io::Table table;
    table.columns = {"t", "attenuation_2nd_order", "attenuation_classical",
                     "attenuation_nocollision", "phase_re", "phase_im"};
    bool warned = false;
    for (int i = 0; i < cfg.decay.n_times; ++i) {
        const double t = t_max * static_cast<double>(i) / (cfg.decay.n_times - 1);
        const auto kin = spingrad::transverse_attenuation(wf, relax, gamma, t,
                                                          cfg.decay.position);
        const auto torrey = spingrad::torrey_attenuation(wf, relax.D, gamma, t);
        const auto ballistic = spingrad::no_collision_attenuation(
            wf, cfg.gas.temperature, cfg.gas.particle_mass, gamma, t);
        if (kin.validity_warning && !warned) {
            std::cerr << "warning: second-order truncation exponent gamma^2 D int F^2 "
                         "exceeds 0.2 from t = "
                      << t << " s; prefer the classical exponential column there\n";
            warned = true;
        }
        table.rows.push_back({t, kin.attenuation, torrey.magnitude, ballistic.magnitude,
                              kin.phase.real(), kin.phase.imag()});
    }
    emit_table(table, opts, "csv");
    return 0;
}

int cmd_mc(const CommonOpts& opts) {
    const auto cfg = load(opts);
    auto waveform = require_waveform(cfg);
    if (cfg.mc.t_max > 0.0) waveform = spingrad::truncated(waveform, cfg.mc.t_max);
    const double T = waveform.total_time();

    double rate = cfg.mc.collision_rate;
    if (rate < 0.0) {
        const auto d = spingrad::derive(cfg.gas);
        const spingrad::HardSphereModel m{cfg.gas.hard_core_radius, d.reduced_mass};
        const auto ci = spingrad::scattering::thermal_integrals(m, cfg.gas.temperature);
        rate = spingrad::relaxation(d, ci).alpha;
    }
    double dt = cfg.mc.dt;
    if (dt <= 0.0) {
        double cap = T / 1000.0;
        if (rate > 0.0) cap = std::min(cap, 0.1 / rate);
        dt = spingrad::commensurate_dt(T, cap);
    }

    spingrad::MCConfig mc;
    mc.n_particles = cfg.mc.n_particles;
    mc.dt = dt;
    mc.seed = opts.seed_given ? opts.seed : cfg.mc.seed;
    mc.collision_rate = rate;
    mc.temperature = cfg.gas.temperature;
    mc.mass = cfg.gas.particle_mass;
    mc.gamma = cfg.gas.gyromagnetic_ratio;
    mc.waveform = std::move(waveform);
    const auto res = spingrad::simulate(mc);

    ojson out;
    out["mean_re"] = res.mean_attenuation.real();
    out["mean_im"] = res.mean_attenuation.imag();
    out["std_error"] = res.std_error;
    out["n_particles"] = res.n_particles;
    out["seed"] = res.seed;
    emit(out, opts, "json");
    return 0;
}

int cmd_validate(const CommonOpts& opts, std::vector<int> criteria) {
    if (criteria.empty())
        for (int id = 1; id <= 7; ++id) criteria.push_back(id);
    std::vector<spingrad::acceptance::CriterionResult> results;
    results.reserve(criteria.size());
    for (int id : criteria) results.push_back(spingrad::acceptance::run_criterion(id));

    bool all_pass = true;
    std::string text;
    ojson doc;
    ojson arr = ojson::array();
    for (const auto& res : results) {
        all_pass = all_pass && res.pass;
        text += "criterion " + std::to_string(res.id) + ": " + (res.pass ? "PASS" : "FAIL") +
                " - " + res.name + "\n";
        for (const auto& line : res.lines) text += "    " + line + "\n";
        ojson item;
        item["id"] = res.id;
        item["name"] = res.name;
        item["pass"] = res.pass;
        item["detail"] = res.lines;
        arr.push_back(std::move(item));
    }
    doc["criteria"] = std::move(arr);

    if (opts.format == "json") {
        spingrad::io::write_text(doc.dump(2) + "\n", opts.out_path);
    } else if (opts.format == "csv") {
        std::string csv = "key,value\n";
        for (const auto& res : results)
            csv += "criterion_" + std::to_string(res.id) + "," +
                   (res.pass ? "PASS" : "FAIL") + "\n";
        spingrad::io::write_text(csv, opts.out_path);
    } else {
        spingrad::io::write_text(text, opts.out_path);
    }
    return all_pass ? 0 : 1;
}

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "JSON run configuration file");
    sub->add_option("--out", opts.out_path, "write output to this file instead of stdout");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opts.seed, "override the Monte Carlo seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transverse spin-polarization decay of a dilute spin-1/2 gas in a "
                 "magnetic-field gradient"};
    app.require_subcommand(1);
    CommonOpts opts;
    std::vector<int> criteria;

    CLI::App* sub_params =
        app.add_subcommand("params", "derived gas parameters and regime checks");
    CLI::App* sub_xsec = app.add_subcommand("xsec", "hard-sphere cross-section table");
    CLI::App* sub_relax =
        app.add_subcommand("relax", "collision rate and diffusion coefficient");
    CLI::App* sub_decay = app.add_subcommand("decay", "attenuation and phase curves");
    CLI::App* sub_mc = app.add_subcommand("mc", "random-walk dephasing oracle");
    CLI::App* sub_validate = app.add_subcommand("validate", "run the acceptance battery");
    for (CLI::App* sub : {sub_params, sub_xsec, sub_relax, sub_decay, sub_mc, sub_validate})
        add_common(sub, opts);
    sub_validate->add_option("--criterion", criteria, "run only these criteria (1..7)")
        ->check(CLI::Range(1, 7));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_params->parsed()) return cmd_params(opts);
        if (sub_xsec->parsed()) return cmd_xsec(opts);
        if (sub_relax->parsed()) return cmd_relax(opts);
        if (sub_decay->parsed()) return cmd_decay(opts);
        if (sub_mc->parsed()) return cmd_mc(opts);
        if (sub_validate->parsed()) return cmd_validate(opts, criteria);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable with require_subcommand(1)
}
