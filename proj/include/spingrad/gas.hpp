#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spingrad/constants.hpp"

// Gas conditions, derived kinematic scales, and the dimensionless validity
// diagnostics of the perturbative short-wavelength regime.

namespace spingrad {

struct GasConditions {
    double temperature;         // K
    double pressure;            // Pa
    double particle_mass;       // kg
    double gyromagnetic_ratio;  // rad/s/T (angular convention)
    double hard_core_radius;    // m
    int statistics_sign;        // ε ∈ {-1, +1}

    void validate() const {
        if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
        if (!(pressure > 0.0)) throw std::invalid_argument("pressure must be > 0");
        if (!(particle_mass > 0.0)) throw std::invalid_argument("particle_mass must be > 0");
        if (!(hard_core_radius > 0.0)) throw std::invalid_argument("hard_core_radius must be > 0");
        if (statistics_sign != 1 && statistics_sign != -1)
            throw std::invalid_argument("statistics_sign must be -1 or +1");
    }
};

inline GasConditions he3_conditions(double temperature_K = 293.0, double pressure_atm = 7.0) {
    return GasConditions{temperature_K, pressure_atm * constants::atm,
                         constants::he3_mass_u * constants::amu, constants::he3_gamma,
                         constants::he3_hard_core_radius, -1};
}

struct DerivedParams {
    double number_density;          // n = P/(kT), 1/m^3
    double mean_spacing;            // d = n^(-1/3), m
    double beta_M;                  // 1/(2 M kT), (kg·m/s)^-2
    double mean_momentum;           // p̄ = sqrt(8 M kT / π), kg·m/s
    double mean_relative_momentum;  // k̄ = sqrt(8 μ kT / π), kg·m/s
    double mean_wavelength;         // λ̄ = ħ/p̄, m
    double reduced_mass;            // μ = M/2, kg
    double degeneracy;              // n λ̄^3
    double kT;                      // J
};

// Ideal-gas closure: the only consistent equation of state at these
// conditions (dilute, non-degenerate).
inline DerivedParams derive(const GasConditions& c) {
    c.validate();
    DerivedParams d{};
    d.kT = constants::k_B * c.temperature;
    d.number_density = c.pressure / d.kT;
    d.mean_spacing = std::pow(d.number_density, -1.0 / 3.0);
    d.beta_M = 1.0 / (2.0 * c.particle_mass * d.kT);
    d.mean_momentum = std::sqrt(8.0 * c.particle_mass * d.kT / constants::pi);
    d.reduced_mass = 0.5 * c.particle_mass;
    d.mean_relative_momentum = std::sqrt(8.0 * d.reduced_mass * d.kT / constants::pi);
    d.mean_wavelength = constants::hbar / d.mean_momentum;
    d.degeneracy = d.number_density * std::pow(d.mean_wavelength, 3);
    return d;
}

// Maxwell-Boltzmann momentum-space density (β/π)^{3/2} exp(-β p²),
// normalized so ∫ d³p B(p) = 1.
inline double maxwell_boltzmann(double p, double mass, double temperature) {
    if (!(p >= 0.0)) throw std::invalid_argument("momentum must be >= 0");
    if (!(mass > 0.0) || !(temperature > 0.0))
        throw std::invalid_argument("mass and temperature must be > 0");
    const double beta = 1.0 / (2.0 * mass * constants::k_B * temperature);
    return std::pow(beta / constants::pi, 1.5) * std::exp(-beta * p * p);
}

struct ValidityFlag {
    std::string name;
    double value;
    double threshold;  // flag fails when value exceeds (or falls below) it
    bool pass;
};

struct DiagnosticsReport {
    double a_over_d;
    double gradient_momentum_ratio;  // γ ħ F_peak / p̄
    double ka_over_hbar;             // k̄ a / ħ
    double degeneracy;               // n λ̄³
    std::vector<ValidityFlag> validity_flags;

    bool all_pass() const {
        for (const auto& f : validity_flags)
            if (!f.pass) return false;
        return true;
    }
};

// Dimensionless regime checks: diluteness, gradient-momentum smallness,
// short-wavelength scattering, non-degeneracy. Failing flags are reported,
// never thrown.
inline DiagnosticsReport diagnostics(const GasConditions& c, double F_peak) {
    if (!(F_peak >= 0.0)) throw std::invalid_argument("F_peak must be >= 0");
    const DerivedParams d = derive(c);
    DiagnosticsReport r{};
    r.a_over_d = c.hard_core_radius / d.mean_spacing;
    r.gradient_momentum_ratio =
        c.gyromagnetic_ratio * constants::hbar * F_peak / d.mean_momentum;
    r.ka_over_hbar = d.mean_relative_momentum * c.hard_core_radius / constants::hbar;
    r.degeneracy = d.degeneracy;
    r.validity_flags = {
        {"dilute_a_over_d", r.a_over_d, 0.3, r.a_over_d <= 0.3},
        {"gradient_momentum_small", r.gradient_momentum_ratio, 1e-3,
         r.gradient_momentum_ratio <= 1e-3},
        {"short_wavelength_ka", r.ka_over_hbar, 5.0, r.ka_over_hbar >= 5.0},
        {"non_degenerate", r.degeneracy, 1e-2, r.degeneracy <= 1e-2},
    };
    return r;
}

} // namespace spingrad
