#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "spingrad/constants.hpp"
#include "spingrad/gradient.hpp"

// Classical reference solutions for the transverse-magnetization envelope:
// the diffusion-damped (Torrey / Stejskal-Tanner) exponential and the
// collisionless (ballistic) Gaussian. Both factor the magnetization as
// magnitude × helix phase exp[-iγ(B₀t + (u·x)F(t))].

namespace spingrad {

struct ClassicalDecay {
    double t;                    // s
    double magnitude;            // ∈ (0, 1]
    std::complex<double> phase;  // unit modulus
    double regime_ratio;         // α·T when the caller supplies α, else 0
};

namespace classical_detail {

inline std::complex<double> helix_phase(const WaveformMoments& wf, double gamma,
                                        double t, const std::array<double, 3>& x) {
    const auto& u = wf.waveform().u;
    const double ux = u[0] * x[0] + u[1] * x[1] + u[2] * x[2];
    const double ph = -gamma * (wf.waveform().B0 * t + ux * wf.F(t));
    return {std::cos(ph), std::sin(ph)};
}

} // namespace classical_detail

// Diffusive attenuation exp(-γ²D∫₀ᵗF²) of the helix amplitude.
inline ClassicalDecay torrey_attenuation(const WaveformMoments& wf, double D, double gamma,
                                         double t, const std::array<double, 3>& x = {}) {
    if (!(D > 0.0)) throw std::invalid_argument("D must be > 0");
    ClassicalDecay r{};
    r.t = t;
    r.magnitude = std::exp(-gamma * gamma * D * wf.int_F2(t));
    r.phase = classical_detail::helix_phase(wf, gamma, t, x);
    r.regime_ratio = 0.0;
    return r;
}

// Collisionless attenuation in the conventional quoted form
// exp(-γ²(kT/M)(∫₀ᵗF)²).
inline ClassicalDecay no_collision_attenuation(const WaveformMoments& wf, double T_kelvin,
                                               double mass, double gamma, double t,
                                               const std::array<double, 3>& x = {}) {
    if (!(T_kelvin > 0.0) || !(mass > 0.0))
        throw std::invalid_argument("temperature and mass must be > 0");
    const double kT_over_M = constants::k_B * T_kelvin / mass;
    const double intF = wf.int_F(t);
    ClassicalDecay r{};
    r.t = t;
    r.magnitude = std::exp(-gamma * gamma * kT_over_M * intF * intF);
    r.phase = classical_detail::helix_phase(wf, gamma, t, x);
    r.regime_ratio = 0.0;
    return r;
}

// Exact collisionless ensemble average. A particle streaming with velocity
// component v along u carries the helix-referenced phase φ = γ v ∫₀ᵗF; for
// v drawn from the 1-D Maxwell distribution (variance kT/M) the phase is
// Gaussian with Var φ = γ²(kT/M)(∫F)², and a Gaussian phase averages to
// |⟨e^{iφ}⟩| = e^{-Var φ / 2}. This differs from no_collision_attenuation
// by the factor 1/2 in the exponent; the random-walk oracle reproduces this
// form (see the validation suite).
inline double free_streaming_attenuation(const WaveformMoments& wf, double T_kelvin,
                                         double mass, double gamma, double t) {
    if (!(T_kelvin > 0.0) || !(mass > 0.0))
        throw std::invalid_argument("temperature and mass must be > 0");
    const double kT_over_M = constants::k_B * T_kelvin / mass;
    const double intF = wf.int_F(t);
    return std::exp(-0.5 * gamma * gamma * kT_over_M * intF * intF);
}

// α·T: collisions per waveform duration, the dial between the ballistic and
// diffusive regimes.
inline double regime_ratio(double alpha, double T_duration) {
    if (!(alpha >= 0.0) || !(T_duration >= 0.0))
        throw std::invalid_argument("alpha and duration must be >= 0");
    return alpha * T_duration;
}

} // namespace spingrad
