#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "spingrad/constants.hpp"
#include "spingrad/gas.hpp"
#include "spingrad/gradient.hpp"
#include "spingrad/scattering.hpp"

// First- and second-order Wigner-distortion dynamics: the collision rate α
// and diffusion constant D, the four coupled linear ODEs for the momentum
// distortions h⁽¹⁾ (with the exchange terms switchable), their closed-form
// solution via the exponential-kernel convolution, the second-order
// distortion, and the assembled transverse attenuation.

namespace spingrad {

struct PolarizationState {
    double n_half;               // m⁻³, +z population
    double n_mhalf;              // m⁻³, −z population
    std::complex<double> n_plus; // m⁻³, transverse component

    double n() const { return n_half + n_mhalf; }
    double delta_n() const { return n_half - n_mhalf; }

    // c is the transverse normalization convention constant (see README):
    // the polarization vector ((Δn/n), |c·n₊/n|) must fit in the unit ball.
    void validate(double c = 1.0) const {
        if (!(n_half >= 0.0) || !(n_mhalf >= 0.0))
            throw std::invalid_argument("populations must be >= 0");
        if (!(n() > 0.0)) throw std::invalid_argument("total density must be > 0");
        const double z = delta_n() / n();
        const double tr = std::abs(c * n_plus) / n();
        if (z * z + tr * tr > 1.0 + 1e-12)
            throw std::invalid_argument("polarization exceeds the unit ball");
    }
};

inline PolarizationState transverse_state(double n, double z_polarization = 0.0,
                                          double transverse_fraction = 0.5) {
    PolarizationState s{0.5 * n * (1.0 + z_polarization),
                       0.5 * n * (1.0 - z_polarization),
                       std::complex<double>(n * transverse_fraction, 0.0)};
    s.validate();
    return s;
}

struct RelaxationParams {
    double alpha;  // s⁻¹
    double D;      // m²/s; αD = kT/M by construction
};

// α = (4 β^{(M)} / 3M) n I_U and D = kT/(Mα).
inline RelaxationParams relaxation(const DerivedParams& d, const CollisionIntegrals& ci) {
    if (!(ci.I_U > 0.0)) throw std::invalid_argument("I_U must be > 0");
    const double M = 2.0 * d.reduced_mass;
    RelaxationParams r{};
    r.alpha = (4.0 * d.beta_M / (3.0 * M)) * d.number_density * ci.I_U;
    r.D = d.kT / (M * r.alpha);
    return r;
}

struct FirstOrderSolution {
    std::vector<double> t;                       // s
    std::vector<double> h1_half;                 // (kg·m/s)⁻¹
    std::vector<double> h1_mhalf;                // (kg·m/s)⁻¹
    std::vector<std::complex<double>> h1_plus;   // (kg·m/s)⁻¹
};

struct SolveOptions {
    bool exchange = true;    // include the ε-proportional I_I and I_π terms
    double rel_tol = 1e-10;
    std::size_t max_steps = 50'000'000;
};

namespace kinetic_detail {

// Coefficients of the linear system in the real state (u, w, R, S) =
// (h1_half, h1_mhalf, Re h1_plus, Im h1_plus):
//   u' =  ħβG + cU n₋(w−u) − 2ε(cI−cP)(|n₊|²/n₊pop)S            [n₊pop = n_half]
//   w' = −ħβG − cU n₊pop(w−u) + 2ε(cI−cP)(|n₊|²/n₋)S
//   R' = cU(n₊pop u + n₋ w − nR) + ε(cI−cP)Δn S
//   S' = F/M − cU nS + ε(cI−cP)(n₊pop u − n₋ w − ΔnR)
// with cU = (4β/3M) I_U, cI = (4β/3M) Im I_I, cP = (4β/3ħ) I_π.
// The weighted sum n₊pop·u' + n₋·w' = Δn·ħβ·G holds identically, exchange on
// or off — the population-weighted exchange couplings cancel in pairs.
struct Coeffs {
    double hbar_beta;  // ħβ
    double inv_M;      // 1/M
    double cU, cIeff;  // cIeff = ε(cI − cP), 0 when exchange is off
    double n_half, n_mhalf, n, dn, np2;
    double r_half, r_mhalf;  // |n₊|²/n_half, |n₊|²/n_mhalf (0 when |n₊| = 0)
};

inline Coeffs make_coeffs(const DerivedParams& d, const CollisionIntegrals& ci,
                          const PolarizationState& st, int epsilon, bool exchange) {
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("epsilon must be -1 or +1");
    st.validate();
    const double M = 2.0 * d.reduced_mass;
    Coeffs c{};
    c.hbar_beta = constants::hbar * d.beta_M;
    c.inv_M = 1.0 / M;
    c.cU = (4.0 * d.beta_M / (3.0 * M)) * ci.I_U;
    const double cI = (4.0 * d.beta_M / (3.0 * M)) * ci.I_I_imag;
    const double cP = (4.0 * d.beta_M / (3.0 * constants::hbar)) * ci.I_pi;
    c.cIeff = exchange ? epsilon * (cI - cP) : 0.0;
    c.n_half = st.n_half;
    c.n_mhalf = st.n_mhalf;
    c.n = st.n();
    c.dn = st.delta_n();
    c.np2 = std::norm(st.n_plus);
    c.r_half = (c.np2 > 0.0 && st.n_half > 0.0) ? c.np2 / st.n_half : 0.0;
    c.r_mhalf = (c.np2 > 0.0 && st.n_mhalf > 0.0) ? c.np2 / st.n_mhalf : 0.0;
    return c;
}

} // namespace kinetic_detail

// Numerical integration of the four coupled distortion ODEs with zero
// initial data, forced by the waveform. Output is sampled exactly at the
// requested times; waveform breakpoints are hard step boundaries (G has
// kinks there) and the step size is capped at 0.1/α.
inline FirstOrderSolution solve_h1(const WaveformMoments& wf, const DerivedParams& d,
                                   const CollisionIntegrals& ci, const PolarizationState& st,
                                   int epsilon, const std::vector<double>& times,
                                   const SolveOptions& opt = {}) {
    namespace ode = boost::numeric::odeint;
    using state_t = std::array<double, 4>;

    if (times.empty()) throw std::invalid_argument("need at least one output time");
    for (double t : times)
        if (!(t >= 0.0) || t > wf.total_time() * (1.0 + 1e-12))
            throw std::domain_error("output time outside waveform domain");

    const auto c = kinetic_detail::make_coeffs(d, ci, st, epsilon, opt.exchange);
    const double alpha = c.cU * c.n;
    const double max_step = (alpha > 0.0) ? 0.1 / alpha : wf.total_time();

    auto rhs = [&](const state_t& y, state_t& dydt, double t) {
        const double G = wf.G(t), F = wf.F(t);
        const double u = y[0], w = y[1], R = y[2], S = y[3];
        dydt[0] = c.hbar_beta * G + c.cU * c.n_mhalf * (w - u) - 2.0 * c.cIeff * c.r_half * S;
        dydt[1] = -c.hbar_beta * G - c.cU * c.n_half * (w - u) + 2.0 * c.cIeff * c.r_mhalf * S;
        dydt[2] = c.cU * (c.n_half * u + c.n_mhalf * w - c.n * R) + c.cIeff * c.dn * S;
        dydt[3] = F * c.inv_M - c.cU * c.n * S + c.cIeff * (c.n_half * u - c.n_mhalf * w - c.dn * R);
    };

    // boundaries: output times plus breakpoints, sorted, deduplicated
    std::vector<double> bounds(times);
    for (const auto& p : wf.pieces()) bounds.push_back(p.t0);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    const double t_last = *std::max_element(times.begin(), times.end());

    // absolute tolerance floor from the natural solution scales
    const double Fmax = wf.F_peak() + 1e-300;
    const double scale = std::max({c.hbar_beta * Fmax,
                                   (alpha > 0.0) ? Fmax * c.inv_M / alpha : Fmax * c.inv_M,
                                   1e-280});
    auto stepper = ode::make_controlled(scale * 1e-14, opt.rel_tol,
                                        ode::runge_kutta_dopri5<state_t>());

    FirstOrderSolution out;
    out.t = times;
    out.h1_half.resize(times.size());
    out.h1_mhalf.resize(times.size());
    out.h1_plus.resize(times.size());

    state_t y{0.0, 0.0, 0.0, 0.0};
    double t = 0.0;
    std::size_t steps = 0;
    auto record = [&](double tq) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] == tq) {
                out.h1_half[i] = y[0];
                out.h1_mhalf[i] = y[1];
                out.h1_plus[i] = {y[2], y[3]};
            }
        }
    };
    record(0.0);
    for (double tb : bounds) {
        if (tb <= 0.0) continue;
        if (tb > t_last) break;
        double dt = std::min(max_step, tb - t);
        while (tb - t > 1e-14 * (tb + 1e-300)) {
            dt = std::min({dt, max_step, tb - t});
            if (ode::fail == stepper.try_step(rhs, y, t, dt)) {
                if (++steps > opt.max_steps)
                    throw std::runtime_error("ODE step control stalled at t = " +
                                             std::to_string(t) + ", dt = " + std::to_string(dt));
                continue;
            }
            if (++steps > opt.max_steps)
                throw std::runtime_error("ODE integration exceeded max_steps at t = " +
                                         std::to_string(t));
        }
        t = tb;
        record(tb);
        if (t >= t_last) break;
    }
    return out;
}

// Closed-form solution for h1_plus with exchange neglected (the regime where
// the linear system decouples): with E(t) = e^{-αt}∫₀ᵗ F e^{αt'} dt',
//   Im h1_plus = E(t)/M,   Re h1_plus = α (Δn/n) ħβ E(t).
// E(t) is evaluated exactly per waveform piece — no quadrature.
inline std::pair<std::vector<double>, std::vector<double>> analytic_h1_plus(
    const WaveformMoments& wf, double alpha, const DerivedParams& d,
    const PolarizationState& st, const std::vector<double>& times) {
    st.validate();
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    const double M = 2.0 * d.reduced_mass;
    std::vector<double> re(times.size()), im(times.size());
    const double zfrac = st.delta_n() / st.n();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double E = wf.exp_weighted_F(alpha, times[i]);
        im[i] = E / M;
        re[i] = alpha * zfrac * constants::hbar * d.beta_M * E;
    }
    return {re, im};
}

// Closed forms for the longitudinal pair with exchange neglected, from the
// difference equation q' = 2ħβG − αq and the weighted sum rule
// n₊u + n₋w = Δn ħβ F:
//   u = (Δn ħβ F + n₋ q)/n,  w = (Δn ħβ F − n₊ q)/n,  q = 2ħβ e^{-αt}∫G e^{αt'}.
inline std::pair<std::vector<double>, std::vector<double>> analytic_h1_updown(
    const WaveformMoments& wf, double alpha, const DerivedParams& d,
    const PolarizationState& st, const std::vector<double>& times) {
    st.validate();
    std::vector<double> uh(times.size()), wh(times.size());
    const double hb = constants::hbar * d.beta_M;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double F = wf.F(times[i]);
        const double q = 2.0 * hb * wf.exp_weighted_G(alpha, times[i]);
        uh[i] = (st.delta_n() * hb * F + st.n_mhalf * q) / st.n();
        wh[i] = (st.delta_n() * hb * F - st.n_half * q) / st.n();
    }
    return {uh, wh};
}

// Second-order distortion: h²₊ = −(1/(M²α)) ∫₀ᵗ F², exact via the gradient
// moments. Valid once the first-order response is quasi-static.
inline double h2_plus(const WaveformMoments& wf, double alpha, double mass, double t) {
    if (!(alpha > 0.0) || !(mass > 0.0))
        throw std::invalid_argument("alpha and mass must be > 0");
    return -wf.int_F2(t) / (mass * mass * alpha);
}

struct AttenuationResult {
    double t;                         // s
    std::complex<double> phase;       // exp[-iγ(B₀t + (u·x)F(t))], |phase| = 1
    double attenuation;               // 1 − γ²D∫F², second-order truncation
    bool validity_warning = false;    // true when γ²D∫F² > 0.2
};

// Second-order transverse attenuation, assembled through the second-order
// distortion: 1 + γ² M kT h²₊ = 1 − γ²D∫F². The particle mass cancels
// identically in that combination (kT/M = αD), so a unit reference mass is
// used. The phase follows the gradient helix at position x. Beyond
// exponent ≈ 0.2 the truncation is unreliable and the classical resummed
// exponential should be consulted instead.
inline AttenuationResult transverse_attenuation(const WaveformMoments& wf,
                                                const RelaxationParams& relax, double gamma,
                                                double t, const std::array<double, 3>& x) {
    const double M0 = 1.0;                       // reference mass, cancels below
    const double kT0 = M0 * relax.alpha * relax.D;  // kT for that mass from αD = kT/M
    const double h2 = h2_plus(wf, relax.alpha, M0, t);
    const double exponent = -gamma * gamma * M0 * kT0 * h2;  // = γ²D∫F²
    AttenuationResult r{};
    r.t = t;
    r.attenuation = 1.0 - exponent;
    r.validity_warning = exponent > 0.2;
    const auto& u = wf.waveform().u;
    const double ux = u[0] * x[0] + u[1] * x[1] + u[2] * x[2];
    const double ph = -gamma * (wf.waveform().B0 * t + ux * wf.F(t));
    r.phase = {std::cos(ph), std::sin(ph)};
    return r;
}

} // namespace spingrad
