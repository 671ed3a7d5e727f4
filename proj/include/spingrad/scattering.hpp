#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

#include "spingrad/constants.hpp"
#include "spingrad/quadrature.hpp"

// Short-wavelength hard-sphere scattering: the two-term amplitude (forward
// shadow diffraction + reflection off the sphere), its differential and
// integrated cross sections, and the thermal collision integrals that feed
// the kinetic module. Valid for ka/ħ well above 1; the low-energy branch is
// deliberately not implemented.

namespace spingrad {

struct HardSphereModel {
    double radius;        // a, m
    double reduced_mass;  // μ, kg

    void validate() const {
        if (!(radius > 0.0) || !(reduced_mass > 0.0))
            throw std::invalid_argument("hard-sphere model needs positive radius and mass");
    }
};

namespace scattering {

using cplx = std::complex<double>;

// J1(z)/z with its removable limit; series below 1e-4 per the quadrature
// resolution design.
inline double j1_over(double z) {
    const double az = std::abs(z);
    if (az < 1e-4) {
        const double z2 = z * z;
        return 0.5 - z2 / 16.0 + z2 * z2 / 384.0;
    }
    return boost::math::cyl_bessel_j(1, z) / z;
}

// Reduced amplitude τ(x, θ) with x = ka/ħ:
//   τ = i x (1+cosθ) J1(x sinθ)/(x sinθ) + exp(-2 i x sin(θ/2))
// The physical amplitude is t(k,θ) = (πħ²a/μ)·τ.
inline cplx reduced_amplitude(double x, double theta) {
    if (!(theta >= 0.0) || !(theta <= constants::pi))
        throw std::domain_error("theta must lie in [0, pi]");
    if (!(x > 0.0)) throw std::domain_error("k must be > 0");
    const double c = std::cos(theta);
    const double shadow = x * (1.0 + c) * j1_over(x * std::sin(theta));
    const double phase = -2.0 * x * std::sin(0.5 * theta);
    return cplx(std::cos(phase), shadow + std::sin(phase));
}

inline double x_of(double k, const HardSphereModel& m) {
    return k * m.radius / constants::hbar;
}

// amplitude prefactor (2πħ²/μ)(a/2) = πħ²a/μ, units J·m³
inline double amplitude_prefactor(const HardSphereModel& m) {
    return constants::pi * constants::hbar * constants::hbar * m.radius / m.reduced_mass;
}

inline cplx t_short_wavelength(double k, double theta, const HardSphereModel& m) {
    m.validate();
    return amplitude_prefactor(m) * reduced_amplitude(x_of(k, m), theta);
}

// ----- dimensionless angular integrals (σ in units of πa²) -----
//
// With the flux normalization dσ/dΩ = (2π/ħ)|t|² μk/((2πħ)³ v), v = k/μ,
// all prefactors collapse to dσ_U/dΩ = (a²/4)|τ|².

namespace detail {

inline int panels_for(double x) {
    // τ oscillates with angular period ≳ π/x in θ; half-period panels
    return std::max(8, static_cast<int>(std::ceil(2.0 * x)) + 2);
}

// s_U(x) = σ_U/(πa²) = ½ ∫ (1-cosθ) sinθ |τ|² dθ
inline quadrature::Result s_U(double x) {
    auto f = [x](double th) {
        const cplx t = reduced_amplitude(x, th);
        return 0.5 * (1.0 - std::cos(th)) * std::sin(th) * std::norm(t);
    };
    return quadrature::integrate_panels(f, 0.0, constants::pi, panels_for(x));
}

// σ_tot/(πa²) = ½ ∫ sinθ |τ|² dθ   (dσ_U/dΩ over the sphere: 2π·(1/4)·∫sinθ|τ|²)
inline quadrature::Result s_tot(double x) {
    auto f = [x](double th) {
        const cplx t = reduced_amplitude(x, th);
        return 0.5 * std::sin(th) * std::norm(t);
    };
    return quadrature::integrate_panels(f, 0.0, constants::pi, panels_for(x));
}

// s_I(x) = σ_I/(πa²) = ½ ∫ cosθ sinθ τ(π-θ) τ*(θ) dθ  (pure imaginary)
inline std::pair<quadrature::Result, quadrature::Result> s_I(double x) {
    auto re = [x](double th) {
        const cplx v = reduced_amplitude(x, constants::pi - th) *
                       std::conj(reduced_amplitude(x, th));
        return 0.5 * std::cos(th) * std::sin(th) * v.real();
    };
    auto im = [x](double th) {
        const cplx v = reduced_amplitude(x, constants::pi - th) *
                       std::conj(reduced_amplitude(x, th));
        return 0.5 * std::cos(th) * std::sin(th) * v.imag();
    };
    const int n = panels_for(x);
    return {quadrature::integrate_panels(re, 0.0, constants::pi, n),
            quadrature::integrate_panels(im, 0.0, constants::pi, n)};
}

// transport cross section from the shadow (diffraction) term alone — used
// to verify that the (1-cosθ) weight suppresses the forward peak
inline quadrature::Result s_U_shadow_only(double x) {
    auto f = [x](double th) {
        const double c = std::cos(th);
        const double A = x * (1.0 + c) * j1_over(x * std::sin(th));
        return 0.5 * (1.0 - c) * std::sin(th) * A * A;
    };
    return quadrature::integrate_panels(f, 0.0, constants::pi, panels_for(x));
}

} // namespace detail

struct DifferentialXsecs {
    double dsigma_U;  // m²/sr
    double dsigma_A;  // m²/sr, antisymmetrized (|t(θ) + ε t(π-θ)|² weight)
    cplx dsigma_I;    // m²/sr, interference term
};

inline DifferentialXsecs differential_xsecs(double k, double theta,
                                            const HardSphereModel& m, int epsilon) {
    m.validate();
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("epsilon must be -1 or +1");
    const double x = x_of(k, m);
    const double a2_4 = 0.25 * m.radius * m.radius;
    const cplx t = reduced_amplitude(x, theta);
    const cplx tb = reduced_amplitude(x, constants::pi - theta);
    DifferentialXsecs r{};
    r.dsigma_U = a2_4 * std::norm(t);
    r.dsigma_A = 0.5 * a2_4 * std::norm(t + static_cast<double>(epsilon) * tb);
    r.dsigma_I = a2_4 * tb * std::conj(t);
    return r;
}

// σ_U(k) = ∫dΩ (1-cosθ) dσ_U/dΩ, m²
inline double transport_xsec(double k, const HardSphereModel& m) {
    m.validate();
    const double pia2 = constants::pi * m.radius * m.radius;
    return pia2 * detail::s_U(x_of(k, m)).value;
}

// σ_I(k) = ∫dΩ cosθ dσ_I/dΩ, m² — pure imaginary up to quadrature noise
inline cplx interference_xsec(double k, const HardSphereModel& m) {
    m.validate();
    const double pia2 = constants::pi * m.radius * m.radius;
    const auto [re, im] = detail::s_I(x_of(k, m));
    return pia2 * cplx(re.value, im.value);
}

// ∫dΩ dσ_U/dΩ without the transport weight (total scattered flux), m²
inline double total_xsec(double k, const HardSphereModel& m) {
    m.validate();
    const double pia2 = constants::pi * m.radius * m.radius;
    return pia2 * detail::s_tot(x_of(k, m)).value;
}

// Optical-theorem residual |2 Im t(k,0) - ħ v σ_tot| / |2 Im t(k,0)| with
// v = k/μ. Left side comes straight from the forward amplitude, right side
// from the angular quadrature — independent routes. The short-wavelength
// amplitude satisfies unitarity only to O(ħ/ka), so the residual is finite
// and shrinks with k.
inline double unitarity_residual(double k, const HardSphereModel& m) {
    m.validate();
    const double lhs = 2.0 * t_short_wavelength(k, 0.0, m).imag();
    const double rhs = constants::hbar * (k / m.reduced_mass) * total_xsec(k, m);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

struct CollisionIntegrals {
    double I_U;        // ∫d³k k³ B(k) σ_U(k), (kg·m/s)³·m²
    double I_I_imag;   // imaginary part of ∫d³k k³ B(k) σ_I(k), same units
    double I_pi;       // ∫d³k k² B(k) Re t(k, π), (kg·m/s)²·J·m³
    double I_U_error;  // propagated quadrature error estimates (absolute)
    double I_I_error;
    double I_pi_error;
};

namespace detail {

struct ThermalScales {
    double k_scale;  // sqrt(2 μ kT): k = k_scale·y
    double x_th;     // k_scale·a/ħ
    double pref3;    // (4/√π)(2μkT)^{3/2}, weight for k³ moments
    double pref2;    // (4/√π)(2μkT), weight for k² moments
};

inline ThermalScales thermal_scales(const HardSphereModel& m, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be > 0");
    const double two_mukT = 2.0 * m.reduced_mass * constants::k_B * T;
    ThermalScales s{};
    s.k_scale = std::sqrt(two_mukT);
    s.x_th = s.k_scale * m.radius / constants::hbar;
    s.pref3 = 4.0 / std::sqrt(constants::pi) * two_mukT * std::sqrt(two_mukT);
    s.pref2 = 4.0 / std::sqrt(constants::pi) * two_mukT;
    return s;
}

} // namespace detail

// Maxwell-Boltzmann averages of the cross sections over relative momentum.
// Radial cutoff at k = 8·sqrt(2μkT): the Gaussian tail beyond is < 1e-27
// of the integral. Outer radial quadrature is adaptive; each inner angular
// integral uses the oscillation-aware panels above.
inline CollisionIntegrals thermal_integrals(const HardSphereModel& m, double T) {
    m.validate();
    const auto s = detail::thermal_scales(m, T);
    const double pia2 = constants::pi * m.radius * m.radius;

    auto radial_U = [&](double y) {
        return std::pow(y, 5) * std::exp(-y * y) * detail::s_U(s.x_th * y).value;
    };
    auto radial_I = [&](double y) {
        return std::pow(y, 5) * std::exp(-y * y) * detail::s_I(s.x_th * y).second.value;
    };
    auto radial_pi = [&](double y) {
        return std::pow(y, 4) * std::exp(-y * y) * std::cos(2.0 * s.x_th * y);
    };

    const auto RU = quadrature::integrate(radial_U, 0.0, 8.0, 1e-9, 20);
    const auto RI = quadrature::integrate(radial_I, 0.0, 8.0, 1e-9, 20);
    // cos(2 x_th y) oscillates ~2·x_th·8/π times across the range
    const int npi = std::max(16, static_cast<int>(std::ceil(6.0 * s.x_th)));
    const auto Q = quadrature::integrate_panels(radial_pi, 0.0, 8.0, npi);

    CollisionIntegrals out{};
    out.I_U = pia2 * s.pref3 * RU.value;
    out.I_I_imag = pia2 * s.pref3 * RI.value;
    out.I_pi = amplitude_prefactor(m) * s.pref2 * Q.value;
    out.I_U_error = pia2 * s.pref3 * RU.error;
    out.I_I_error = pia2 * s.pref3 * RI.error;
    out.I_pi_error = amplitude_prefactor(m) * s.pref2 * Q.error;
    return out;
}

// Same radial machinery with the idealized short-wavelength limit
// σ_U ≡ πa² (and no exchange terms). Against this the closed form below
// must agree to the quadrature tolerance — an exact oracle for the path.
inline CollisionIntegrals thermal_integrals_idealized(const HardSphereModel& m, double T) {
    m.validate();
    const auto s = detail::thermal_scales(m, T);
    const double pia2 = constants::pi * m.radius * m.radius;
    auto radial = [](double y) { return std::pow(y, 5) * std::exp(-y * y); };
    const auto R = quadrature::integrate(radial, 0.0, 8.0, 1e-10, 20);
    CollisionIntegrals out{};
    out.I_U = pia2 * s.pref3 * R.value;
    out.I_U_error = pia2 * s.pref3 * R.error;
    return out;
}

// Closed form of the idealized I_U: πa²·(4/√π)·(2μkT)^{3/2}·∫y⁵e^{-y²}dy
// with the full-range Gaussian moment ∫₀^∞ y⁵ e^{-y²} dy = 1.
inline double I_U_hard_sphere_closed(const HardSphereModel& m, double T) {
    m.validate();
    const auto s = detail::thermal_scales(m, T);
    return constants::pi * m.radius * m.radius * s.pref3;
}

} // namespace scattering

using scattering::CollisionIntegrals;

} // namespace spingrad
