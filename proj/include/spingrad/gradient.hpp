#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

// Gradient-waveform algebra. G(t) is piecewise linear between user
// breakpoints; F(t) = ∫G, ∫F and ∫F² are then piecewise polynomials of
// degree ≤ 5 and are evaluated in closed form — no quadrature, no tolerance.

namespace spingrad {

struct GradientWaveform {
    double B0 = 0.0;                         // T, uniform part of the field
    std::array<double, 3> u{0.0, 0.0, 1.0};  // gradient direction, |u| = 1
    // (time s, G T/m); times strictly increasing, first time = 0
    std::vector<std::pair<double, double>> breakpoints;

    double total_time() const { return breakpoints.back().first; }

    void validate() const {
        if (breakpoints.size() < 2)
            throw std::invalid_argument("waveform needs at least two breakpoints");
        if (breakpoints.front().first != 0.0)
            throw std::invalid_argument("first breakpoint must be at t = 0");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i].first > breakpoints[i - 1].first))
                throw std::invalid_argument("breakpoint times must be strictly increasing");
        const double norm2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        if (std::abs(norm2 - 1.0) > 2e-12)
            throw std::invalid_argument("direction u must be a unit vector");
        for (const auto& [t, G] : breakpoints)
            if (!std::isfinite(t) || !std::isfinite(G))
                throw std::invalid_argument("breakpoints must be finite");
    }
};

inline GradientWaveform constant_gradient(double G, double duration, double B0 = 0.0) {
    GradientWaveform w;
    w.B0 = B0;
    w.breakpoints = {{0.0, G}, {duration, G}};
    return w;
}

namespace detail {

// Per-piece state of the exact prefix integrals at the piece's left edge.
struct Piece {
    double t0, dt;      // piece start and length
    double G0, slope;   // G(t0+τ) = G0 + slope·τ
    double F0;          // F at t0
    double intF0;       // ∫₀^{t0} F
    double intF20;      // ∫₀^{t0} F²
};

inline std::vector<Piece> build_pieces(const GradientWaveform& w) {
    w.validate();
    std::vector<Piece> pieces;
    pieces.reserve(w.breakpoints.size() - 1);
    double F = 0.0, intF = 0.0, intF2 = 0.0;
    for (std::size_t i = 0; i + 1 < w.breakpoints.size(); ++i) {
        const auto [t0, G0] = w.breakpoints[i];
        const auto [t1, G1] = w.breakpoints[i + 1];
        const double dt = t1 - t0;
        const double m = (G1 - G0) / dt;
        pieces.push_back({t0, dt, G0, m, F, intF, intF2});
        // advance the prefix integrals across the full piece
        const double T = dt;
        F += G0 * T + 0.5 * m * T * T;
        intF += pieces.back().F0 * T + 0.5 * G0 * T * T + m * T * T * T / 6.0;
        const double Fi = pieces.back().F0;
        intF2 += Fi * Fi * T + Fi * G0 * T * T + (G0 * G0 + m * Fi) * T * T * T / 3.0 +
                 0.25 * G0 * m * T * T * T * T + m * m * T * T * T * T * T / 20.0;
    }
    return pieces;
}

inline const Piece& piece_at(const std::vector<Piece>& pieces, double t, double t_end) {
    if (!(t >= 0.0) || t > t_end * (1.0 + 1e-12) + 1e-300)
        throw std::domain_error("time outside waveform domain");
    // linear scan is fine: waveforms have a handful of pieces
    for (std::size_t i = pieces.size(); i-- > 0;)
        if (t >= pieces[i].t0) return pieces[i];
    return pieces.front();
}

} // namespace detail

// Restriction of a waveform to [0, t_cut]; the final breakpoint samples G at
// t_cut by linear interpolation.
inline GradientWaveform truncated(const GradientWaveform& w, double t_cut) {
    w.validate();
    const double T = w.total_time();
    if (!(t_cut > 0.0) || t_cut > T * (1.0 + 1e-12))
        throw std::invalid_argument("t_cut must lie in (0, total_time]");
    if (t_cut >= T) return w;
    const auto pieces = detail::build_pieces(w);
    const auto& q = detail::piece_at(pieces, t_cut, T);
    GradientWaveform out;
    out.B0 = w.B0;
    out.u = w.u;
    for (const auto& bp : w.breakpoints) {
        if (!(bp.first < t_cut)) break;
        out.breakpoints.push_back(bp);
    }
    out.breakpoints.emplace_back(t_cut, q.G0 + q.slope * (t_cut - q.t0));
    out.validate();
    return out;
}

// Evaluator with precomputed prefix integrals; cheap to copy around.
class WaveformMoments {
  public:
    explicit WaveformMoments(GradientWaveform w)
        : waveform_(std::move(w)), pieces_(detail::build_pieces(waveform_)) {}

    const GradientWaveform& waveform() const { return waveform_; }
    double total_time() const { return waveform_.total_time(); }

    double G(double t) const {
        const auto& q = detail::piece_at(pieces_, t, total_time());
        const double tau = t - q.t0;
        return q.G0 + q.slope * tau;
    }

    // F(t) = ∫₀ᵗ G
    double F(double t) const {
        const auto& q = detail::piece_at(pieces_, t, total_time());
        const double tau = t - q.t0;
        return q.F0 + q.G0 * tau + 0.5 * q.slope * tau * tau;
    }

    // ∫₀ᵗ F
    double int_F(double t) const {
        const auto& q = detail::piece_at(pieces_, t, total_time());
        const double tau = t - q.t0;
        return q.intF0 + q.F0 * tau + 0.5 * q.G0 * tau * tau +
               q.slope * tau * tau * tau / 6.0;
    }

    // ∫₀ᵗ F²
    double int_F2(double t) const {
        const auto& q = detail::piece_at(pieces_, t, total_time());
        const double tau = t - q.t0;
        return q.intF20 + q.F0 * q.F0 * tau + q.F0 * q.G0 * tau * tau +
               (q.G0 * q.G0 + q.slope * q.F0) * tau * tau * tau / 3.0 +
               0.25 * q.G0 * q.slope * tau * tau * tau * tau +
               q.slope * q.slope * tau * tau * tau * tau * tau / 20.0;
    }

    // max |F| over [0, T]; F is piecewise quadratic so the extrema are at
    // piece edges or at the interior zero of G
    double F_peak() const {
        double peak = 0.0;
        for (const auto& q : pieces_) {
            peak = std::max(peak, std::abs(q.F0));
            if (q.slope != 0.0) {
                const double tau = -q.G0 / q.slope;
                if (tau > 0.0 && tau < q.dt)
                    peak = std::max(peak, std::abs(q.F0 + q.G0 * tau +
                                                   0.5 * q.slope * tau * tau));
            }
        }
        const double T = total_time();
        peak = std::max(peak, std::abs(F(T)));
        return peak;
    }

    // E(t) = e^{-αt} ∫₀ᵗ F(t') e^{αt'} dt', exact per piece (the integrand is
    // polynomial × exponential). Degrades gracefully to ∫F as α → 0.
    double exp_weighted_F(double alpha, double t) const {
        return exp_weighted(alpha, t, /*use_G=*/false);
    }
    // same kernel applied to G itself: e^{-αt} ∫₀ᵗ G(t') e^{αt'} dt'
    double exp_weighted_G(double alpha, double t) const {
        return exp_weighted(alpha, t, /*use_G=*/true);
    }

    const std::vector<detail::Piece>& pieces() const { return pieces_; }

  private:
    // I_m(α, L) = ∫₀^L s^m e^{-α(L-s)} ds. The upward recurrence in m is
    // unstable for small αL, so switch to the series
    // L^{m+1} m! Σ_j (-αL)^j / (m+j+1)!  below αL = 0.5.
    static double Im_kernel(double alpha, double L, int m) {
        const double aL = alpha * L;
        if (aL < 0.5) {
            double sum = 0.0;
            double tj = std::pow(L, m + 1) / (m + 1);  // j = 0 term
            for (int j = 0; j < 40; ++j) {
                sum += tj;
                tj *= -aL / (m + j + 2);
                if (std::abs(tj) < 1e-18 * std::abs(sum)) break;
            }
            return sum;
        }
        if (m == 0) return (1.0 - std::exp(-aL)) / alpha;
        return (std::pow(L, m) - m * Im_kernel(alpha, L, m - 1)) / alpha;
    }

    double exp_weighted(double alpha, double t, bool use_G) const {
        if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
        detail::piece_at(pieces_, t, total_time());  // domain check
        double E = 0.0;
        for (const auto& q : pieces_) {
            if (t <= q.t0) break;
            const double L = std::min(t, q.t0 + q.dt) - q.t0;
            // local polynomial coefficients c0 + c1 s + c2 s²
            const double c0 = use_G ? q.G0 : q.F0;
            const double c1 = use_G ? q.slope : q.G0;
            const double c2 = use_G ? 0.0 : 0.5 * q.slope;
            const double piece = c0 * Im_kernel(alpha, L, 0) +
                                 c1 * Im_kernel(alpha, L, 1) +
                                 c2 * Im_kernel(alpha, L, 2);
            E = E * std::exp(-alpha * L) + piece;
            if (q.t0 + q.dt >= t) break;
        }
        return E;
    }

    GradientWaveform waveform_;
    std::vector<detail::Piece> pieces_;
};

} // namespace spingrad
