#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

// Thin wrappers around Gauss-Kronrod 15-point quadrature. Oscillatory
// integrands (Bessel/exponential phases) are handled by fixed panelling at
// a fraction of the oscillation period, with adaptive refinement inside
// each panel; results carry the accumulated error estimate.

namespace spingrad::quadrature {

struct Result {
    double value;
    double error;  // absolute error estimate from the Kronrod rule
};

using gk15 = boost::math::quadrature::gauss_kronrod<double, 15>;

template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = 1e-9,
                 unsigned max_depth = 15) {
    double err = 0.0;
    const double v = gk15::integrate(std::forward<F>(f), a, b, max_depth, rel_tol, &err);
    return {v, err};
}

// Split [a, b] into n_panels equal panels and integrate each adaptively.
// Used when the integrand oscillates ~n_panels/2 times across [a, b], so
// each panel sees at most about half an oscillation and the 15-point rule
// starts from a resolved picture (>= 10 nodes per period by construction).
template <class F>
Result integrate_panels(F&& f, double a, double b, int n_panels,
                        double rel_tol = 1e-10, unsigned max_depth = 8) {
    if (n_panels < 1) throw std::invalid_argument("n_panels must be >= 1");
    const double h = (b - a) / n_panels;
    double sum = 0.0, comp = 0.0, err = 0.0;  // Kahan-compensated panel sum
    for (int i = 0; i < n_panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == n_panels) ? b : x0 + h;
        double e = 0.0;
        const double v = gk15::integrate(f, x0, x1, max_depth, rel_tol, &e);
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += e;
    }
    return {sum, err};
}

} // namespace spingrad::quadrature
