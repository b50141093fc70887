#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qmem {

using OdeState = std::vector<double>;
using OdeRhs = std::function<OdeState(double t, std::span<const double> y)>;

struct OdeSample {
    double t;
    OdeState y;
};

/// Classic fixed-step fourth-order Runge-Kutta from t0 to t1.
///
/// Returns steps + 1 samples, both endpoints included. Sample times are
/// t0 + i * (t1 - t0) / steps, computed directly so that period boundaries
/// land exactly on grid points. Throws qmem::NumericalError (with the
/// offending t in the message) if the right-hand side is non-finite, and
/// std::invalid_argument for steps < 1 or t1 <= t0.
std::vector<OdeSample> rk4_integrate(const OdeRhs& rhs, OdeState y0, double t0, double t1,
                                     int steps);

}  // namespace qmem
