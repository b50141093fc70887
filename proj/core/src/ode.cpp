#include "qmem/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qmem/errors.hpp"

namespace qmem {
namespace {

OdeState eval_checked(const OdeRhs& rhs, double t, const OdeState& y) {
    OdeState k = rhs(t, y);
    if (k.size() != y.size()) {
        throw std::invalid_argument("rk4_integrate: derivative dimension mismatch");
    }
    if (!std::all_of(k.begin(), k.end(), [](double v) { return std::isfinite(v); })) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "rk4_integrate: non-finite derivative at t = " << t;
        throw NumericalError(msg.str());
    }
    return k;
}

OdeState axpy(const OdeState& y, double h, const OdeState& k) {
    OdeState out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

}  // namespace

std::vector<OdeSample> rk4_integrate(const OdeRhs& rhs, OdeState y0, double t0, double t1,
                                     int steps) {
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
    if (!(t1 > t0)) throw std::invalid_argument("rk4_integrate: requires t1 > t0");

    const double span = t1 - t0;
    const double h = span / steps;

    std::vector<OdeSample> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back({t0, y0});

    OdeState y = std::move(y0);
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + span * i / steps;
        const OdeState k1 = eval_checked(rhs, t, y);
        const OdeState k2 = eval_checked(rhs, t + 0.5 * h, axpy(y, 0.5 * h, k1));
        const OdeState k3 = eval_checked(rhs, t + 0.5 * h, axpy(y, 0.5 * h, k2));
        const OdeState k4 = eval_checked(rhs, t + h, axpy(y, h, k3));
        for (std::size_t j = 0; j < y.size(); ++j) {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        const double t_next = (i + 1 == steps) ? t1 : t0 + span * (i + 1) / steps;
        out.push_back({t_next, y});
    }
    return out;
}

}  // namespace qmem
