#include "qmem/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qmem/bessel.hpp"

namespace qmem {
namespace {

constexpr double kClosureTol = 1e-8;
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double axis_value(const Trajectory& traj, const TrajectorySample& s, Observable axis) {
    switch (axis) {
        case Observable::drive: return s.drive;
        case Observable::theta: return s.theta;
        case Observable::input: return s.input_obs;
        case Observable::n_b1: return s.n_b1;
        case Observable::n_b2: return s.n_b2;
        case Observable::variance_deficit:
            if (traj.scenario() != Scenario::squeezed) {
                throw std::invalid_argument("variance_deficit axis needs the squeezed scenario");
            }
            return kReferenceVariance - s.drive;
        case Observable::entropy:
            if (!s.entropy) throw std::invalid_argument("entropy axis needs attach_entropy first");
            return *s.entropy;
    }
    throw std::invalid_argument("unknown observable");
}

Observable default_x_axis(Scenario scenario) {
    return scenario == Scenario::squeezed ? Observable::variance_deficit : Observable::input;
}

// integral_0^v s^2 / (1 - 2 s) ds, with a series where the closed form cancels
double squeezed_potential(double v) {
    if (std::abs(v) < 0.05) {
        double sum = 0.0;
        double power = v * v * v;
        for (int k = 0; k < 40; ++k) {
            const double term = power / (k + 3);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            power *= 2.0 * v;
        }
        return sum;
    }
    return -v * v / 4.0 - v / 4.0 - std::log1p(-2.0 * v) / 8.0;
}

// Periodic part of integral_0^phi sqrt(2) cos(2 psi) sin^2(psi) d psi
double fock_potential(double phi) {
    return kSqrt2 * (std::sin(2.0 * phi) / 4.0 - std::sin(4.0 * phi) / 16.0);
}

double area_integrand(const Trajectory& traj, const TrajectorySample& s) {
    const double half_sin = std::sin(s.theta) / 2.0;
    switch (traj.scenario()) {
        case Scenario::coherent: {
            const double u = s.drive;
            return -(u * u * u / 3.0) * half_sin * s.theta_rate;
        }
        case Scenario::squeezed:
            return -squeezed_potential(kReferenceVariance - s.drive) * half_sin * s.theta_rate;
        case Scenario::fock: {
            const double half = std::sin(s.theta / 2.0);
            return fock_potential(s.drive) * half_sin * s.theta_rate +
                   kSqrt2 * traj.drive.omega / 4.0 * half * half;
        }
    }
    throw std::invalid_argument("unknown scenario");
}

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

Observable observable_from_string(std::string_view name) {
    if (name == "drive") return Observable::drive;
    if (name == "theta") return Observable::theta;
    if (name == "input") return Observable::input;
    if (name == "n_b1") return Observable::n_b1;
    if (name == "n_b2") return Observable::n_b2;
    if (name == "variance_deficit") return Observable::variance_deficit;
    if (name == "entropy") return Observable::entropy;
    throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

std::string_view to_string(Observable observable) {
    switch (observable) {
        case Observable::drive: return "drive";
        case Observable::theta: return "theta";
        case Observable::input: return "input";
        case Observable::n_b1: return "n_b1";
        case Observable::n_b2: return "n_b2";
        case Observable::variance_deficit: return "variance_deficit";
        case Observable::entropy: return "entropy";
    }
    return "unknown";
}

LoopWindow loop_window(const Trajectory& traj) {
    const auto spp = static_cast<std::size_t>(traj.steps_per_period);
    if (traj.period_count < 1 || spp == 0 ||
        traj.samples.size() != static_cast<std::size_t>(traj.period_count) * spp + 1) {
        throw std::invalid_argument("loop_window: trajectory does not hold whole periods");
    }
    const std::size_t start = static_cast<std::size_t>(traj.period_count - 1) * spp;
    if (traj.scenario() == Scenario::squeezed) {
        if (spp % 4 != 0) {
            throw std::invalid_argument("loop_window: squeezed loop needs steps_per_period divisible by 4");
        }
        return {start + spp / 4, start + 3 * spp / 4};
    }
    return {start, start + spp};
}

PlanarCurve extract_loop(const Trajectory& traj, Observable x_axis, Observable y_axis) {
    const LoopWindow w = loop_window(traj);
    if (w.last - w.first + 1 < kMinCurvePoints) {
        throw std::invalid_argument("extract_loop: too few samples in one loop");
    }
    PlanarCurve curve;
    curve.points.reserve(w.last - w.first + 1);
    double scale = 0.0;
    for (std::size_t i = w.first; i <= w.last; ++i) {
        const TrajectorySample& s = traj.samples[i];
        const Point2 p{axis_value(traj, s, x_axis), axis_value(traj, s, y_axis)};
        scale = std::max({scale, std::abs(p.u), std::abs(p.v)});
        curve.points.push_back(p);
    }
    const Point2& a = curve.points.front();
    const Point2& b = curve.points.back();
    curve.closed = std::hypot(a.u - b.u, a.v - b.v) <= kClosureTol * std::max(1.0, scale);
    return curve;
}

PlanarCurve extract_loop(const Trajectory& traj) {
    return extract_loop(traj, default_x_axis(traj.scenario()), Observable::n_b1);
}

double area_integral_method(const Trajectory& traj) {
    const LoopWindow w = loop_window(traj);
    double sum = 0.0;
    double prev = area_integrand(traj, traj.samples[w.first]);
    for (std::size_t i = w.first + 1; i <= w.last; ++i) {
        const double cur = area_integrand(traj, traj.samples[i]);
        sum += 0.5 * (prev + cur) * (traj.samples[i].t - traj.samples[i - 1].t);
        prev = cur;
    }
    return std::abs(sum);
}

CoherentAreaAnalytic coherent_area_analytic(double x_max, double x0, double omega0, double omega,
                                            double theta0) {
    require_positive(x_max, "x_max");
    require_positive(x0, "x0");
    require_positive(omega0, "omega0");
    require_positive(omega, "omega");
    if (!std::isfinite(theta0)) throw std::invalid_argument("theta0 must be finite");
    const double k = x_max * omega0 / (x0 * omega);
    const double j2 = bessel_j2(k);
    CoherentAreaAnalytic out;
    out.derived = kPi * x_max * x_max * x0 * (omega / omega0) * std::sin(theta0) * j2;
    out.printed = kPi * x_max * x_max / (2.0 * x0) * (omega / omega0) * j2;
    out.ratio = out.derived / out.printed;
    out.valid = omega >= x_max * omega0 / (x0 * kPi);
    return out;
}

double squeezed_area_asymptotic(double alpha, double omega) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    require_positive(omega, "omega");
    return kPi / (16.0 * kSqrt2 * omega * std::sqrt(1.0 - alpha));
}

double fock_area_asymptotic(double omega0, double omega) {
    require_positive(omega0, "omega0");
    require_positive(omega, "omega");
    return kPi / (4.0 * kSqrt2) + kPi * omega0 / (8.0 * kSqrt2 * omega);
}

int crossing_prediction(Scenario scenario, const CrossingParams& p) {
    require_positive(p.omega, "omega");
    require_positive(p.omega0, "omega0");
    require_positive(p.x0, "x0");
    switch (scenario) {
        case Scenario::coherent:
        case Scenario::squeezed: {
            const double amp = scenario == Scenario::coherent ? std::abs(p.amplitude)
                                                              : std::sqrt(p.amplitude / 2.0);
            // largest n with n < k / pi
            const double ratio = amp * p.omega0 / (p.x0 * p.omega) / kPi;
            return std::max(0, static_cast<int>(std::ceil(ratio)) - 1);
        }
        case Scenario::fock: {
            // largest n with 4n - 1 < omega0 / (omega pi)
            const double q = p.omega0 / (p.omega * kPi);
            return std::max(0, static_cast<int>(std::ceil((q + 1.0) / 4.0)) - 1);
        }
    }
    throw std::invalid_argument("unknown scenario");
}

CrossingParams crossing_params(const Trajectory& traj) {
    return {traj.drive.amplitude, traj.drive.omega, traj.law.omega0, traj.law.x0};
}

bool is_pinched(const PlanarCurve& curve, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_pinched: tol must be > 0");
    bool touches = false;
    const auto& pts = curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2& a = pts[i];
        if (std::abs(a.u) <= tol) {
            touches = true;
            if (std::abs(a.v) > tol) return false;
        }
        if (i + 1 == pts.size() && !curve.closed) break;
        const Point2& b = pts[(i + 1) % pts.size()];
        if ((a.u < -tol && b.u > tol) || (a.u > tol && b.u < -tol)) {
            touches = true;
            const double f = a.u / (a.u - b.u);
            if (std::abs(a.v + f * (b.v - a.v)) > tol) return false;
        }
    }
    return touches;
}

LoopReport loop_report(const Trajectory& traj, double intersection_tol) {
    const PlanarCurve curve = extract_loop(traj);
    const LoopDecomposition dec = decompose_loop(curve, intersection_tol);
    LoopReport r;
    r.area_geometric = dec.unsigned_area();
    r.area_integral = area_integral_method(traj);
    r.sub_loop_count = dec.sub_loops.size();
    r.crossing_count = dec.crossing_count();
    r.transversal_count = dec.transversal_count();
    r.degenerate_count = dec.degenerate_count();
    r.crossings_per_lobe =
        static_cast<double>(r.transversal_count) / static_cast<double>(r.degenerate_count + 1);
    r.pinched = is_pinched(curve, kPinchTol);

    const CrossingParams params = crossing_params(traj);
    r.predicted_crossings = crossing_prediction(traj.scenario(), params);
    r.analytic_validity = r.predicted_crossings == 0;
    switch (traj.scenario()) {
        case Scenario::coherent: {
            const double k = params.amplitude * params.omega0 / (params.x0 * params.omega);
            if (params.amplitude > 0.0 && k < kBesselDomain) {
                const CoherentAreaAnalytic a = coherent_area_analytic(
                    params.amplitude, params.x0, params.omega0, params.omega, traj.law.theta0);
                r.analytic_area = a.derived;
                r.analytic_printed = a.printed;
                r.analytic_validity = a.valid;
            }
            break;
        }
        case Scenario::squeezed:
            r.analytic_area =
                squeezed_area_asymptotic(params.amplitude, params.omega * params.x0 / params.omega0);
            break;
        case Scenario::fock:
            r.analytic_area = fock_area_asymptotic(params.omega0, params.omega);
            break;
    }
    if (r.analytic_area && *r.analytic_area != 0.0) {
        r.ratio_numeric_to_analytic = r.area_geometric / *r.analytic_area;
    }
    return r;
}

}  // namespace qmem
