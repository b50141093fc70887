#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "qmem/loop_geometry.hpp"
#include "qmem/memristor.hpp"

namespace qmem {

enum class Observable { drive, theta, input, n_b1, n_b2, variance_deficit, entropy };

/// Throws std::invalid_argument for an unknown name.
Observable observable_from_string(std::string_view name);
std::string_view to_string(Observable observable);

/// Sample index range [first, last] forming one traversal of the loop in the
/// final drive period.
///
/// For the squeezed drive the observables at t and pi/omega - t coincide, so
/// a full period runs the same curve forward and then backward and encloses
/// no net area. The loop is the half period where cos(omega t) <= 0, which
/// starts and ends at the origin. This needs steps_per_period divisible by 4.
struct LoopWindow {
    std::size_t first = 0;
    std::size_t last = 0;
};

LoopWindow loop_window(const Trajectory& trajectory);

/// The loop in the chosen axes over loop_window. `closed` is set when the
/// end points agree within 1e-8 of the curve scale.
/// Throws std::invalid_argument for short trajectories or an axis that the
/// trajectory does not carry.
PlanarCurve extract_loop(const Trajectory& trajectory, Observable x_axis, Observable y_axis);

/// Input/output axes per scenario: (u, n_b1) coherent, (1/2 - <x^2_in>, n_b1)
/// squeezed, (<x_in>, n_b1) Fock.
PlanarCurve extract_loop(const Trajectory& trajectory);

/// Loop area on the default axes from the feedback rate instead of the curve
/// geometry.
///
/// With y = F(theta, x) and H(theta, x) = integral_0^x F(theta, s) ds, the
/// exact differential dH integrates to zero around the loop, so the enclosed
/// area is |integral dH/dtheta * theta_rate dt|. The Fock output is not a
/// single-valued function of <x_in>, so there the drive phase plays the role
/// of x and a term from the secular part of H adds
/// (sqrt(2) omega / 4) * integral sin^2(theta/2) dt.
/// Trapezoidal quadrature over the loop window samples.
double area_integral_method(const Trajectory& trajectory);

struct CoherentAreaAnalytic {
    double derived = 0.0;  // pi x_max^2 x0 (w/w0) sin(theta0) J2(k)
    double printed = 0.0;    // (pi x_max^2 / (2 x0)) (w/w0) J2(k)
    double ratio = 0.0;    // derived / printed
    bool valid = false;    // w >= x_max w0 / (x0 pi): no sub-loop crossings
};

/// k = x_max omega0 / (x0 omega) must stay below the Bessel domain (50).
/// Throws std::invalid_argument for non-positive parameters.
CoherentAreaAnalytic coherent_area_analytic(double x_max, double x0, double omega0, double omega,
                                            double theta0);

/// pi / (16 sqrt(2) omega sqrt(1 - alpha)), omega in units of omega0 / x0.
/// Meant for large omega and alpha close to 1.
double squeezed_area_asymptotic(double alpha, double omega);

/// pi / (4 sqrt 2) + pi omega0 / (8 sqrt(2) omega).
double fock_area_asymptotic(double omega0, double omega);

struct CrossingParams {
    double amplitude = 1.0;  // x_max or alpha
    double omega = 1.0;
    double omega0 = 1.0;
    double x0 = 1.0;
};

/// Number of self-crossings each lobe is expected to show: the largest n with
///   coherent  omega < x_max omega0 / (n x0 pi)
///   squeezed  omega < sqrt(alpha/2) omega0 / (n x0 pi)
///   Fock      omega <= omega0 / ((4n - 1) pi)
/// and 0 above the first threshold.
int crossing_prediction(Scenario scenario, const CrossingParams& params);

CrossingParams crossing_params(const Trajectory& trajectory);

/// True when the curve reaches the vertical axis (some point with |u| <= tol)
/// and every place it meets u = 0, at a vertex or between two vertices of
/// opposite sign, has |v| <= tol. The lobes on either side then touch only
/// at the origin.
bool is_pinched(const PlanarCurve& curve, double tol);

struct LoopReport {
    double area_geometric = 0.0;
    double area_integral = 0.0;
    std::size_t sub_loop_count = 0;
    std::size_t crossing_count = 0;
    std::size_t transversal_count = 0;
    std::size_t degenerate_count = 0;
    /// Transversal crossings per lobe; the lobes are separated by the
    /// degenerate (tangential) contacts.
    double crossings_per_lobe = 0.0;
    int predicted_crossings = 0;
    bool pinched = false;
    std::optional<double> analytic_area;
    std::optional<double> analytic_printed;  // coherent only: the printed prefactor
    bool analytic_validity = false;
    std::optional<double> ratio_numeric_to_analytic;
};

inline constexpr double kPinchTol = 1e-6;

LoopReport loop_report(const Trajectory& trajectory, double intersection_tol = kDefaultIntersectionTol);

}  // namespace qmem
