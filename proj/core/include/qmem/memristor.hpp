#pragma once

#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace qmem {

enum class DriveKind { coherent_x, squeezed_var, fock_angle };
enum class FeedbackKind { linear, sqrt_sign, fock_linear };
enum class Scenario { coherent, squeezed, fock };

std::string_view to_string(Scenario scenario);
/// Throws std::invalid_argument for an unknown name.
Scenario scenario_from_string(std::string_view name);

/// Periodic input. `amplitude` is x_max for coherent_x, the squeezing depth
/// alpha in (0, 1) for squeezed_var, and unused for fock_angle.
/// `fock_cutoff` sets the Fock grid for the qubit; the evolution is exact
/// for any cutoff >= 1 since one photon never leaves the n <= 1 block.
struct DriveSignal {
    DriveKind kind = DriveKind::coherent_x;
    double amplitude = 1.0;
    double omega = 1.0;
    int fock_cutoff = 1;

    /// Period of the drive observables: 2 pi / omega, or pi / omega for the
    /// Fock qubit, whose observables depend on phi = omega t only through
    /// sin^2 and sin(2 phi).
    double period() const;
};

struct FeedbackLaw {
    FeedbackKind kind = FeedbackKind::linear;
    double omega0 = 1.0;
    double x0 = 1.0;
    double theta0 = std::numbers::pi / 2.0;
};

/// Throws std::invalid_argument when a field breaks its invariant or the
/// drive and law do not belong together.
void validate(const DriveSignal& drive, const FeedbackLaw& law);

Scenario scenario_of(DriveKind kind);
FeedbackKind matching_law(DriveKind kind);

/// Reference variance the sqrt_sign law compares against (the vacuum).
inline constexpr double kReferenceVariance = 0.5;

/// Everything observable at one instant, computed from the drive and theta
/// alone through the state backends.
struct ScenarioPoint {
    double drive = 0.0;        // x_max cos wt | <x^2_in> | phi = wt
    double input_obs = 0.0;    // u | <x^2_in> | <x_in> = sin(2 phi)/sqrt 2
    double n_in = 0.0;         // input mean photon number
    double n_b1 = 0.0;         // output channel b1
    double n_b2 = 0.0;         // output channel b2
};

/// Drive variable at time t (see ScenarioPoint::drive).
double drive_value(const DriveSignal& drive, double t);

/// Feedback rate g at time t. Throws NumericalError when the sqrt_sign
/// radicand is negative or g is non-finite.
double feedback_rate(const DriveSignal& drive, const FeedbackLaw& law, double t);

/// Output observables at (t, theta).
///
/// Coherent: mode-1 amplitude u = x_max cos wt against vacuum; b1 carries
/// u^2 cos^2(theta/2). Squeezed: r from <x^2_in> = e^{-2r}/2; b1 carries
/// sinh^2 r cos^2(theta/2). Fock: qubit with phi = wt; b1 is the channel
/// that carries sin^2 phi sin^2(theta/2), which is the second operator mode.
ScenarioPoint evaluate_point(const DriveSignal& drive, double t, double theta);

double closed_form_theta(const FeedbackLaw& law, const DriveSignal& drive, double t);

struct TrajectorySample {
    double t = 0.0;
    double drive = 0.0;
    double theta = 0.0;
    double theta_rate = 0.0;
    double n_b1 = 0.0;
    double n_b2 = 0.0;
    double input_obs = 0.0;
    std::optional<double> entropy;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    DriveSignal drive;
    FeedbackLaw law;
    int period_count = 0;
    int steps_per_period = 0;
    double dt = 0.0;

    Scenario scenario() const { return scenario_of(drive.kind); }
};

inline constexpr int kMinStepsPerPeriod = 256;
inline constexpr int kDefaultStepsPerPeriod = 4096;
inline constexpr double kEnergyTol = 1e-12;

/// Integrates theta with RK4 over `periods` drive periods and records every
/// step. The energy split n_b1 + n_b2 = n_in is checked at each sample
/// (relative 1e-12) and raises NumericalError if broken.
Trajectory run_scenario(const DriveSignal& drive, const FeedbackLaw& law, int periods,
                        int steps_per_period = kDefaultStepsPerPeriod);

/// Entanglement entropy (nats) of the output state at one instant: Gaussian
/// backend for the squeezed drive, Fock backend for the qubit. Throws
/// std::invalid_argument for the coherent drive, whose output is always a
/// product state.
double output_entropy(const DriveSignal& drive, double t, double theta);

/// Copy of the trajectory with every sample's entropy filled in.
Trajectory attach_entropy(Trajectory trajectory);

}  // namespace qmem
