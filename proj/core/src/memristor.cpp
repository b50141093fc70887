#include "qmem/memristor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmem/errors.hpp"
#include "qmem/ode.hpp"
#include "qmem/states.hpp"

namespace qmem {
namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

BeamSplitterSpec splitter(double theta) { return {theta, 0.0, 0.0}; }

double squeezing_from_variance(double variance) { return -0.5 * std::log(2.0 * variance); }

}  // namespace

std::string_view to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::coherent: return "coherent";
        case Scenario::squeezed: return "squeezed";
        case Scenario::fock: return "fock";
    }
    return "unknown";
}

Scenario scenario_from_string(std::string_view name) {
    if (name == "coherent") return Scenario::coherent;
    if (name == "squeezed") return Scenario::squeezed;
    if (name == "fock") return Scenario::fock;
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

double DriveSignal::period() const {
    const double full = 2.0 * std::numbers::pi / omega;
    return kind == DriveKind::fock_angle ? full / 2.0 : full;
}

Scenario scenario_of(DriveKind kind) {
    switch (kind) {
        case DriveKind::coherent_x: return Scenario::coherent;
        case DriveKind::squeezed_var: return Scenario::squeezed;
        case DriveKind::fock_angle: return Scenario::fock;
    }
    throw std::invalid_argument("unknown drive kind");
}

FeedbackKind matching_law(DriveKind kind) {
    switch (kind) {
        case DriveKind::coherent_x: return FeedbackKind::linear;
        case DriveKind::squeezed_var: return FeedbackKind::sqrt_sign;
        case DriveKind::fock_angle: return FeedbackKind::fock_linear;
    }
    throw std::invalid_argument("unknown drive kind");
}

void validate(const DriveSignal& drive, const FeedbackLaw& law) {
    if (!finite_positive(drive.omega)) throw std::invalid_argument("omega must be finite and > 0");
    if (drive.kind == DriveKind::coherent_x && !std::isfinite(drive.amplitude)) {
        throw std::invalid_argument("coherent amplitude must be finite");
    }
    if (drive.kind == DriveKind::squeezed_var && !(drive.amplitude > 0.0 && drive.amplitude < 1.0)) {
        throw std::invalid_argument("squeezing depth alpha must lie in (0, 1)");
    }
    if (drive.kind == DriveKind::fock_angle && drive.fock_cutoff < 1) {
        throw std::invalid_argument("Fock cutoff must be >= 1");
    }
    if (!finite_positive(law.omega0)) throw std::invalid_argument("omega0 must be finite and > 0");
    if (!finite_positive(law.x0)) throw std::invalid_argument("x0 must be finite and > 0");
    if (!std::isfinite(law.theta0)) throw std::invalid_argument("theta0 must be finite");
    if (law.kind != matching_law(drive.kind)) {
        throw std::invalid_argument("feedback law does not match the drive kind");
    }
}

double drive_value(const DriveSignal& drive, double t) {
    const double wt = drive.omega * t;
    switch (drive.kind) {
        case DriveKind::coherent_x: return drive.amplitude * std::cos(wt);
        case DriveKind::squeezed_var: {
            const double c = std::cos(wt);
            return 0.5 * (1.0 - drive.amplitude * c * c);
        }
        case DriveKind::fock_angle: return wt;
    }
    throw std::invalid_argument("unknown drive kind");
}

double feedback_rate(const DriveSignal& drive, const FeedbackLaw& law, double t) {
    const double value = drive_value(drive, t);
    double g = 0.0;
    switch (law.kind) {
        case FeedbackKind::linear:
            g = law.omega0 / law.x0 * value;
            break;
        case FeedbackKind::sqrt_sign: {
            const double radicand = kReferenceVariance - value;
            if (radicand < 0.0) {
                throw NumericalError("sqrt_sign feedback: <x^2_in> = " + std::to_string(value) +
                                     " exceeds the reference variance at t = " + std::to_string(t));
            }
            const double c = std::cos(drive.omega * t);
            const double sign = c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
            g = sign * law.omega0 / law.x0 * std::sqrt(radicand);
            break;
        }
        case FeedbackKind::fock_linear:
            g = std::sqrt(2.0) * law.omega0 * (std::sin(2.0 * value) / std::sqrt(2.0));
            break;
    }
    if (!std::isfinite(g)) {
        throw NumericalError("feedback rate is not finite at t = " + std::to_string(t));
    }
    return g;
}

ScenarioPoint evaluate_point(const DriveSignal& drive, double t, double theta) {
    ScenarioPoint p;
    p.drive = drive_value(drive, t);
    switch (drive.kind) {
        case DriveKind::coherent_x: {
            const CoherentPair out = apply_bs_coherent({cplx(p.drive, 0.0), cplx{}}, splitter(theta));
            p.input_obs = p.drive;
            p.n_in = p.drive * p.drive;
            p.n_b1 = std::norm(out.alpha);
            p.n_b2 = std::norm(out.beta);
            break;
        }
        case DriveKind::squeezed_var: {
            const double r = squeezing_from_variance(p.drive);
            const GaussianState out = apply_bs_gaussian(squeezed_with_vacuum(r, 0.0), splitter(theta));
            const double sh = std::sinh(r);
            p.input_obs = p.drive;
            p.n_in = sh * sh;
            p.n_b1 = gaussian_observables(out, Mode::first).mean_n;
            p.n_b2 = gaussian_observables(out, Mode::second).mean_n;
            break;
        }
        case DriveKind::fock_angle: {
            const FockTwoMode in = fock_qubit_input(0.0, p.drive, drive.fock_cutoff);
            const FockTwoMode out = apply_bs_fock(in, splitter(theta));
            p.input_obs = fock_observables(in, Mode::first).mean_x;
            p.n_in = fock_observables(in, Mode::first).mean_n;
            p.n_b1 = fock_observables(out, Mode::second).mean_n;
            p.n_b2 = fock_observables(out, Mode::first).mean_n;
            break;
        }
    }
    return p;
}

double closed_form_theta(const FeedbackLaw& law, const DriveSignal& drive, double t) {
    if (law.kind != matching_law(drive.kind)) {
        throw std::invalid_argument("closed_form_theta: feedback law does not match the drive kind");
    }
    const double w = drive.omega;
    switch (law.kind) {
        case FeedbackKind::linear:
            return law.theta0 + drive.amplitude * law.omega0 / (law.x0 * w) * std::sin(w * t);
        case FeedbackKind::sqrt_sign:
            return law.theta0 +
                   std::sqrt(drive.amplitude / 2.0) * law.omega0 / (law.x0 * w) * std::sin(w * t);
        case FeedbackKind::fock_linear:
            return law.theta0 + law.omega0 / (2.0 * w) * (1.0 - std::cos(2.0 * w * t));
    }
    throw std::invalid_argument("unknown feedback law");
}

Trajectory run_scenario(const DriveSignal& drive, const FeedbackLaw& law, int periods,
                        int steps_per_period) {
    validate(drive, law);
    if (periods < 1) throw std::invalid_argument("run_scenario: periods must be >= 1");
    if (steps_per_period < kMinStepsPerPeriod) {
        throw std::invalid_argument("run_scenario: steps_per_period must be >= " +
                                    std::to_string(kMinStepsPerPeriod));
    }

    const double span = drive.period() * periods;
    const int steps = periods * steps_per_period;
    const OdeRhs rhs = [&](double t, std::span<const double>) {
        return OdeState{feedback_rate(drive, law, t)};
    };
    const std::vector<OdeSample> solution = rk4_integrate(rhs, {law.theta0}, 0.0, span, steps);

    Trajectory traj;
    traj.drive = drive;
    traj.law = law;
    traj.period_count = periods;
    traj.steps_per_period = steps_per_period;
    traj.dt = span / steps;
    traj.samples.reserve(solution.size());
    for (const OdeSample& s : solution) {
        const double theta = s.y[0];
        const ScenarioPoint p = evaluate_point(drive, s.t, theta);
        const double defect = std::abs(p.n_b1 + p.n_b2 - p.n_in);
        if (!(defect <= kEnergyTol * std::max(1.0, p.n_in))) {
            throw NumericalError("energy split broken at t = " + std::to_string(s.t) +
                                 " (defect " + std::to_string(defect) + ")");
        }
        TrajectorySample out;
        out.t = s.t;
        out.drive = p.drive;
        out.theta = theta;
        out.theta_rate = feedback_rate(drive, law, s.t);
        out.n_b1 = p.n_b1;
        out.n_b2 = p.n_b2;
        out.input_obs = p.input_obs;
        traj.samples.push_back(out);
    }
    return traj;
}

double output_entropy(const DriveSignal& drive, double t, double theta) {
    switch (drive.kind) {
        case DriveKind::squeezed_var: {
            const double r = squeezing_from_variance(drive_value(drive, t));
            return entanglement_entropy_gaussian(
                apply_bs_gaussian(squeezed_with_vacuum(r, 0.0), splitter(theta)));
        }
        case DriveKind::fock_angle:
            return entanglement_entropy_fock(
                apply_bs_fock(fock_qubit_input(0.0, drive_value(drive, t), drive.fock_cutoff), splitter(theta)));
        case DriveKind::coherent_x:
            break;
    }
    throw std::invalid_argument("entropy is only tracked for the squeezed and Fock scenarios");
}

Trajectory attach_entropy(Trajectory trajectory) {
    for (TrajectorySample& s : trajectory.samples) {
        s.entropy = output_entropy(trajectory.drive, s.t, s.theta);
    }
    return trajectory;
}

}  // namespace qmem
