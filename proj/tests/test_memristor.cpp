#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmem/errors.hpp"
#include "qmem/memristor.hpp"
#include "qmem/states.hpp"

using namespace qmem;
constexpr double kPi = std::numbers::pi;

namespace {

const DriveSignal kCoherent{DriveKind::coherent_x, 1.0, 1.0};
const DriveSignal kSqueezed{DriveKind::squeezed_var, 0.5, 1.0};
const DriveSignal kFock{DriveKind::fock_angle, 0.0, 1.0};
const FeedbackLaw kLinear{FeedbackKind::linear};
const FeedbackLaw kSqrt{FeedbackKind::sqrt_sign};
const FeedbackLaw kFockLaw{FeedbackKind::fock_linear};

double max_theta_error(const Trajectory& t) {
    double worst = 0.0;
    for (const auto& s : t.samples) {
        worst = std::max(worst, std::abs(s.theta - closed_form_theta(t.law, t.drive, s.t)));
    }
    return worst;
}

}  // namespace

TEST_CASE("closed-form theta") {
    for (auto [drive, law] : {std::pair{kCoherent, kLinear}, {kSqueezed, kSqrt}, {kFock, kFockLaw}}) {
        CHECK(closed_form_theta(law, drive, 0.0) == doctest::Approx(law.theta0));
        CHECK(closed_form_theta(law, drive, drive.period()) == doctest::Approx(law.theta0));
    }
    CHECK(closed_form_theta(kSqrt, kSqueezed, kPi / 2.0) == doctest::Approx(kSqrt.theta0 + 0.5));
    CHECK(closed_form_theta(kLinear, {DriveKind::coherent_x, 2.0, 4.0}, kPi / 8.0) ==
          doctest::Approx(kLinear.theta0 + 0.5));
    CHECK(closed_form_theta(kFockLaw, kFock, kPi / 2.0) == doctest::Approx(kFockLaw.theta0 + 1.0));
    CHECK(closed_form_theta(kFockLaw, kFock, kPi / 4.0) == doctest::Approx(kFockLaw.theta0 + 0.5));
    CHECK_THROWS_AS(closed_form_theta(kLinear, kFock, 0.1), std::invalid_argument);
}

TEST_CASE("drive periods") {
    CHECK(kCoherent.period() == doctest::Approx(2.0 * kPi));
    CHECK(DriveSignal{DriveKind::squeezed_var, 0.5, 4.0}.period() == doctest::Approx(kPi / 2.0));
    CHECK(DriveSignal{DriveKind::fock_angle, 0.0, 2.0}.period() == doctest::Approx(kPi / 2.0));
}

TEST_CASE("validation of drives and laws") {
    CHECK_THROWS_AS(validate({DriveKind::coherent_x, 1.0, 0.0}, kLinear), std::invalid_argument);
    CHECK_THROWS_AS(validate({DriveKind::squeezed_var, 1.5, 1.0}, kSqrt), std::invalid_argument);
    CHECK_THROWS_AS(validate({DriveKind::squeezed_var, 0.0, 1.0}, kSqrt), std::invalid_argument);
    CHECK_THROWS_AS(validate(kCoherent, {FeedbackKind::linear, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(kCoherent, {FeedbackKind::linear, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(kCoherent, kSqrt), std::invalid_argument);
    DriveSignal bad_cutoff = kFock;
    bad_cutoff.fock_cutoff = 0;
    CHECK_THROWS_AS(validate(bad_cutoff, kFockLaw), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario(kCoherent, kLinear, 0, 512), std::invalid_argument);
    CHECK_THROWS_AS(run_scenario(kCoherent, kLinear, 1, 128), std::invalid_argument);
    CHECK_NOTHROW(validate(kFock, kFockLaw));
}

TEST_CASE("scenario names round-trip") {
    for (Scenario s : {Scenario::coherent, Scenario::squeezed, Scenario::fock}) {
        CHECK(scenario_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(scenario_from_string("thermal"), std::invalid_argument);
}

TEST_CASE("numeric theta follows the closed forms") {
    CHECK(max_theta_error(run_scenario(kCoherent, kLinear, 2, 10000)) <= 1e-8);
    CHECK(max_theta_error(run_scenario(kSqueezed, kSqrt, 2, 10000)) <= 1e-8);
    CHECK(max_theta_error(run_scenario(kFock, kFockLaw, 2, 10000)) <= 1e-8);
}

TEST_CASE("RK4 error drops sixteenfold when the step halves") {
    const double coarse = max_theta_error(run_scenario(kFock, kFockLaw, 1, 256));
    const double fine = max_theta_error(run_scenario(kFock, kFockLaw, 1, 512));
    CHECK(coarse / fine >= 13.6);
    CHECK(coarse / fine <= 18.4);
}

TEST_CASE("trajectory layout and periodicity") {
    const Trajectory t = run_scenario(kCoherent, kLinear, 3, 1024);
    REQUIRE(t.samples.size() == 3 * 1024 + 1);
    CHECK(t.dt == doctest::Approx(2.0 * kPi / 1024));
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
        CHECK(t.samples[i].t > t.samples[i - 1].t);
        CHECK(std::abs(t.samples[i].theta - t.samples[i - 1].theta) <= 2.0 * t.dt * 1.0);
    }
    for (int p = 1; p <= 3; ++p) {
        CHECK(std::abs(t.samples[static_cast<std::size_t>(p) * 1024].theta - kLinear.theta0) <= 1e-8);
    }
    const Trajectory f = run_scenario(kFock, kFockLaw, 2, 1024);
    CHECK(std::abs(f.samples.back().theta - kFockLaw.theta0) <= 1e-8);
    const Trajectory s = run_scenario(kSqueezed, kSqrt, 2, 1024);
    CHECK(std::abs(s.samples.back().theta - kSqrt.theta0) <= 1e-8);
}

TEST_CASE("coherent pinch: no output where the drive vanishes") {
    const Trajectory t = run_scenario(kCoherent, kLinear, 1, 1024);
    for (std::size_t i : {256u, 768u}) {
        CHECK(std::abs(t.samples[i].n_b1) < 1e-30);
        CHECK(std::abs(t.samples[i].n_b2) < 1e-30);
    }
}

TEST_CASE("energy split and agreement with direct state evaluation") {
    for (auto [drive, law] : {std::pair{kCoherent, kLinear}, {kSqueezed, kSqrt}, {kFock, kFockLaw}}) {
        const Trajectory t = run_scenario(drive, law, 1, 512);
        for (std::size_t i = 0; i < t.samples.size(); i += 37) {
            const TrajectorySample& s = t.samples[i];
            const ScenarioPoint p = evaluate_point(drive, s.t, s.theta);
            CHECK(s.n_b1 + s.n_b2 == doctest::Approx(p.n_in).epsilon(1e-12));
            CHECK(s.n_b1 == p.n_b1);
            CHECK(s.input_obs == p.input_obs);
        }
    }
}

TEST_CASE("per-scenario observables match their formulas") {
    const double theta = 1.2, t = 0.4;
    const double c2 = std::pow(std::cos(theta / 2.0), 2), s2 = std::pow(std::sin(theta / 2.0), 2);

    const ScenarioPoint c = evaluate_point(kCoherent, t, theta);
    CHECK(c.n_b1 == doctest::Approx(std::pow(std::cos(t), 2) * c2).epsilon(1e-14));
    CHECK(c.n_b2 == doctest::Approx(std::pow(std::cos(t), 2) * s2).epsilon(1e-14));

    const ScenarioPoint s = evaluate_point(kSqueezed, t, theta);
    const double var = 0.5 * (1.0 - 0.5 * std::pow(std::cos(t), 2));
    const double r = -0.5 * std::log(2.0 * var);
    CHECK(s.drive == doctest::Approx(var));
    CHECK(s.n_b1 == doctest::Approx(std::pow(std::sinh(r), 2) * c2).epsilon(1e-12));

    const ScenarioPoint f = evaluate_point(kFock, t, theta);
    CHECK(f.input_obs == doctest::Approx(std::sin(2.0 * t) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(f.n_b1 == doctest::Approx(std::pow(std::sin(t), 2) * s2).epsilon(1e-14));
    CHECK(f.n_b2 == doctest::Approx(std::pow(std::sin(t), 2) * c2).epsilon(1e-14));
}

TEST_CASE("larger Fock cutoffs give the same qubit trajectory") {
    DriveSignal wide = kFock;
    wide.fock_cutoff = 4;
    const Trajectory a = run_scenario(kFock, kFockLaw, 1, 256);
    const Trajectory b = run_scenario(wide, kFockLaw, 1, 256);
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].n_b1 == doctest::Approx(b.samples[i].n_b1));
}

TEST_CASE("high-frequency Fock drive barely moves theta") {
    const Trajectory t = run_scenario({DriveKind::fock_angle, 0.0, 50.0}, kFockLaw, 1, 1024);
    double lo = 1e9, hi = -1e9;
    for (const auto& s : t.samples) {
        lo = std::min(lo, s.theta);
        hi = std::max(hi, s.theta);
    }
    CHECK(hi - lo == doctest::Approx(1.0 / 50.0).epsilon(1e-6));
}

TEST_CASE("sqrt feedback refuses variances above the vacuum") {
    CHECK_THROWS_AS(feedback_rate({DriveKind::squeezed_var, -0.2, 1.0}, kSqrt, 0.0), NumericalError);
    CHECK(feedback_rate(kSqueezed, kSqrt, 0.0) == doctest::Approx(0.5));
    CHECK(feedback_rate(kSqueezed, kSqrt, kPi) == doctest::Approx(-0.5));
}

TEST_CASE("entropy along the squeezed and Fock trajectories") {
    const Trajectory f = attach_entropy(run_scenario(kFock, kFockLaw, 1, 512));
    CHECK(*f.samples.front().entropy <= 1e-12);  // phi = 0: vacuum input
    CHECK(*f.samples[128].entropy > 0.1);

    const Trajectory s = attach_entropy(run_scenario(kSqueezed, kSqrt, 1, 512));
    for (const auto& x : s.samples) {
        REQUIRE(x.entropy.has_value());
        const bool squeezed = x.drive < 0.5 - 1e-9;
        const bool mixing = std::sin(x.theta) > 1e-3;
        if (squeezed && mixing) CHECK(*x.entropy > 0.0);
    }
    CHECK(output_entropy(kSqueezed, 0.0, 0.0) <= 1e-10);
    CHECK_THROWS_AS(attach_entropy(run_scenario(kCoherent, kLinear, 1, 256)), std::invalid_argument);
}
