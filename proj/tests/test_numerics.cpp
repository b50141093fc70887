#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qmem/bessel.hpp"
#include "qmem/complex_mat2.hpp"
#include "qmem/errors.hpp"
#include "qmem/loop_geometry.hpp"
#include "qmem/ode.hpp"
#include "qmem/verify/oracles.hpp"

using namespace qmem;
constexpr double kPi = std::numbers::pi;

TEST_CASE("complex 2x2 products and adjoints") {
    const ComplexMat2 a{cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-1, 1)};
    const ComplexMat2 b{cplx(0, 1), cplx(2, 0), cplx(1, 1), cplx(0, 0)};
    const ComplexMat2 ab = a * b;
    CHECK(std::abs(ab(0, 0) - (cplx(1, 2) * cplx(0, 1) + cplx(0, -1) * cplx(1, 1))) < 1e-15);
    CHECK(std::abs(ab(1, 1) - (cplx(3, 0) * cplx(2, 0))) < 1e-15);
    CHECK(max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
    CHECK(std::abs(a.det() - (cplx(1, 2) * cplx(-1, 1) - cplx(0, -1) * cplx(3, 0))) < 1e-15);
    CHECK(max_abs_diff(ComplexMat2::identity() * a, a) == 0.0);
    CHECK(max_abs_diff(cplx(2.0) * a, a * ComplexMat2::diagonal(2.0, 2.0)) < 1e-15);
    ComplexMat2 bad = a;
    bad(0, 1) = cplx(NAN, 0);
    CHECK_FALSE(bad.is_finite());
    CHECK(a.is_finite());
}

TEST_CASE("J2 matches the standard library and a long-double series") {
    for (double x = -49.5; x < 49.6; x += 0.25) {
        const double ours = bessel_j2(x);
        CHECK(std::abs(ours - std::cyl_bessel_j(2.0, std::abs(x))) <= 1e-12);
    }
    // The alternating series loses digits to cancellation beyond x ~ 12.
    for (double x = 0.0; x <= 10.0; x += 0.1) {
        CHECK(std::abs(bessel_j2(x) - static_cast<double>(oracle::bessel_jn_series_ld(2, x))) <= 1e-13);
    }
    // 40-digit reference values.
    CHECK(std::abs(bessel_j2(15.0) - 0.04157167797525047472) <= 1e-15);
    CHECK(std::abs(bessel_j2(19.5) + 0.18099506500408033115) <= 1e-15);
    CHECK(std::abs(bessel_j2(20.0) + 0.16034135192299815017) <= 1e-15);
}

TEST_CASE("J2 reference values and small-argument behaviour") {
    CHECK(bessel_j2(0.0) == 0.0);
    CHECK(bessel_j2(1.0) == doctest::Approx(0.11490348493190049).epsilon(1e-14));
    CHECK(bessel_j2(10.0) == doctest::Approx(0.25463031368512062).epsilon(1e-12));
    const double x = 1e-4;
    CHECK(bessel_j2(x) == doctest::Approx(x * x / 8.0).epsilon(1e-8));
}

TEST_CASE("Bessel three-term recurrence J1 + J3 = (4/x) J2") {
    for (double x : {0.5, 3.0, 7.9, 8.1, 15.0, 33.3, 49.0}) {
        const double lhs = detail::bessel_jn(1, x) + detail::bessel_jn(3, x);
        CHECK(std::abs(lhs - 4.0 / x * detail::bessel_jn(2, x)) <= 1e-12);
    }
}

TEST_CASE("series and Miller recurrence agree where both are accurate") {
    for (double x = 4.0; x <= 12.0; x += 0.5) {
        CHECK(std::abs(detail::bessel_jn_series(2, x) - detail::bessel_jn_miller(2, x)) <= 1e-12);
    }
}

TEST_CASE("J2 rejects arguments outside its domain") {
    CHECK_THROWS_AS(bessel_j2(50.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j2(-60.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j2(NAN), std::domain_error);
    CHECK_THROWS_AS(bessel_j2(INFINITY), std::domain_error);
}

TEST_CASE("RK4 integrates exponential decay to fourth order") {
    const OdeRhs rhs = [](double, std::span<const double> y) { return OdeState{-y[0]}; };
    auto err = [&](int steps) {
        const auto sol = rk4_integrate(rhs, {1.0}, 0.0, 2.0, steps);
        REQUIRE(sol.size() == static_cast<std::size_t>(steps) + 1);
        return std::abs(sol.back().y[0] - std::exp(-2.0));
    };
    CHECK(err(200) < 1e-9);
    const double ratio = err(20) / err(40);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("RK4 sample times hit the grid exactly") {
    const OdeRhs rhs = [](double t, std::span<const double>) { return OdeState{std::cos(t)}; };
    const auto sol = rk4_integrate(rhs, {0.0}, 0.0, 2.0 * kPi, 64);
    CHECK(sol.front().t == 0.0);
    CHECK(sol.back().t == 2.0 * kPi);
    for (std::size_t i = 1; i < sol.size(); ++i) CHECK(sol[i].t > sol[i - 1].t);
    CHECK(std::abs(sol[16].y[0] - 1.0) < 1e-6);
}

TEST_CASE("RK4 reports bad input and non-finite derivatives") {
    const OdeRhs ok = [](double, std::span<const double>) { return OdeState{1.0}; };
    CHECK_THROWS_AS(rk4_integrate(ok, {0.0}, 0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(rk4_integrate(ok, {0.0}, 1.0, 1.0, 10), std::invalid_argument);
    const OdeRhs blowup = [](double t, std::span<const double>) {
        return OdeState{t > 0.5 ? NAN : 1.0};
    };
    try {
        rk4_integrate(blowup, {0.0}, 0.0, 1.0, 10);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("t") != std::string::npos);
    }
}

namespace {

PlanarCurve parametric(int n, auto&& f) {
    PlanarCurve c;
    for (int i = 0; i <= n; ++i) c.points.push_back(f(2.0 * kPi * i / n));
    return c;
}

PlanarCurve circle(int n, double r = 1.0) {
    return parametric(n, [r](double t) { return Point2{r * std::cos(t), r * std::sin(t)}; });
}

// Lemniscate of Gerono: two lobes of area 2/3 meeting in a transversal crossing.
PlanarCurve figure_eight(int n) {
    return parametric(n, [](double t) { return Point2{std::cos(t), std::sin(t) * std::cos(t)}; });
}

// Limacon r = 1/2 + cos t: an inner loop nested inside the outer one.
PlanarCurve limacon(int n) {
    return parametric(n, [](double t) {
        const double r = 0.5 + std::cos(t);
        return Point2{r * std::cos(t), r * std::sin(t)};
    });
}

PlanarCurve rotated(const PlanarCurve& c, std::size_t shift) {
    std::vector<Point2> ring(c.points.begin(), c.points.end() - 1);
    std::rotate(ring.begin(), ring.begin() + static_cast<long>(shift), ring.end());
    ring.push_back(ring.front());
    return {ring, true};
}

PlanarCurve reversed(const PlanarCurve& c) {
    PlanarCurve r = c;
    std::reverse(r.points.begin(), r.points.end());
    return r;
}

}  // namespace

TEST_CASE("shoelace area of an inscribed polygon") {
    const int n = 720;
    const PlanarCurve c = circle(n);
    const double exact = n / 2.0 * std::sin(2.0 * kPi / n);
    CHECK(shoelace_signed_area(c.points) == doctest::Approx(exact).epsilon(1e-13));
    CHECK(shoelace_signed_area(reversed(c).points) == doctest::Approx(-exact).epsilon(1e-13));
}

TEST_CASE("simple loop has no crossings") {
    const LoopDecomposition d = decompose_loop(circle(500));
    CHECK(d.crossing_count() == 0);
    CHECK(d.sub_loops.size() == 1);
    CHECK(d.unsigned_area() == doctest::Approx(std::abs(d.raw_signed_area)));
}

TEST_CASE("figure eight splits into two opposite lobes") {
    const LoopDecomposition d = decompose_loop(figure_eight(2000));
    CHECK(d.transversal_count() == 1);
    CHECK(d.degenerate_count() == 0);
    REQUIRE(d.sub_loops.size() == 2);
    CHECK(d.sub_loops[0].signed_area * d.sub_loops[1].signed_area < 0.0);
    CHECK(std::abs(d.raw_signed_area) < 1e-12);
    CHECK(d.unsigned_area() == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
    CHECK(std::abs(d.crossings[0].point.u) < 1e-9);
    CHECK(std::abs(d.crossings[0].point.v) < 1e-9);
}

TEST_CASE("nested inner loop of a limacon") {
    const LoopDecomposition d = decompose_loop(limacon(4000));
    CHECK(d.transversal_count() == 1);
    REQUIRE(d.sub_loops.size() == 2);
    double sum = 0.0;
    for (const SubLoop& s : d.sub_loops) sum += s.signed_area;
    CHECK(sum == doctest::Approx(d.raw_signed_area).epsilon(1e-12));
    // (1/2) integral r^2 dt = 3 pi / 4 covers the inner loop region twice,
    // once inside the outer boundary and once as the inner loop itself
    const double inner = std::min(std::abs(d.sub_loops[0].signed_area), std::abs(d.sub_loops[1].signed_area));
    const double outer = std::max(std::abs(d.sub_loops[0].signed_area), std::abs(d.sub_loops[1].signed_area));
    CHECK(outer + inner == doctest::Approx(kPi * (0.25 + 0.5)).epsilon(1e-4));
}

TEST_CASE("unsigned area is invariant under rotation and reversal") {
    for (const PlanarCurve& c : {circle(301), figure_eight(1201), limacon(1501)}) {
        const double base = loop_area_unsigned(c);
        for (std::size_t shift : {1u, 37u, 250u, 299u}) {
            CHECK(loop_area_unsigned(rotated(c, shift)) == doctest::Approx(base).epsilon(1e-12));
        }
        CHECK(loop_area_unsigned(reversed(c)) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("sub-loop areas always add up to the raw shoelace area") {
    for (const PlanarCurve& c : {circle(301), figure_eight(1201), limacon(1501)}) {
        const LoopDecomposition d = decompose_loop(c);
        double sum = 0.0;
        for (const SubLoop& s : d.sub_loops) sum += s.signed_area;
        CHECK(sum == doctest::Approx(d.raw_signed_area).epsilon(1e-12));
    }
}

TEST_CASE("decompose_loop validates its input") {
    PlanarCurve open = circle(100);
    open.closed = false;
    CHECK_THROWS_AS(decompose_loop(open), std::invalid_argument);
    CHECK_THROWS_AS(decompose_loop(circle(5)), std::invalid_argument);
    PlanarCurve gap = circle(100);
    gap.points.back().u += 0.1;
    CHECK_THROWS_AS(decompose_loop(gap), std::invalid_argument);
    PlanarCurve nan = circle(100);
    nan.points[3].v = NAN;
    CHECK_THROWS_AS(decompose_loop(nan), std::invalid_argument);
    CHECK_THROWS_AS(decompose_loop(circle(100), 0.0), std::invalid_argument);
}
