#pragma once

namespace qmem {

/// Largest |x| accepted by bessel_j2.
inline constexpr double kBesselDomain = 50.0;

/// Bessel function of the first kind, order two, J2(x).
///
/// Ascending power series for |x| <= 8, Miller's normalized downward
/// recurrence beyond. Absolute error stays below 1e-12 on |x| < 50.
/// Throws std::domain_error for |x| >= 50 or non-finite x.
double bessel_j2(double x);

namespace detail {

/// J_n(x) for small non-negative integer order from the same machinery as
/// bessel_j2. Exposed for recurrence checks only.
double bessel_jn(int n, double x);

/// Ascending series for J_n(x); terms are summed until the next one drops
/// below 1e-16 of the partial sum.
double bessel_jn_series(int n, double x);

/// Miller backward recurrence normalized by J0 + 2 sum J_2k = 1.
double bessel_jn_miller(int n, double x);

}  // namespace detail
}  // namespace qmem
