#include "qmem/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmem {
namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kRelCutoff = 1e-16;
constexpr int kMaxSeriesTerms = 500;

double reflect(int n, double x, double value_at_abs) {
    return (x < 0.0 && (n % 2 != 0)) ? -value_at_abs : value_at_abs;
}

}  // namespace

namespace detail {

double bessel_jn_series(int n, double x) {
    if (n < 0) throw std::invalid_argument("bessel_jn_series: negative order");
    const double ax = std::abs(x);
    if (ax == 0.0) return n == 0 ? 1.0 : 0.0;

    const double half = 0.5 * ax;
    // leading term (x/2)^n / n!
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= half / i;

    const double q = -half * half;
    double sum = term;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        if (std::abs(term) < kRelCutoff * std::abs(sum)) break;
        sum += term;
    }
    return reflect(n, x, sum);
}

double bessel_jn_miller(int n, double x) {
    if (n < 0) throw std::invalid_argument("bessel_jn_miller: negative order");
    const double ax = std::abs(x);
    if (ax == 0.0) return n == 0 ? 1.0 : 0.0;

    const double top = std::max(static_cast<double>(n), ax);
    int start = static_cast<int>(top + 15.0 + std::sqrt(40.0 * top));
    start += start % 2;  // even, so the normalization sum picks up J_0, J_2, ...

    const double two_over_x = 2.0 / ax;
    double next = 0.0;   // J_{k+1}
    double curr = 1e-300;  // J_k, arbitrary seed
    double wanted = 0.0;
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * curr - next;  // J_{k-1}
        next = curr;
        curr = prev;
        if (std::abs(curr) > 1e250) {
            curr *= 1e-250;
            next *= 1e-250;
            wanted *= 1e-250;
            norm *= 1e-250;
        }
        const int order = k - 1;
        if (order == n) wanted = curr;
        if (order > 0 && order % 2 == 0) norm += 2.0 * curr;
    }
    norm += curr;  // J_0
    return reflect(n, x, wanted / norm);
}

double bessel_jn(int n, double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_jn: non-finite argument");
    return std::abs(x) <= kSeriesLimit ? bessel_jn_series(n, x) : bessel_jn_miller(n, x);
}

}  // namespace detail

double bessel_j2(double x) {
    if (!std::isfinite(x) || std::abs(x) >= kBesselDomain) {
        throw std::domain_error("bessel_j2: |x| must be < 50, got " + std::to_string(x));
    }
    return detail::bessel_jn(2, x);
}

}  // namespace qmem
