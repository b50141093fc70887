#include "qmem/verify/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace qmem::oracle {

long double bessel_jn_series_ld(int n, long double x) {
    if (n < 0) throw std::invalid_argument("bessel_jn_series_ld: negative order");
    const long double half = x / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / static_cast<long double>(k);
    long double sum = term;
    const long double q = -half * half;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<long double>(k) * static_cast<long double>(k + n));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > std::fabs(x)) break;
    }
    return sum;
}

std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff) {
    std::vector<cplx> c(static_cast<std::size_t>(cutoff) + 1);
    c[0] = std::exp(-std::norm(alpha) / 2.0);
    for (int n = 1; n <= cutoff; ++n) {
        c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(double(n));
    }
    return c;
}

std::vector<cplx> squeezed_amplitudes(double r, double phi, int cutoff) {
    std::vector<cplx> c(static_cast<std::size_t>(cutoff) + 1, cplx{});
    const cplx ratio = -std::polar(std::tanh(r), phi);
    cplx amp = 1.0 / std::sqrt(std::cosh(r));
    for (int m = 0; 2 * m <= cutoff; ++m) {
        c[static_cast<std::size_t>(2 * m)] = amp;
        // c_{2m+2} / c_{2m} = ratio * sqrt((2m+1)(2m+2)) / (2 (m+1))
        amp *= ratio * std::sqrt(double(2 * m + 1) * double(2 * m + 2)) / (2.0 * (m + 1));
    }
    return c;
}

Eigen::MatrixXcd dense_bs_unitary(const BeamSplitterSpec& spec, int cutoff) {
    const int d = cutoff + 1;
    const int dim = d * d;
    auto idx = [d](int n1, int n2) { return n1 * d + n2; };

    Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(dim, dim);  // a1^dag a2
    Eigen::VectorXd n1(dim), n2(dim);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            n1(idx(a, b)) = a;
            n2(idx(a, b)) = b;
            if (b >= 1 && a + 1 < d) hop(idx(a + 1, b - 1), idx(a, b)) = std::sqrt(double(a + 1) * b);
        }
    }
    const Eigen::MatrixXcd generator = hop - hop.adjoint();
    const Eigen::MatrixXcd rotation = (cplx(spec.theta / 2.0) * generator).exp();

    auto phases = [&](double chi1, double chi2) {
        Eigen::VectorXcd diag(dim);
        for (int i = 0; i < dim; ++i) diag(i) = std::polar(1.0, chi1 * n1(i) + chi2 * n2(i));
        return diag.asDiagonal().toDenseMatrix();
    };
    return phases(spec.phi_t, -spec.phi_r) * rotation * phases(0.0, spec.phi_r - spec.phi_t);
}

std::array<double, 2> hermitian2_eigenvalues(double a, cplx b, double d) {
    const double mean = (a + d) / 2.0;
    const double gap = std::sqrt((a - d) * (a - d) / 4.0 + std::norm(b));
    return {mean - gap, mean + gap};
}

double shannon_nats(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

}  // namespace qmem::oracle
