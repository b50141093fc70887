#pragma once

// Independent reference computations. None of these share code paths with
// the library routines they are used to check.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "qmem/optics.hpp"

namespace qmem::oracle {

/// J_n(x) from the ascending series in long double, summed to convergence.
long double bessel_jn_series_ld(int n, long double x);

/// Fock amplitudes of |alpha>, n <= cutoff (not renormalized).
std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff);

/// Fock amplitudes of the squeezed vacuum S(r e^{i phi})|0>, n <= cutoff,
/// with the convention a -> a cosh r - e^{i phi} a^dagger sinh r.
std::vector<cplx> squeezed_amplitudes(double r, double phi, int cutoff);

/// Beam-splitter unitary on the truncated two-mode space, built as
/// exp(i phi_t n1) exp(i(-phi_r) n2) exp(theta/2 (a1^dag a2 - a2^dag a1))
/// exp(i(phi_r - phi_t) n2) with dense matrix exponentials. Basis index
/// n1 * (cutoff + 1) + n2.
Eigen::MatrixXcd dense_bs_unitary(const BeamSplitterSpec& spec, int cutoff);

/// Eigenvalues of a 2x2 Hermitian matrix [[a, b], [conj(b), d]], ascending.
std::array<double, 2> hermitian2_eigenvalues(double a, cplx b, double d);

/// -sum p ln p with 0 ln 0 = 0.
double shannon_nats(const std::vector<double>& p);

}  // namespace qmem::oracle
