#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmem/optics.hpp"

namespace qmem {

/// Quadrature convention used throughout: x = (a + a^dagger)/sqrt(2),
/// so the vacuum has <x^2> = 1/2 and a coherent state |alpha> has
/// <x> = sqrt(2) Re(alpha).
inline constexpr double kVacuumVariance = 0.5;

enum class Mode { first = 1, second = 2 };

// ---------------------------------------------------------------------------
// Coherent backend

struct CoherentPair {
    cplx alpha;  // mode 1
    cplx beta;   // mode 2
};

/// Coherent amplitudes after the splitter: (alpha, beta) -> M (alpha, beta).
/// Products of coherent states stay products; photon number |alpha|^2 +
/// |beta|^2 is conserved.
CoherentPair apply_bs_coherent(const CoherentPair& pair, const BeamSplitterSpec& spec);

// ---------------------------------------------------------------------------
// Gaussian backend

/// Two-mode Gaussian state in quadrature ordering (x1, p1, x2, p2).
struct GaussianState {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    Eigen::Matrix4d cov = 0.5 * Eigen::Matrix4d::Identity();
};

GaussianState gaussian_vacuum();

/// Displaced vacuum in both modes.
GaussianState gaussian_coherent(cplx alpha, cplx beta);

/// Mode 1 squeezed vacuum with zeta = r e^{i phi}, mode 2 vacuum. For phi = 0
/// the x quadrature is squeezed: var_x = e^{-2r}/2. Throws for r < 0.
GaussianState squeezed_with_vacuum(double r, double phi);

/// Throws std::invalid_argument unless cov is symmetric (1e-12) and obeys
/// cov + (i/2) Omega >= 0.
void validate_gaussian(const GaussianState& state);

/// Real 4x4 symplectic matrix of the splitter on (x1, p1, x2, p2).
Eigen::Matrix4d bs_symplectic(const BeamSplitterSpec& spec);

GaussianState apply_bs_gaussian(const GaussianState& state, const BeamSplitterSpec& spec);

struct GaussianObservables {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double mean_n = 0.0;
};

GaussianObservables gaussian_observables(const GaussianState& state, Mode mode);

/// det(2 cov); equals 1 for pure states.
double gaussian_purity_det(const GaussianState& state);

/// Entropy of entanglement between the two modes, in nats, from the
/// symplectic eigenvalue nu = sqrt(det sigma_1) of the mode-1 block.
/// Throws std::invalid_argument if the global state is not pure
/// (|det(2 cov) - 1| > 1e-6).
double entanglement_entropy_gaussian(const GaussianState& state);

// ---------------------------------------------------------------------------
// Truncated Fock backend

/// Pure two-mode state on the grid n1, n2 <= cutoff.
class FockTwoMode {
public:
    explicit FockTwoMode(int cutoff);

    /// Product of two single-mode amplitude vectors (each truncated to the
    /// cutoff; missing entries are zero).
    static FockTwoMode product(const std::vector<cplx>& mode1, const std::vector<cplx>& mode2,
                               int cutoff);

    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }

    cplx& amp(int n1, int n2) { return amps_[index(n1, n2)]; }
    const cplx& amp(int n1, int n2) const { return amps_[index(n1, n2)]; }

    double norm_squared() const;

    /// Amplitudes as a dim x dim matrix C(n1, n2).
    Eigen::MatrixXcd as_matrix() const;

private:
    std::size_t index(int n1, int n2) const;

    int cutoff_;
    std::vector<cplx> amps_;
};

/// e^{i alpha_phase} cos(phi) |0> + sin(phi) |1> in mode 1, vacuum in mode 2.
/// Throws std::invalid_argument for cutoff < 1.
FockTwoMode fock_qubit_input(double alpha_phase, double phi, int cutoff);

/// Exact splitter action, block by block in total photon number: a photon
/// created in mode j leaves in the superposition given by column j of
/// bs_matrix. States supported on n1 + n2 <= cutoff map without loss;
/// components that would land outside the grid are dropped.
FockTwoMode apply_bs_fock(const FockTwoMode& state, const BeamSplitterSpec& spec);

struct FockObservables {
    double mean_x = 0.0;
    double mean_n = 0.0;
};

FockObservables fock_observables(const FockTwoMode& state, Mode mode);

/// Von Neumann entropy (nats) of the mode-1 reduced state. Throws
/// std::invalid_argument if |norm - 1| > 1e-8.
double entanglement_entropy_fock(const FockTwoMode& state);

struct PostSelection {
    std::vector<cplx> conditional;  // normalized mode-1 amplitudes
    double probability = 0.0;
};

/// Projects mode 2 onto |outcome>. Throws std::invalid_argument for an
/// outcome beyond the cutoff and std::domain_error for a zero-probability
/// outcome.
PostSelection postselect_mode2(const FockTwoMode& state, int outcome);

}  // namespace qmem
