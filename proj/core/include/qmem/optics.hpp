#pragma once

#include "qmem/complex_mat2.hpp"

namespace qmem {

/// Two-mode beam splitter: mixing angle and transmitted/reflected phases, in
/// radians. Angles are stored as given, never reduced mod 2*pi, because the
/// feedback loop winds theta continuously.
struct BeamSplitterSpec {
    double theta = 0.0;
    double phi_t = 0.0;
    double phi_r = 0.0;

    /// Single-phase form B(theta, phi) with phi = phi_t - phi_r.
    double phase_difference() const { return phi_t - phi_r; }
};

/// Mach-Zehnder arrangement: two identical 50:50 splitters around a phase
/// retarder on the second internal path.
struct MZConfig {
    double retarder_theta = 0.0;
    double phi_t = 0.0;
    double phi_r = 0.0;

    BeamSplitterSpec base() const;
};

/// Mode-transform matrix
///   [[ e^{i phi_t} cos(theta/2),  e^{i phi_r} sin(theta/2)],
///    [-e^{-i phi_r} sin(theta/2), e^{-i phi_t} cos(theta/2)]].
///
/// Acts on mode amplitudes (column vectors): a single photon in mode j ends
/// up in superposition given by column j.
ComplexMat2 bs_matrix(const BeamSplitterSpec& spec);

/// diag(1, e^{i theta}).
ComplexMat2 retarder_matrix(double theta);

struct MZEffective {
    BeamSplitterSpec effective;
    double global_phase = 0.0;
    ComplexMat2 matrix;  // numeric product bs * retarder * bs

    /// Max entrywise |matrix - e^{i global_phase} bs_matrix(effective)|.
    double identity_defect() const;
};

/// Composes the interferometer numerically and reports the equivalent
/// tunable splitter: Theta = pi + theta - 2 phi_t, Phi_T = phi_t + pi/2,
/// Phi_R = phi_r, global phase theta/2.
MZEffective mz_effective(const MZConfig& config);

/// True iff max |(m m^dagger) - I| <= tol. Throws std::invalid_argument for tol <= 0.
bool is_unitary(const ComplexMat2& m, double tol);

}  // namespace qmem
