#include "qmem/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmem {
namespace {

cplx phase(double angle) { return std::polar(1.0, angle); }

}  // namespace

BeamSplitterSpec MZConfig::base() const { return {std::numbers::pi / 2.0, phi_t, phi_r}; }

ComplexMat2 bs_matrix(const BeamSplitterSpec& spec) {
    const double c = std::cos(spec.theta / 2.0);
    const double s = std::sin(spec.theta / 2.0);
    return {phase(spec.phi_t) * c, phase(spec.phi_r) * s, -phase(-spec.phi_r) * s,
            phase(-spec.phi_t) * c};
}

ComplexMat2 retarder_matrix(double theta) { return ComplexMat2::diagonal(1.0, phase(theta)); }

double MZEffective::identity_defect() const {
    return max_abs_diff(matrix, phase(global_phase) * bs_matrix(effective));
}

MZEffective mz_effective(const MZConfig& config) {
    const ComplexMat2 half = bs_matrix(config.base());
    MZEffective out;
    out.matrix = half * retarder_matrix(config.retarder_theta) * half;
    out.effective = {std::numbers::pi + config.retarder_theta - 2.0 * config.phi_t,
                     config.phi_t + std::numbers::pi / 2.0, config.phi_r};
    out.global_phase = config.retarder_theta / 2.0;
    return out;
}

bool is_unitary(const ComplexMat2& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_unitary: tol must be > 0");
    if (!m.is_finite()) return false;
    return max_abs_diff(m * m.adjoint(), ComplexMat2::identity()) <= tol;
}

}  // namespace qmem
