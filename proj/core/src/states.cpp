#include "qmem/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qmem {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUncertaintyTol = 1e-10;
constexpr double kPurityTol = 1e-6;
constexpr double kNormTol = 1e-8;

int mode_offset(Mode mode) { return mode == Mode::first ? 0 : 2; }

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

}  // namespace

CoherentPair apply_bs_coherent(const CoherentPair& pair, const BeamSplitterSpec& spec) {
    const ComplexMat2 m = bs_matrix(spec);
    return {m(0, 0) * pair.alpha + m(0, 1) * pair.beta, m(1, 0) * pair.alpha + m(1, 1) * pair.beta};
}

GaussianState gaussian_vacuum() { return {}; }

GaussianState gaussian_coherent(cplx alpha, cplx beta) {
    GaussianState s;
    s.mean << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag(),
        std::sqrt(2.0) * beta.real(), std::sqrt(2.0) * beta.imag();
    return s;
}

GaussianState squeezed_with_vacuum(double r, double phi) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("squeezed_with_vacuum: r must be finite and >= 0");
    }
    // a -> a cosh r - e^{i phi} a^dagger sinh r, written on (x, p)
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    Eigen::Matrix2d sq;
    sq << ch - sh * std::cos(phi), -sh * std::sin(phi), -sh * std::sin(phi), ch + sh * std::cos(phi);
    GaussianState s;
    s.cov.topLeftCorner<2, 2>() = 0.5 * sq * sq.transpose();
    return s;
}

void validate_gaussian(const GaussianState& state) {
    if (!state.mean.allFinite() || !state.cov.allFinite()) {
        throw std::invalid_argument("gaussian state: non-finite entries");
    }
    if ((state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
        throw std::invalid_argument("gaussian state: covariance not symmetric");
    }
    const Eigen::Matrix4cd test =
        state.cov.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form().cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(test, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kUncertaintyTol) {
        throw std::invalid_argument("gaussian state: violates the uncertainty relation");
    }
}

Eigen::Matrix4d bs_symplectic(const BeamSplitterSpec& spec) {
    const ComplexMat2 m = bs_matrix(spec);
    Eigen::Matrix4d s;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double re = m(i, j).real();
            const double im = m(i, j).imag();
            s.block<2, 2>(2 * i, 2 * j) << re, -im, im, re;
        }
    }
    return s;
}

GaussianState apply_bs_gaussian(const GaussianState& state, const BeamSplitterSpec& spec) {
    validate_gaussian(state);
    const Eigen::Matrix4d s = bs_symplectic(spec);
    GaussianState out;
    out.mean = s * state.mean;
    out.cov = s * state.cov * s.transpose();
    out.cov = 0.5 * (out.cov + out.cov.transpose());
    return out;
}

GaussianObservables gaussian_observables(const GaussianState& state, Mode mode) {
    const int k = mode_offset(mode);
    GaussianObservables o;
    o.mean_x = state.mean(k);
    o.mean_p = state.mean(k + 1);
    o.var_x = state.cov(k, k);
    o.var_p = state.cov(k + 1, k + 1);
    o.mean_n = 0.5 * (o.var_x + o.var_p - 1.0) + 0.5 * (o.mean_x * o.mean_x + o.mean_p * o.mean_p);
    return o;
}

double gaussian_purity_det(const GaussianState& state) { return (2.0 * state.cov).determinant(); }

double entanglement_entropy_gaussian(const GaussianState& state) {
    const double purity = gaussian_purity_det(state);
    if (std::abs(purity - 1.0) > kPurityTol) {
        throw std::invalid_argument("entanglement_entropy_gaussian: global state is mixed (det(2 cov) = " +
                                    std::to_string(purity) + ")");
    }
    const double nu = std::sqrt(std::max(0.0, state.cov.topLeftCorner<2, 2>().determinant()));
    const double up = nu + 0.5;
    const double down = nu - 0.5;
    double s = up * std::log(up);
    if (down > 0.0) s -= down * std::log(down);
    return std::max(0.0, s);
}

// ---------------------------------------------------------------------------

FockTwoMode::FockTwoMode(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1) throw std::invalid_argument("FockTwoMode: cutoff must be >= 1");
    amps_.assign(static_cast<std::size_t>(dim()) * static_cast<std::size_t>(dim()), cplx{});
}

std::size_t FockTwoMode::index(int n1, int n2) const {
    if (n1 < 0 || n2 < 0 || n1 > cutoff_ || n2 > cutoff_) {
        throw std::out_of_range("FockTwoMode: index beyond cutoff");
    }
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(n2);
}

FockTwoMode FockTwoMode::product(const std::vector<cplx>& mode1, const std::vector<cplx>& mode2,
                                 int cutoff) {
    FockTwoMode s(cutoff);
    const auto lim1 = std::min<std::size_t>(mode1.size(), static_cast<std::size_t>(s.dim()));
    const auto lim2 = std::min<std::size_t>(mode2.size(), static_cast<std::size_t>(s.dim()));
    for (std::size_t i = 0; i < lim1; ++i) {
        for (std::size_t j = 0; j < lim2; ++j) {
            s.amp(static_cast<int>(i), static_cast<int>(j)) = mode1[i] * mode2[j];
        }
    }
    return s;
}

double FockTwoMode::norm_squared() const {
    double sum = 0.0;
    for (const auto& z : amps_) sum += std::norm(z);
    return sum;
}

Eigen::MatrixXcd FockTwoMode::as_matrix() const {
    Eigen::MatrixXcd c(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        for (int j = 0; j < dim(); ++j) c(i, j) = amp(i, j);
    }
    return c;
}

FockTwoMode fock_qubit_input(double alpha_phase, double phi, int cutoff) {
    FockTwoMode s(cutoff);
    s.amp(0, 0) = std::polar(1.0, alpha_phase) * std::cos(phi);
    s.amp(1, 0) = std::sin(phi);
    return s;
}

FockTwoMode apply_bs_fock(const FockTwoMode& state, const BeamSplitterSpec& spec) {
    const ComplexMat2 m = bs_matrix(spec);
    const int cut = state.cutoff();
    FockTwoMode out(cut);

    // Apply (m(0,j) a1^dag + m(1,j) a2^dag) to a block vector indexed by the
    // mode-1 photon count k at total photon number `total`.
    auto create = [&m](const std::vector<cplx>& v, int total, int j) {
        std::vector<cplx> w(v.size() + 1, cplx{});
        for (int k = 0; k <= total; ++k) {
            const cplx c = v[static_cast<std::size_t>(k)];
            if (c == cplx{}) continue;
            w[static_cast<std::size_t>(k + 1)] += m(0, j) * std::sqrt(static_cast<double>(k + 1)) * c;
            w[static_cast<std::size_t>(k)] += m(1, j) * std::sqrt(static_cast<double>(total - k + 1)) * c;
        }
        return w;
    };

    // column[n1] = U |n1, n2> for the current n2, kept as block vectors.
    std::vector<cplx> col0{cplx{1.0, 0.0}};  // U |0, 0>
    for (int n2 = 0; n2 <= cut; ++n2) {
        if (n2 > 0) {
            col0 = create(col0, n2 - 1, 1);
            for (auto& z : col0) z /= std::sqrt(static_cast<double>(n2));
        }
        std::vector<cplx> col = col0;
        for (int n1 = 0; n1 <= cut; ++n1) {
            if (n1 > 0) {
                col = create(col, n1 - 1 + n2, 0);
                for (auto& z : col) z /= std::sqrt(static_cast<double>(n1));
            }
            const cplx c = state.amp(n1, n2);
            if (c == cplx{}) continue;
            const int total = n1 + n2;
            for (int k = 0; k <= total; ++k) {
                if (k > cut || total - k > cut) continue;
                out.amp(k, total - k) += c * col[static_cast<std::size_t>(k)];
            }
        }
    }
    return out;
}

FockObservables fock_observables(const FockTwoMode& state, Mode mode) {
    const bool first = mode == Mode::first;
    cplx lowering{};
    double mean_n = 0.0;
    for (int n1 = 0; n1 <= state.cutoff(); ++n1) {
        for (int n2 = 0; n2 <= state.cutoff(); ++n2) {
            const cplx c = state.amp(n1, n2);
            const int n = first ? n1 : n2;
            mean_n += n * std::norm(c);
            if (n == 0) continue;
            const cplx lower = first ? state.amp(n1 - 1, n2) : state.amp(n1, n2 - 1);
            lowering += std::conj(lower) * std::sqrt(static_cast<double>(n)) * c;
        }
    }
    return {std::sqrt(2.0) * lowering.real(), mean_n};
}

double entanglement_entropy_fock(const FockTwoMode& state) {
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw std::invalid_argument("entanglement_entropy_fock: state not normalized (norm^2 = " +
                                    std::to_string(norm) + ")");
    }
    const Eigen::MatrixXcd c = state.as_matrix();
    const Eigen::MatrixXcd rho = c * c.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    }
    return std::max(0.0, s);
}

PostSelection postselect_mode2(const FockTwoMode& state, int outcome) {
    if (outcome < 0 || outcome > state.cutoff()) {
        throw std::invalid_argument("postselect_mode2: outcome beyond cutoff");
    }
    PostSelection out;
    out.conditional.resize(static_cast<std::size_t>(state.dim()));
    for (int n1 = 0; n1 <= state.cutoff(); ++n1) {
        const cplx c = state.amp(n1, outcome);
        out.conditional[static_cast<std::size_t>(n1)] = c;
        out.probability += std::norm(c);
    }
    if (!(out.probability > 0.0)) {
        throw std::domain_error("postselect_mode2: outcome " + std::to_string(outcome) +
                                " has zero probability");
    }
    const double scale = 1.0 / std::sqrt(out.probability);
    for (auto& z : out.conditional) z *= scale;
    return out;
}

}  // namespace qmem
