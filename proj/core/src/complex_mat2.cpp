#include "qmem/complex_mat2.hpp"

#include <algorithm>
#include <cmath>

namespace qmem {

ComplexMat2 ComplexMat2::adjoint() const {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

cplx ComplexMat2::det() const { return m[0] * m[3] - m[1] * m[2]; }

bool ComplexMat2::is_finite() const {
    return std::all_of(m.begin(), m.end(), [](const cplx& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b) {
    ComplexMat2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        }
    }
    return r;
}

ComplexMat2 operator*(cplx s, const ComplexMat2& a) {
    ComplexMat2 r = a;
    for (auto& z : r.m) z *= s;
    return r;
}

double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    return worst;
}

}  // namespace qmem
