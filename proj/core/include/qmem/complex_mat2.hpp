#pragma once

#include <array>
#include <complex>

namespace qmem {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row-major. Used for two-mode linear-optical
/// transforms; unitarity is checked explicitly, never assumed.
struct ComplexMat2 {
    std::array<cplx, 4> m{};

    constexpr ComplexMat2() = default;
    constexpr ComplexMat2(cplx a00, cplx a01, cplx a10, cplx a11) : m{a00, a01, a10, a11} {}

    static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static ComplexMat2 diagonal(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }

    cplx& operator()(int row, int col) { return m[static_cast<std::size_t>(2 * row + col)]; }
    const cplx& operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

    ComplexMat2 adjoint() const;
    cplx det() const;
    bool is_finite() const;

    friend ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b);
    friend ComplexMat2 operator*(cplx s, const ComplexMat2& a);
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b);

}  // namespace qmem
