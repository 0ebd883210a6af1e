#pragma once

#include <cmath>
#include <stdexcept>

#include "spinkron/complex_matrix.hpp"

namespace spinkron {

/// Spin quantum number stored as the integer 2j, so half-integer spins are
/// exact and the matrix dimension 2j+1 is plain integer arithmetic.
class SpinQuantum {
public:
    explicit SpinQuantum(int two_j) : two_j_(two_j) {
        if (two_j < 0)
            throw std::invalid_argument("SpinQuantum: 2j must be >= 0");
    }

    int two_j() const { return two_j_; }
    std::size_t dim() const { return static_cast<std::size_t>(two_j_) + 1; }
    double j() const { return 0.5 * two_j_; }

    friend bool operator==(SpinQuantum a, SpinQuantum b) { return a.two_j_ == b.two_j_; }

private:
    int two_j_;
};

struct SpinMatrices {
    ComplexMatrix jx;
    ComplexMatrix jy;
    ComplexMatrix jz;
};

/// Angular-momentum matrices J_x, J_y, J_z for spin j, in units of hbar = 1.
///
/// BASIS CONVENTION: rows/columns are ordered by *descending* magnetic
/// quantum number, row 0 <-> m = +j, row 2j <-> m = -j, so J_z comes out as
/// diag(j, j-1, ..., -j). The opposite (ascending) convention is equally
/// common in the literature; everything downstream of this library depends
/// on the descending order.
///
/// Built from the raising operator, <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)),
/// via J_x = (J+ + J-)/2 and J_y = (J+ - J-)/(2i). The radicand is computed
/// in integer arithmetic (4*[j(j+1) - m(m+1)] = 2j(2j+2) - 2m(2m+2)) so the
/// entries are correctly rounded square roots.
inline SpinMatrices spin_matrices(SpinQuantum s) {
    const int two_j = s.two_j();
    const std::size_t d = s.dim();
    ComplexMatrix jx(d), jy(d), jz(d);

    for (std::size_t k = 0; k < d; ++k) {
        const int two_m = two_j - 2 * static_cast<int>(k);
        jz.set(k, k, Complex{0.5 * two_m, 0.0});
    }
    // J+ has its only nonzero entries one place above the diagonal:
    // (J+)[k, k+1] couples m = j-k-1 to m = j-k.
    for (std::size_t k = 0; k + 1 < d; ++k) {
        const int two_m = two_j - 2 * (static_cast<int>(k) + 1);
        const int radicand4 = two_j * (two_j + 2) - two_m * (two_m + 2);
        const double v = 0.5 * std::sqrt(static_cast<double>(radicand4));
        jx.set(k, k + 1, Complex{0.5 * v, 0.0});
        jx.set(k + 1, k, Complex{0.5 * v, 0.0});
        jy.set(k, k + 1, Complex{0.0, -0.5 * v});
        jy.set(k + 1, k, Complex{0.0, 0.5 * v});
    }
    return SpinMatrices{std::move(jx), std::move(jy), std::move(jz)};
}

}  // namespace spinkron
