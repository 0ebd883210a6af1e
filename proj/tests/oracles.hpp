#pragma once

// Independent closed-form references for the test suites. Everything here
// is written out by hand (explicit matrix entries, factored characteristic
// polynomials, analytic eigenvalues) and deliberately never calls kron(),
// spin_matrices() or the builders, so agreement with the library is
// evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinkron/complex_matrix.hpp"

namespace oracles {

using spinkron::Complex;
using spinkron::ComplexMatrix;

inline const Complex I{0.0, 1.0};

// --- spin matrices ----------------------------------------------------------

// spin-1/2: half the Pauli matrices
inline ComplexMatrix spin_half_x() {
    return ComplexMatrix::from_rows({{0.0, 0.5}, {0.5, 0.0}});
}
inline ComplexMatrix spin_half_y() {
    return ComplexMatrix::from_rows({{0.0, -0.5 * I}, {0.5 * I, 0.0}});
}
inline ComplexMatrix spin_half_z() {
    return ComplexMatrix::from_rows({{0.5, 0.0}, {0.0, -0.5}});
}

// spin-3/2, basis ordered m = 3/2, 1/2, -1/2, -3/2
inline ComplexMatrix spin_three_half_x() {
    const double r = 0.5 * std::sqrt(3.0);
    return ComplexMatrix::from_rows({{0.0, r, 0.0, 0.0},
                                     {r, 0.0, 1.0, 0.0},
                                     {0.0, 1.0, 0.0, r},
                                     {0.0, 0.0, r, 0.0}});
}
inline ComplexMatrix spin_three_half_y() {
    const Complex r = -0.5 * std::sqrt(3.0) * I;  // 1/(2i) * sqrt(3)
    const Complex one = -I;                       // 1/(2i) * 2
    return ComplexMatrix::from_rows({{0.0, r, 0.0, 0.0},
                                     {-r, 0.0, one, 0.0},
                                     {0.0, -one, 0.0, r},
                                     {0.0, 0.0, -r, 0.0}});
}
inline ComplexMatrix spin_three_half_z() {
    return ComplexMatrix::from_rows({{1.5, 0.0, 0.0, 0.0},
                                     {0.0, 0.5, 0.0, 0.0},
                                     {0.0, 0.0, -0.5, 0.0},
                                     {0.0, 0.0, 0.0, -1.5}});
}

// --- isotropic model, explicit matrices -------------------------------------

// I = 1/2: (1/4) of the tabulated 4x4
inline ComplexMatrix breit_rabi_half(double A, double B, double a, double b) {
    const double q = 0.25;
    return ComplexMatrix::from_rows(
        {{q * (A + 2.0 * B * (a + b)), 0.0, 0.0, 0.0},
         {0.0, q * (2.0 * B * (b - a) - A), q * 2.0 * A, 0.0},
         {0.0, q * 2.0 * A, q * (2.0 * B * (a - b) - A), 0.0},
         {0.0, 0.0, 0.0, q * (A - 2.0 * B * (a + b))}});
}

// I = 3/2: (1/4) of the tabulated 8x8
inline ComplexMatrix breit_rabi_three_half(double A, double B, double a, double b) {
    const double q = 0.25;
    const double s3 = std::sqrt(3.0);
    ComplexMatrix h(8);
    h.set(0, 0, q * (3.0 * A + 2.0 * B * (a + 3.0 * b)));
    h.set(1, 1, q * (2.0 * B * (3.0 * b - a) - 3.0 * A));
    h.set(2, 2, q * (A + 2.0 * B * (a + b)));
    h.set(3, 3, q * (2.0 * B * (b - a) - A));
    h.set(4, 4, q * (2.0 * B * (a - b) - A));
    h.set(5, 5, q * (A - 2.0 * B * (a + b)));
    h.set(6, 6, q * (2.0 * B * (a - 3.0 * b) - 3.0 * A));
    h.set(7, 7, q * (3.0 * A - 2.0 * B * (a + 3.0 * b)));
    h.set(1, 2, q * 2.0 * s3 * A);
    h.set(2, 1, q * 2.0 * s3 * A);
    h.set(3, 4, q * 4.0 * A);
    h.set(4, 3, q * 4.0 * A);
    h.set(5, 6, q * 2.0 * s3 * A);
    h.set(6, 5, q * 2.0 * s3 * A);
    return h;
}

// --- anisotropic model, explicit 4x4 ----------------------------------------

// Both spins 1/2; only the four bilinear coefficients c11, c12, c13, c23
// enter. (1/4) of the tabulated Hermitian matrix.
inline ComplexMatrix anisotropic_half(double a1, double a2, double a3, double b1, double b2,
                                      double b3, double c11, double c12, double c13,
                                      double c23) {
    const double q = 0.25;
    ComplexMatrix h(4);
    h.set(0, 0, q * 2.0 * (a3 + b3));
    h.set(0, 1, q * (2.0 * b1 - 2.0 * I * b2));
    h.set(0, 2, q * (2.0 * a1 + c13 - I * (2.0 * a2 + c23)));
    h.set(0, 3, q * (c11 - I * c12));
    h.set(1, 0, q * (2.0 * b1 + 2.0 * I * b2));
    h.set(1, 1, q * 2.0 * (a3 - b3));
    h.set(1, 2, q * (c11 + I * c12));
    h.set(1, 3, q * (2.0 * a1 - c13 + I * (c23 - 2.0 * a2)));
    h.set(2, 0, q * (2.0 * a1 + c13 + I * (2.0 * a2 + c23)));
    h.set(2, 1, q * (c11 - I * c12));
    h.set(2, 2, q * 2.0 * (b3 - a3));
    h.set(2, 3, q * (2.0 * b1 - 2.0 * I * b2));
    h.set(3, 0, q * (c11 + I * c12));
    h.set(3, 1, q * (2.0 * a1 - c13 + I * (2.0 * a2 - c23)));
    h.set(3, 2, q * (2.0 * b1 + 2.0 * I * b2));
    h.set(3, 3, q * (-2.0) * (a3 + b3));
    return h;
}

// --- factored characteristic polynomials ------------------------------------

// det(H - E*1) of the I=1/2 model as the product of two linear factors and
// one quadratic factor, prefactor 1/256.
inline double char_poly_product_half(double E, double A, double B, double a, double b) {
    const double f1 = 4.0 * E - A - 2.0 * B * (a + b);
    const double f2 = 4.0 * E - A + 2.0 * B * (a + b);
    const double f3 = 16.0 * E * E + 8.0 * A * E - 3.0 * A * A -
                      4.0 * B * B * (a - b) * (a - b);
    return f1 * f2 * f3 / 256.0;
}

// det(H - E*1) of the I=3/2 model: two linear and three quadratic factors,
// prefactor 1/65536.
inline double char_poly_product_three_half(double E, double A, double B, double a, double b) {
    const double f1 = 4.0 * E - 3.0 * A - 2.0 * B * (a + 3.0 * b);
    const double f2 = 4.0 * E - 3.0 * A + 2.0 * B * (a + 3.0 * b);
    const double f3 = 16.0 * E * E + 8.0 * A * E - 15.0 * A * A -
                      4.0 * B * B * (a - b) * (a - b);
    const double f4 = 16.0 * E * E + 8.0 * E * (A + 4.0 * B * b) - 15.0 * A * A +
                      4.0 * B * (2.0 * A * a + B * (a + b) * (3.0 * b - a));
    const double f5 = 16.0 * E * E + 8.0 * E * (A - 4.0 * B * b) - 15.0 * A * A -
                      4.0 * B * (2.0 * A * a + B * (a + b) * (a - 3.0 * b));
    return f1 * f2 * f3 * f4 * f5 / 65536.0;
}

// --- analytic spectra ---------------------------------------------------

// The four I=1/2 eigenvalues: two linear roots and the quadratic-formula
// pair, returned ascending.
inline std::vector<double> breit_rabi_half_eigenvalues(double A, double B, double a, double b) {
    const double root = std::sqrt(A * A + B * B * (a - b) * (a - b));
    std::vector<double> ev{0.25 * (A + 2.0 * B * (a + b)), 0.25 * (A - 2.0 * B * (a + b)),
                           -0.25 * A + 0.5 * root, -0.25 * A - 0.5 * root};
    std::sort(ev.begin(), ev.end());
    return ev;
}

// --- scalar root finding ------------------------------------------------

// Bisection on [lo, hi]; requires a sign change. Used as the independent
// locator for level-crossing fields.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-12) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("bisect: no sign change in bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Scan [lo, hi] on a fine grid for a sign change of f, then bisect. Returns
// false if f never changes sign (no root bracketed).
inline bool find_root_scan(const std::function<double(double)>& f, double lo, double hi,
                           int scan_points, double& root_out) {
    double prev_x = lo;
    double prev_f = f(lo);
    for (int k = 1; k <= scan_points; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / scan_points;
        const double fx = f(x);
        if (prev_f == 0.0) {
            root_out = prev_x;
            return true;
        }
        if ((fx > 0.0) != (prev_f > 0.0)) {
            root_out = bisect(f, prev_x, x);
            return true;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (prev_f == 0.0) {
        root_out = prev_x;
        return true;
    }
    return false;
}

// --- misc helpers ---------------------------------------------------------

inline ComplexMatrix random_complex_matrix(std::mt19937_64& rng, std::size_t dim,
                                           double span = 1.0) {
    std::uniform_real_distribution<double> u(-span, span);
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m.set(r, c, Complex{u(rng), u(rng)});
    return m;
}

inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim() + b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            out.set(r, c, a(r, c));
    for (std::size_t r = 0; r < b.dim(); ++r)
        for (std::size_t c = 0; c < b.dim(); ++c)
            out.set(a.dim() + r, a.dim() + c, b(r, c));
    return out;
}

// max |X - Y| over entries, for assertion messages
inline double max_entry_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    double m = 0.0;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            m = std::max(m, std::abs(x(r, c) - y(r, c)));
    return m;
}

}  // namespace oracles
