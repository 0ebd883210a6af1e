#pragma once

#include <cmath>

#include "spinkron/complex_matrix.hpp"
#include "spinkron/hamiltonian.hpp"

namespace spinkron {

/// The same isotropic Hamiltonian as build_breit_rabi, constructed the
/// classical way: explicit matrix elements over the product basis
/// |m_I, m_S>, using I.S = Iz Sz + (I+ S- + I- S+)/2 and the standard
/// ladder elements <j,m+-1|J+-|j,m> = sqrt(j(j+1) - m(m+-1)) (real,
/// non-negative, Condon-Shortley phases).
///
/// Deliberately shares no code with kron() or spin_matrices() beyond the
/// matrix container, so entrywise agreement with build_breit_rabi is
/// independent evidence, not a tautology. Basis enumeration: m_I descending
/// (outer), m_S descending (inner) -- the order the Kronecker product
/// induces.
inline ComplexMatrix build_breit_rabi_basis(const BreitRabiParams& p) {
    detail::require_finite(p.hyperfine, "hyperfine");
    detail::require_finite(p.field, "field");
    detail::require_finite(p.electron_zeeman, "electron_zeeman");
    detail::require_finite(p.nuclear_zeeman, "nuclear_zeeman");

    const int two_i = p.nucleus.two_j();
    const double ji = 0.5 * two_i;  // nuclear spin quantum number
    const double js = 0.5;          // electron spin, fixed 1/2
    const std::size_t ni = p.nucleus.dim();
    const std::size_t ns = 2;

    // raising element sqrt(j(j+1) - m(m+1)), i.e. <j,m+1|J+|j,m>
    auto raise = [](double j, double m) { return std::sqrt(j * (j + 1.0) - m * (m + 1.0)); };

    ComplexMatrix h(ni * ns);
    for (std::size_t ki = 0; ki < ni; ++ki) {
        const double mi = ji - static_cast<double>(ki);
        for (std::size_t ks = 0; ks < ns; ++ks) {
            const double ms = js - static_cast<double>(ks);
            const std::size_t row = ki * ns + ks;

            // diagonal: A mI mS + B (a mS + b mI)
            h.set(row, row, Complex{p.hyperfine * mi * ms +
                                        p.field * (p.electron_zeeman * ms +
                                                   p.nuclear_zeeman * mi),
                                    0.0});

            // flip-flop <mI+1, mS-1| I+ S- |mI, mS>, coefficient A/2
            if (ki > 0 && ks + 1 < ns) {
                const std::size_t col_up = (ki - 1) * ns + (ks + 1);
                const double v = 0.5 * p.hyperfine * raise(ji, mi) * raise(js, ms - 1.0);
                h.set(col_up, row, Complex{v, 0.0});
                h.set(row, col_up, Complex{v, 0.0});
            }
        }
    }
    return h;
}

}  // namespace spinkron
