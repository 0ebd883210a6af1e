#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "spinkron/complex_matrix.hpp"
#include "spinkron/hamiltonian.hpp"
#include "spinkron/product_basis.hpp"
#include "spinkron/spectral.hpp"
#include "spinkron/spin.hpp"

namespace spinkron {

namespace detail {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m.set(r, c, Complex{u(rng), u(rng)});
    return m;
}

}  // namespace detail

/// Built-in invariant suite: fast cross-checks of the library against
/// itself, runnable from the CLI (`spinkron check`) without any test
/// framework. Returns true iff everything holds. Seeded, so the run is
/// reproducible.
inline bool run_self_tests(std::ostream& os) {
    std::mt19937_64 rng(20240817u);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    bool all_ok = true;

    auto report = [&](const std::string& name, bool ok) {
        os << (ok ? "ok   " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    // spin algebra: commutators and Casimir for 2j = 0..10
    {
        bool ok = true;
        for (int two_j = 0; two_j <= 10 && ok; ++two_j) {
            const auto s = spin_matrices(SpinQuantum{two_j});
            const Complex i_unit{0.0, 1.0};
            ok = ok && approx_equal(commutator(s.jx, s.jy), i_unit * s.jz, 1e-13);
            ok = ok && approx_equal(commutator(s.jy, s.jz), i_unit * s.jx, 1e-13);
            ok = ok && approx_equal(commutator(s.jz, s.jx), i_unit * s.jy, 1e-13);
            const double j = 0.5 * two_j;
            ok = ok && approx_equal(s.jx * s.jx + s.jy * s.jy + s.jz * s.jz,
                                    (j * (j + 1.0)) * identity(s.jz.dim()), 1e-13);
        }
        report("spin operator commutators and Casimir (2j = 0..10)", ok);
    }

    // Kronecker identities on random matrices
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            const auto a = detail::random_matrix(rng, 2 + trial % 3);
            const auto b = detail::random_matrix(rng, 2 + (trial / 3) % 3);
            const auto c = detail::random_matrix(rng, a.dim());
            const auto d = detail::random_matrix(rng, b.dim());
            ok = ok && approx_equal(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-13);
            ok = ok && approx_equal(adjoint(kron(a, b)), kron(adjoint(a), adjoint(b)), 1e-14);
            ok = ok && std::abs(trace(kron(a, b)) - trace(a) * trace(b)) <=
                           1e-13 * std::max(1.0, std::abs(trace(a) * trace(b)));
        }
        report("Kronecker mixed-product, adjoint and trace identities", ok);
    }

    // builder vs independent product-basis construction
    {
        bool ok = true;
        for (int two_i = 1; two_i <= 7 && ok; ++two_i)
            for (int trial = 0; trial < 10 && ok; ++trial) {
                const BreitRabiParams p{SpinQuantum{two_i}, u(rng), u(rng), u(rng), u(rng)};
                ok = ok && approx_equal(build_breit_rabi(p), build_breit_rabi_basis(p), 1e-13);
            }
        report("Kronecker builder agrees with ladder-operator matrix elements", ok);
    }

    // Hermiticity and tracelessness of built Hamiltonians
    {
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            const BreitRabiParams p{SpinQuantum{3}, u(rng), u(rng), u(rng), u(rng)};
            const auto h = build_breit_rabi(p);
            ok = ok && is_hermitian(h, 1e-13);
            ok = ok && std::abs(trace(h)) <= 1e-13 * std::max(1.0, max_abs(h));

            CouplingCoefficients cc;
            for (auto& v : cc.nuclear_linear) v = u(rng);
            for (auto& v : cc.electron_linear) v = u(rng);
            for (auto& row : cc.bilinear)
                for (auto& v : row) v = u(rng);
            ok = ok && is_hermitian(build_general(SpinQuantum{2}, SpinQuantum{1}, cc), 1e-13);
        }
        report("built Hamiltonians Hermitian; isotropic ones traceless", ok);
    }

    // block structure of the two isotropic models
    {
        const BreitRabiParams half{SpinQuantum{1}, 1.3, 0.7, 2.1, 0.4};
        const BreitRabiParams threehalf{SpinQuantum{3}, 1.3, 0.7, 2.1, 0.4};
        const auto b1 = block_structure(build_breit_rabi(half));
        const auto b2 = block_structure(build_breit_rabi(threehalf));
        report("isotropic block sizes [1,2,1] and [1,2,2,2,1]",
               b1.block_sizes == std::vector<std::size_t>{1, 2, 1} &&
                   b2.block_sizes == std::vector<std::size_t>{1, 2, 2, 2, 1});
    }

    // eigensolver consistency: residuals, trace sums, charpoly roots
    {
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            const BreitRabiParams p{SpinQuantum{3}, u(rng), u(rng), u(rng), u(rng)};
            const auto h = build_breit_rabi(p);
            const auto sp = eigen_hermitian(h, 1e-12, true);
            const double scale = std::max(1.0, frobenius_norm(h));

            double sum = 0.0, sum2 = 0.0;
            for (double v : sp.eigenvalues) {
                sum += v;
                sum2 += v * v;
            }
            double tr2 = trace(h * h).real();
            ok = ok && std::abs(sum - trace(h).real()) <= 1e-11 * scale;
            ok = ok && std::abs(sum2 - tr2) <= 1e-10 * std::max(1.0, std::abs(tr2));

            const auto& vecs = *sp.eigenvectors;
            for (std::size_t i = 0; i < sp.eigenvalues.size() && ok; ++i) {
                double res = 0.0;
                for (std::size_t r = 0; r < h.dim(); ++r) {
                    Complex hv{0.0, 0.0};
                    for (std::size_t k = 0; k < h.dim(); ++k)
                        hv += h(r, k) * vecs(k, i);
                    res += std::norm(hv - sp.eigenvalues[i] * vecs(r, i));
                }
                ok = ok && std::sqrt(res) <= 1e-11 * scale;
            }

            const auto cp = char_poly(h);
            const double pscale = std::pow(std::max(1.0, frobenius_norm(h)),
                                           static_cast<double>(h.dim()));
            for (double v : sp.eigenvalues)
                ok = ok && std::abs(cp.evaluate(v)) <= 1e-8 * pscale;
        }
        report("eigensolver residuals, trace sums, characteristic-polynomial roots", ok);
    }

    // permutation conjugation preserves the spectrum
    {
        bool ok = true;
        const BreitRabiParams p{SpinQuantum{3}, 2.2, 1.1, 0.9, -0.3};
        const auto h = build_breit_rabi(p);
        for (const auto& perm :
             {Permutation::reversal(h.dim()), Permutation::transposition(h.dim(), 1, 5)}) {
            ok = ok && isospectral(h, permutation_conjugate(h, perm), 1e-11);
        }
        report("permutation conjugation is isospectral", ok);
    }

    return all_ok;
}

}  // namespace spinkron
