#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinkron/complex_matrix.hpp"

namespace spinkron {

/// Thrown when the eigensolver exhausts its sweep budget. Never silent.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Spectrum {
    std::vector<double> eigenvalues;              // ascending
    std::optional<ComplexMatrix> eigenvectors;    // columns aligned with eigenvalues
};

/// Eigenvalues (and optionally eigenvectors) of a Hermitian matrix by
/// cyclic complex Jacobi rotations: deterministic, dependency-free, and
/// ample for the dimensions this library targets (<= a few dozen).
///
/// `tol` is the Hermiticity admission tolerance for the input; convergence
/// itself is fixed at off-diagonal Frobenius norm <= 1e-13 * ||H||_F within
/// a budget of 50 sweeps. Identical input yields identical output.
inline Spectrum eigen_hermitian(const ComplexMatrix& h, double tol = 1e-12,
                                bool want_vectors = true) {
    if (!is_hermitian(h, tol))
        throw std::invalid_argument("eigen_hermitian: input is not Hermitian within tolerance");

    const std::size_t n = h.dim();
    // Work on raw buffers; the matrix stays Hermitian throughout, so only
    // the upper triangle is authoritative and the lower is kept mirrored.
    std::vector<Complex> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r * n + c] = 0.5 * (h(r, c) + std::conj(h(c, r)));  // symmetrized copy

    std::vector<Complex> v;
    if (want_vectors) {
        v.assign(n * n, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i)
            v[i * n + i] = 1.0;
    }

    const double norm_h = frobenius_norm(h);
    const double conv = 1e-13 * norm_h;
    const int max_sweeps = 50;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c)
                s += 2.0 * std::norm(a[r * n + c]);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > conv) {
        if (++sweep > max_sweeps)
            throw ConvergenceError("eigen_hermitian: no convergence after " +
                                   std::to_string(max_sweeps) + " sweeps (dim " +
                                   std::to_string(n) + ")");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double r = std::abs(apq);
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                if (r == 0.0 || r <= 1e-280 * std::max({1.0, std::abs(app), std::abs(aqq)}))
                    continue;

                // Phase factor pulls the pivot onto the real axis; then a
                // real Jacobi rotation (Rutishauser's stable form) zeroes it.
                const Complex phase = apq / r;  // e^{i arg(apq)}
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // column rotation J: J[p][p]=c, J[p][q]=s,
                // J[q][p]=-s*conj(phase), J[q][q]=c*conj(phase)
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q)
                        continue;
                    const Complex akp = a[k * n + p];
                    const Complex akq = a[k * n + q];
                    const Complex nkp = c * akp + jqp * akq;
                    const Complex nkq = s * akp + jqq * akq;
                    a[k * n + p] = nkp;
                    a[k * n + q] = nkq;
                    a[p * n + k] = std::conj(nkp);
                    a[q * n + k] = std::conj(nkq);
                }
                a[p * n + p] = Complex{c * c * app + s * s * aqq - 2.0 * c * s * r, 0.0};
                a[q * n + q] = Complex{s * s * app + c * c * aqq + 2.0 * c * s * r, 0.0};
                a[p * n + q] = Complex{0.0, 0.0};
                a[q * n + p] = Complex{0.0, 0.0};

                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v[k * n + p];
                        const Complex vkq = v[k * n + q];
                        v[k * n + p] = c * vkp + jqp * vkq;
                        v[k * n + q] = s * vkp + jqq * vkq;
                    }
                }
            }
        }
    }

    // Sort ascending; ties keep diagonal order so output is deterministic.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t k) {
        return a[i * n + i].real() < a[k * n + k].real();
    });

    Spectrum out;
    out.eigenvalues.reserve(n);
    for (std::size_t i : order)
        out.eigenvalues.push_back(a[i * n + i].real());
    if (want_vectors) {
        ComplexMatrix vecs(n);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t row = 0; row < n; ++row)
                vecs.set(row, col, v[row * n + order[col]]);
        out.eigenvectors = std::move(vecs);
    }
    return out;
}

/// Characteristic polynomial det(H - E*I), stored as a monic polynomial in
/// E plus an overall sign:
///
///   det(H - E*I) = sign * (coeffs[n] E^n + ... + coeffs[1] E + coeffs[0])
///
/// with coeffs[n] = 1 and sign = (-1)^n, so that for even dimension the
/// stored polynomial IS det(H - E*I). Coefficients are real; intended for
/// Hermitian input (where they are real exactly).
struct CharPoly {
    std::vector<double> coeffs;  // coeffs[k] multiplies E^k; monic
    int sign = 1;

    std::size_t degree() const { return coeffs.size() - 1; }

    /// Value of det(H - E*I) at E (sign included).
    double evaluate(double e) const {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;)
            acc = acc * e + coeffs[k];
        return sign * acc;
    }
};

/// Faddeev-LeVerrier trace recursion. Exact in exact arithmetic; in doubles
/// the coefficients are good to ~1e-12 relative for the dimensions used
/// here, comfortably inside the 1e-9 evaluation contract.
inline CharPoly char_poly(const ComplexMatrix& h) {
    const std::size_t n = h.dim();

    // q(E) = det(E*I - H) = E^n + c[1] E^{n-1} + ... + c[n],
    // M_1 = H, c_k = -tr(M_k)/k, M_{k+1} = H (M_k + c_k I).
    std::vector<Complex> c(n + 1);
    ComplexMatrix m = h;
    CharPoly out;
    out.coeffs.assign(n + 1, 0.0);
    out.coeffs[n] = 1.0;
    out.sign = (n % 2 == 0) ? 1 : -1;

    for (std::size_t k = 1; k <= n; ++k) {
        const Complex ck = -trace(m) / static_cast<double>(k);
        c[k] = ck;
        out.coeffs[n - k] = ck.real();
        if (k == n)
            break;
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i)
            shifted.set(i, i, shifted(i, i) + ck);
        m = h * shifted;
    }
    return out;
}

/// Bijection on {0..n-1}. The induced matrix U (U e_j = e_{map(j)}) is
/// orthogonal; for involutions U = U^T = U^{-1}.
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
        std::vector<bool> seen(map_.size(), false);
        for (std::size_t v : map_) {
            if (v >= map_.size() || seen[v])
                throw std::invalid_argument("Permutation: mapping is not a bijection");
            seen[v] = true;
        }
        if (map_.empty())
            throw std::invalid_argument("Permutation: size must be >= 1");
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), std::size_t{0});
        return Permutation(std::move(m));
    }

    /// i -> n-1-i (the antidiagonal matrix).
    static Permutation reversal(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = n - 1 - i;
        return Permutation(std::move(m));
    }

    static Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
        auto p = identity(n);
        if (i >= n || j >= n)
            throw std::invalid_argument("Permutation::transposition: index out of range");
        std::swap(p.map_[i], p.map_[j]);
        return p;
    }

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_.at(i); }

    Permutation inverse() const {
        std::vector<std::size_t> inv(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i)
            inv[map_[i]] = i;
        return Permutation(std::move(inv));
    }

    bool is_involution() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[map_[i]] != i)
                return false;
        return true;
    }

    ComplexMatrix to_matrix() const {
        ComplexMatrix u(map_.size());
        for (std::size_t j = 0; j < map_.size(); ++j)
            u.set(map_[j], j, Complex{1.0, 0.0});
        return u;
    }

private:
    std::vector<std::size_t> map_;
};

/// U H U^T for the induced permutation matrix, computed directly:
/// result[i,j] = H[p^{-1}(i), p^{-1}(j)].
inline ComplexMatrix permutation_conjugate(const ComplexMatrix& h, const Permutation& p) {
    if (p.size() != h.dim())
        throw std::invalid_argument("permutation_conjugate: dimension mismatch (" +
                                    std::to_string(p.size()) + " vs " +
                                    std::to_string(h.dim()) + ")");
    ComplexMatrix out(h.dim());
    for (std::size_t r = 0; r < h.dim(); ++r)
        for (std::size_t c = 0; c < h.dim(); ++c)
            out.set(p(r), p(c), h(r, c));
    return out;
}

/// Symmetric permutation exposing the block-diagonal form of H, plus the
/// block sizes. perm sends old indices to new positions; applying it with
/// permutation_conjugate makes every block contiguous.
struct BlockStructure {
    Permutation perm;
    std::vector<std::size_t> block_sizes;
};

/// Connected components of the graph with an edge (i,j) wherever
/// |H[i,j]| > tol * max_abs(H), i != j. Components are ordered by their
/// smallest member and listed internally in ascending index order, so the
/// result is deterministic. Default tol matches entries that are short
/// exact expressions: true zeros are exact zeros.
inline BlockStructure block_structure(const ComplexMatrix& h, double tol = 1e-12) {
    if (tol < 0.0)
        throw std::invalid_argument("block_structure: tol must be >= 0");
    const std::size_t n = h.dim();
    const double threshold = tol * max_abs(h);

    std::vector<int> component(n, -1);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (component[seed] >= 0)
            continue;
        const int id = static_cast<int>(groups.size());
        std::vector<std::size_t> stack{seed}, members;
        component[seed] = id;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || component[j] >= 0)
                    continue;
                if (std::abs(h(i, j)) > threshold || std::abs(h(j, i)) > threshold) {
                    component[j] = id;
                    stack.push_back(j);
                }
            }
        }
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }
    // Seeds are visited in ascending order, so groups are already ordered
    // by smallest member.
    std::vector<std::size_t> newpos(n);
    std::vector<std::size_t> sizes;
    std::size_t next = 0;
    for (const auto& g : groups) {
        sizes.push_back(g.size());
        for (std::size_t i : g)
            newpos[i] = next++;
    }
    return BlockStructure{Permutation(std::move(newpos)), std::move(sizes)};
}

/// True iff the two sorted eigenvalue lists agree entrywise within
/// tol * max(1, largest eigenvalue magnitude).
inline bool isospectral(const ComplexMatrix& h1, const ComplexMatrix& h2, double tol = 1e-11) {
    if (h1.dim() != h2.dim())
        throw std::invalid_argument("isospectral: dimension mismatch");
    const auto s1 = eigen_hermitian(h1, 1e-10, false);
    const auto s2 = eigen_hermitian(h2, 1e-10, false);
    double scale = 1.0;
    for (double v : s1.eigenvalues)
        scale = std::max(scale, std::abs(v));
    for (double v : s2.eigenvalues)
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < s1.eigenvalues.size(); ++i)
        if (std::abs(s1.eigenvalues[i] - s2.eigenvalues[i]) > tol * scale)
            return false;
    return true;
}

}  // namespace spinkron
