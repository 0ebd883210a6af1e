#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "spinkron/complex_matrix.hpp"
#include "spinkron/spin.hpp"

namespace spinkron {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

/// Isotropic hyperfine + Zeeman model for one nucleus coupled to one
/// spin-1/2 electron in a field of intensity `field` along z:
///
///   H = hyperfine * I.S + field * (electron_zeeman * S_z + nuclear_zeeman * I_z)
struct BreitRabiParams {
    SpinQuantum nucleus{1};
    double hyperfine = 0.0;       // strength of the isotropic I.S coupling
    double field = 0.0;           // magnetic field intensity
    double electron_zeeman = 0.0; // energy per unit field on S_z
    double nuclear_zeeman = 0.0;  // energy per unit field on I_z
};

/// Coefficients of the general bilinear spin Hamiltonian
///
///   H = sum_u nuclear_linear[u] * I_u
///     + sum_u electron_linear[u] * S_u
///     + sum_{k,l} bilinear[k][l] * I_k S_l
///
/// with u,k,l running over x,y,z (indices 0,1,2). The first index of
/// `bilinear` is the nuclear component, the second the electronic one.
struct CouplingCoefficients {
    Vec3 nuclear_linear{};
    Vec3 electron_linear{};
    Mat3 bilinear{};
};

/// Anisotropic parameterization: two g-tensors, a 3x3 coupling tensor and a
/// field vector,
///
///   H = beta_e S^T g B  +  S^T A I  -  beta_n I^T g_n B.
struct TensorParams {
    double beta_e = 0.0;
    double beta_n = 0.0;
    Mat3 g_electron{};
    Mat3 g_nuclear{};
    Mat3 coupling{};  // A: couples S (left index) to I (right index)
    Vec3 field{};
};

namespace detail {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string("non-finite parameter: ") + name);
}

inline void require_finite(const Vec3& v, const char* name) {
    for (double x : v)
        require_finite(x, name);
}

inline void require_finite(const Mat3& m, const char* name) {
    for (const auto& row : m)
        for (double x : row)
            require_finite(x, name);
}

}  // namespace detail

/// Matrix representation of the isotropic model in the product basis the
/// Kronecker product induces: nucleus is the LEFT factor, electron the
/// RIGHT, i.e.
///
///   H = A (Ix(x)Sx + Iy(x)Sy + Iz(x)Sz) + B [ a 1(x)Sz + b Iz(x)1 ]
///
/// Dimension 2(2I+1); rows ordered by descending m_I (outer) then
/// descending m_S (inner). Other references order electron-first; the two
/// conventions give isospectral matrices related by a basis permutation.
inline ComplexMatrix build_breit_rabi(const BreitRabiParams& p) {
    detail::require_finite(p.hyperfine, "hyperfine");
    detail::require_finite(p.field, "field");
    detail::require_finite(p.electron_zeeman, "electron_zeeman");
    detail::require_finite(p.nuclear_zeeman, "nuclear_zeeman");

    const SpinMatrices nuc = spin_matrices(p.nucleus);
    const SpinMatrices ele = spin_matrices(SpinQuantum{1});
    const ComplexMatrix id_nuc = identity(p.nucleus.dim());
    const ComplexMatrix id_ele = identity(2);

    ComplexMatrix h =
        p.hyperfine * (kron(nuc.jx, ele.jx) + kron(nuc.jy, ele.jy) + kron(nuc.jz, ele.jz));
    h = h + (p.field * p.electron_zeeman) * kron(id_nuc, ele.jz);
    h = h + (p.field * p.nuclear_zeeman) * kron(nuc.jz, id_ele);
    return h;
}

/// General bilinear Hamiltonian for arbitrary nuclear and electron spins.
/// Linear terms enter as I_u (x) 1 and 1 (x) S_u; bilinear terms as
/// I_k (x) S_l. Hermitian whenever all coefficients are real (always, since
/// they are doubles).
inline ComplexMatrix build_general(SpinQuantum nucleus, SpinQuantum electron,
                                   const CouplingCoefficients& coeffs) {
    detail::require_finite(coeffs.nuclear_linear, "nuclear_linear");
    detail::require_finite(coeffs.electron_linear, "electron_linear");
    detail::require_finite(coeffs.bilinear, "bilinear");

    const SpinMatrices nuc = spin_matrices(nucleus);
    const SpinMatrices ele = spin_matrices(electron);
    const ComplexMatrix* nuc_ops[3] = {&nuc.jx, &nuc.jy, &nuc.jz};
    const ComplexMatrix* ele_ops[3] = {&ele.jx, &ele.jy, &ele.jz};
    const ComplexMatrix id_nuc = identity(nucleus.dim());
    const ComplexMatrix id_ele = identity(electron.dim());

    ComplexMatrix h(nucleus.dim() * electron.dim());
    for (int u = 0; u < 3; ++u) {
        if (coeffs.nuclear_linear[u] != 0.0)
            h = h + coeffs.nuclear_linear[u] * kron(*nuc_ops[u], id_ele);
        if (coeffs.electron_linear[u] != 0.0)
            h = h + coeffs.electron_linear[u] * kron(id_nuc, *ele_ops[u]);
    }
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            if (coeffs.bilinear[k][l] != 0.0)
                h = h + coeffs.bilinear[k][l] * kron(*nuc_ops[k], *ele_ops[l]);
    return h;
}

/// Rewrite the tensor parameterization as plain coupling coefficients:
///
///   electron_linear[i] = beta_e * sum_k g[i][k] * B[k]
///   nuclear_linear[i]  = -beta_n * sum_k g_n[i][k] * B[k]
///   bilinear[k][l]     = A[l][k]
///
/// The transpose in the last line is forced by S^T A I = sum_{l,k} A[l][k]
/// S_l I_k, while `bilinear[k][l]` multiplies I_k S_l. The minus sign of the
/// nuclear Zeeman term lives here, not in the builder.
inline CouplingCoefficients tensor_to_coefficients(const TensorParams& t) {
    detail::require_finite(t.beta_e, "beta_e");
    detail::require_finite(t.beta_n, "beta_n");
    detail::require_finite(t.g_electron, "g_electron");
    detail::require_finite(t.g_nuclear, "g_nuclear");
    detail::require_finite(t.coupling, "coupling");
    detail::require_finite(t.field, "field");

    CouplingCoefficients c;
    for (int i = 0; i < 3; ++i) {
        double be = 0.0, bn = 0.0;
        for (int k = 0; k < 3; ++k) {
            be += t.g_electron[i][k] * t.field[k];
            bn += t.g_nuclear[i][k] * t.field[k];
        }
        c.electron_linear[i] = t.beta_e * be;
        c.nuclear_linear[i] = -t.beta_n * bn;
    }
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            c.bilinear[k][l] = t.coupling[l][k];
    return c;
}

}  // namespace spinkron
