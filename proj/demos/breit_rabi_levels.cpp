// Minimal tour of the library: assemble the I=3/2 isotropic Hamiltonian with
// one Kronecker-product call per term, inspect its block structure, and
// print the energy levels over a short field range.

#include <cstdio>

#include "spinkron/spinkron.hpp"

int main() {
    using namespace spinkron;

    const double hyperfine = 1.0, electron_zeeman = 2.0, nuclear_zeeman = 0.05;
    const SpinQuantum nucleus{3};  // I = 3/2, dimension 8 when coupled to the electron

    const auto h1 = build_breit_rabi({nucleus, hyperfine, 1.0, electron_zeeman,
                                      nuclear_zeeman});
    const auto blocks = block_structure(h1);
    std::printf("dimension %zu, diagonal blocks:", h1.dim());
    for (std::size_t s : blocks.block_sizes)
        std::printf(" %zu", s);
    std::printf("\n\n%8s", "B");
    for (std::size_t i = 1; i <= h1.dim(); ++i)
        std::printf("  %9s%zu", "E", i);
    std::printf("\n");

    for (double field = 0.0; field <= 2.0 + 1e-12; field += 0.25) {
        const auto h = build_breit_rabi({nucleus, hyperfine, field, electron_zeeman,
                                         nuclear_zeeman});
        const auto spectrum = eigen_hermitian(h, 1e-12, false);
        std::printf("%8.2f", field);
        for (double e : spectrum.eigenvalues)
            std::printf("  %10.6f", e);
        std::printf("\n");
    }
    return 0;
}
