#pragma once

// Umbrella header: matrix core, spin operators, Hamiltonian builders, the
// ladder-operator cross-check, spectral analysis, and the field-sweep engine.

#include "spinkron/complex_matrix.hpp"
#include "spinkron/spin.hpp"
#include "spinkron/hamiltonian.hpp"
#include "spinkron/product_basis.hpp"
#include "spinkron/spectral.hpp"
#include "spinkron/sweep.hpp"
