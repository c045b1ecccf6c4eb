// random_states.hpp — Seeded generators of test states shared by the unit
// tests, the acceptance suite and the `check` subcommand.

#pragma once

#include <random>

#include "twoatom/quantum_state.hpp"

namespace twoatom {

using Rng = std::mt19937_64;

/// Generic full-rank X state: each 2x2 block is an independent Wishart draw.
XState random_x_state(Rng& rng);

/// Random full-rank two-qubit density matrix (Ginibre ensemble).
DensityMatrix4 random_density(Rng& rng);

/// Haar-random single-qubit unitary.
Matrix2c random_unitary2(Rng& rng);

/// Random Hermitian 4x4 matrix with unit trace; not necessarily positive.
Matrix4c random_hermitian(Rng& rng);

}  // namespace twoatom
