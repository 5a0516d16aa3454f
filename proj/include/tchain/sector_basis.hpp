#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tchain/spinmodel.hpp"

namespace tchain::sector {

/// Computational-basis states of one excitation-number block, as bitmasks
/// with popcount k, sorted ascending. Qubit m <-> bit m-1.
struct SectorBasis {
    int n_qubits = 0;
    int n_excitations = 0;
    std::vector<std::uint32_t> states;

    static SectorBasis build(int n_qubits, int n_excitations);

    int dim() const { return static_cast<int>(states.size()); }
    /// Position of `state` in the sorted list; ValidationError if absent.
    int index_of(std::uint32_t state) const;
};

/// Reverse the chain: bit i <-> bit n_qubits-1-i.
std::uint32_t mirror_state(std::uint32_t state, int n_qubits);

/// Dense real symmetric block of H restricted to the sector.
Eigen::MatrixXd sector_matrix(const spinmodel::SpinHamiltonian& h, const SectorBasis& basis);

} // namespace tchain::sector
