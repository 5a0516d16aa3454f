#pragma once

#include <vector>

#include "tchain/errors.hpp"

namespace tchain::capnet {

/// How the chain terminates. ToeplitzEdges pads the two edge qubits with an
/// extra C_C so every diagonal of the capacitance matrix equals C_q + 2C_C;
/// IdenticalShunt keeps all qubit capacitances equal to C_q, so the edge
/// diagonals are C_q + C_C.
enum class EdgeConvention {
    ToeplitzEdges,
    IdenticalShunt,
};

/// Direct stray capacitance between two non-adjacent qubits (1-based sites).
struct ParasiticLink {
    int n = 0;
    int m = 0;
    double c_fF = 0.0;
};

/// Circuit-level description of a 1D transmon chain.
struct ChainSpec {
    int n_qubits = 0;
    double cq_fF = 0.0; ///< qubit capacitance C_q
    double cc_fF = 0.0; ///< nearest-neighbor coupling capacitance C_C
    EdgeConvention edge_convention = EdgeConvention::ToeplitzEdges;
    std::vector<double> ej_zero_flux_J; ///< per-qubit Josephson energy, size n_qubits
    std::vector<ParasiticLink> parasitic_links;

    /// Convenience constructor for a uniform chain with a single E_J value.
    static ChainSpec uniform(int n_qubits, double cq_fF, double cc_fF, double ej_J,
                             EdgeConvention conv = EdgeConvention::ToeplitzEdges) {
        ChainSpec s;
        s.n_qubits = n_qubits;
        s.cq_fF = cq_fF;
        s.cc_fF = cc_fF;
        s.edge_convention = conv;
        s.ej_zero_flux_J.assign(static_cast<std::size_t>(n_qubits > 0 ? n_qubits : 0), ej_J);
        return s;
    }

    /// True when the closed-form Chebyshev inverse applies.
    bool parasitic_free() const { return parasitic_links.empty(); }

    void validate() const;
};

} // namespace tchain::capnet
