#include "tchain/sector_basis.hpp"

#include <algorithm>
#include <bit>

namespace tchain::sector {

SectorBasis SectorBasis::build(int n_qubits, int n_excitations) {
    if (n_qubits < 1 || n_qubits > spinmodel::SpinHamiltonian::max_qubits)
        throw ValidationError("SectorBasis: qubit count out of range");
    if (n_excitations < 0 || n_excitations > n_qubits)
        throw ValidationError("SectorBasis: excitation number out of range");
    SectorBasis basis;
    basis.n_qubits = n_qubits;
    basis.n_excitations = n_excitations;
    const std::uint32_t limit = 1u << n_qubits;
    for (std::uint32_t s = 0; s < limit; ++s)
        if (std::popcount(s) == n_excitations)
            basis.states.push_back(s);
    return basis;
}

int SectorBasis::index_of(std::uint32_t state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
        throw ValidationError("SectorBasis: state not in sector");
    return static_cast<int>(it - states.begin());
}

std::uint32_t mirror_state(std::uint32_t state, int n_qubits) {
    std::uint32_t out = 0;
    for (int i = 0; i < n_qubits; ++i)
        if (state >> i & 1)
            out |= 1u << (n_qubits - 1 - i);
    return out;
}

Eigen::MatrixXd sector_matrix(const spinmodel::SpinHamiltonian& h, const SectorBasis& basis) {
    if (basis.n_qubits != h.n_qubits())
        throw ValidationError("sector_matrix: basis does not match Hamiltonian size");
    const int n = h.n_qubits();
    const int dim = basis.dim();
    const auto& omega = h.omega();
    const auto& g = h.g();

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const std::uint32_t s = basis.states[static_cast<std::size_t>(col)];
        double diag = 0.0;
        for (int q = 0; q < n; ++q)
            if (s >> q & 1)
                diag += omega(q);
        block(col, col) = diag;
        for (int a = 0; a < n; ++a) {
            if (!(s >> a & 1))
                continue;
            for (int b = 0; b < n; ++b) {
                if (a == b || (s >> b & 1) || g(a, b) == 0.0)
                    continue;
                const std::uint32_t s2 = (s & ~(1u << a)) | (1u << b);
                block(basis.index_of(s2), col) += g(a, b);
            }
        }
    }
    return block;
}

} // namespace tchain::sector
