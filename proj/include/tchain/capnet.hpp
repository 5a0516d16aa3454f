#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tchain/chain_spec.hpp"
#include "tchain/constants.hpp"

namespace tchain::capnet {

/// Symmetric N x N circuit capacitance matrix, entries in fF.
struct CapacitanceMatrix {
    Eigen::MatrixXd fF;
};

/// Dense inverse of a CapacitanceMatrix, entries in 1/fF.
struct InverseCapacitanceMatrix {
    Eigen::MatrixXd per_fF;
};

/// Local charging energies E_{C,m} and pairwise energies E_{C,nm}, in J.
/// The pairwise matrix is symmetric with a zero diagonal.
struct CapacitiveEnergies {
    Eigen::VectorXd local_J;
    Eigen::MatrixXd pairwise_J;
};

/// Assemble the tridiagonal(+parasitic) capacitance matrix of the chain.
/// Diagonals follow the spec's edge convention; each parasitic link C_par
/// between sites n,m contributes -C_par at (n,m) and +C_par on both
/// diagonals, so rows keep summing to the qubit's capacitance to ground.
CapacitanceMatrix build_capacitance_matrix(const ChainSpec& spec);

/// Dense numeric inverse via Cholesky. Throws NumericalError (with a
/// condition-number estimate in the message) when the input is not positive
/// definite, and checks max|C*Cinv - I| < 1e-10 on the way out.
InverseCapacitanceMatrix invert_numeric(const CapacitanceMatrix& c);

/// E_{C,m} = e^2 (C^-1)_{mm} / 2 and E_{C,nm} = e^2 (C^-1)_{nm} / 2,
/// converted from 1/fF to 1/F internally so the energies come out in J.
CapacitiveEnergies capacitive_energies(const InverseCapacitanceMatrix& cinv,
                                       const PhysicalConstants& consts);

/// Border-effect profile dE_n = E_{n,C}/E_{1,C} - 1; dE_1 == 0 exactly.
std::vector<double> edge_detuning_profile(const CapacitiveEnergies& energies);

} // namespace tchain::capnet
