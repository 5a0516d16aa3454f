#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tchain/capnet.hpp"

namespace tchain::spinmodel {

enum class ModelKind {
    NonLocal,
    NearestNeighbor,
};

/// Effective two-level parameters of the chain: qubit frequencies omega_m,
/// coupling matrix g_nm (both rad/s) and the dimensionless transmon
/// expansion parameters xi_m = sqrt(2 E_{C,m} / E_{J,m}).
struct SpinModelParameters {
    Eigen::VectorXd omega;  ///< rad/s, one per qubit
    Eigen::MatrixXd g;      ///< rad/s, symmetric, zero diagonal
    Eigen::VectorXd xi;
    double mean_nn_coupling = 0.0; ///< arithmetic mean of g_{n,n+1}
    std::vector<std::string> warnings;

    int n_qubits() const { return static_cast<int>(omega.size()); }
    void validate() const;
};

/// omega = (sqrt(8 E_C E_J) - E_C) / hbar. Appends a transmon-regime
/// warning to `warnings` (if given) when E_J/E_C < 20.
double effective_frequency(double ec_J, double ej_J, const PhysicalConstants& consts,
                           std::vector<std::string>* warnings = nullptr);

/// g_nm = 4 E_{C,nm} / (hbar sqrt(4 xi_n xi_m)); symmetric, zero diagonal.
Eigen::MatrixXd coupling_matrix(const capnet::CapacitiveEnergies& energies,
                                const Eigen::VectorXd& ej_J, const PhysicalConstants& consts);

/// Per-qubit E_J bringing every qubit to target_omega:
/// E_J = (hbar omega + E_C)^2 / (8 E_C), the closed-form inverse of
/// effective_frequency.
Eigen::VectorXd calibrate_resonance(const capnet::CapacitiveEnergies& energies,
                                    double target_omega, const PhysicalConstants& consts);

/// Assemble frequencies, couplings and xi for the given Josephson energies.
SpinModelParameters build_parameters(const capnet::CapacitiveEnergies& energies,
                                     const Eigen::VectorXd& ej_J,
                                     const PhysicalConstants& consts);

/// Full pipeline from a circuit spec: capacitance matrix -> numeric inverse
/// -> energies -> parameters. With `calibrated` every E_J is retuned so that
/// omega_n == omega_1 of the uncalibrated chain.
SpinModelParameters build_chain_parameters(const capnet::ChainSpec& spec, bool calibrated,
                                           const PhysicalConstants& consts);

/// XX Hamiltonian on the 2^N qubit space,
///   H = sum_m omega_m |e><e|_m + sum_{n>m} g_nm (s-_n s+_m + s-_m s+_n),
/// stored as its defining parameters; dense blocks are materialized on
/// demand. Entries are angular frequencies (H/hbar), so propagators are
/// exp(-iHt) with t in seconds. Matrix elements are real by construction
/// and H conserves the total excitation number.
class SpinHamiltonian {
public:
    /// Hard ceiling on the qubit count for any 2^N-space materialization.
    static constexpr int max_qubits = 14;

    SpinHamiltonian() = default;
    SpinHamiltonian(Eigen::VectorXd omega, Eigen::MatrixXd g, ModelKind kind,
                    double mean_nn_coupling);

    int n_qubits() const { return static_cast<int>(omega_.size()); }
    ModelKind kind() const { return kind_; }
    const Eigen::VectorXd& omega() const { return omega_; }
    /// Coupling matrix actually in effect (masked to |n-m|=1 for the
    /// nearest-neighbor kind).
    const Eigen::MatrixXd& g() const { return g_; }
    double mean_nn_coupling() const { return mean_nn_coupling_; }

    /// Full 2^N x 2^N real symmetric matrix in the computational basis,
    /// qubit m <-> bit m-1 of the index. Only for explicit requests and
    /// small N; throws CapacityError above max_qubits.
    Eigen::MatrixXd dense() const;

private:
    Eigen::VectorXd omega_;
    Eigen::MatrixXd g_;
    ModelKind kind_ = ModelKind::NonLocal;
    double mean_nn_coupling_ = 0.0;
};

/// Build the Hamiltonian of the requested kind; NearestNeighbor zeroes every
/// coupling with |n-m| >= 2 and is otherwise identical.
SpinHamiltonian build_hamiltonian(const SpinModelParameters& params, ModelKind kind);

/// Worst-case g_nm / min(omega_n, omega_m) over all pairs, the quantity the
/// rotating-wave approximation needs to be small.
struct RwaReport {
    double max_ratio = 0.0;
    int site_a = 0; ///< 1-based; 0 when no couplings
    int site_b = 0;
    double threshold = 0.05;
    bool warn = false;
};

RwaReport rwa_report(const SpinModelParameters& params, double threshold = 0.05);

} // namespace tchain::spinmodel
