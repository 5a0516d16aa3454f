#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "tchain/sector_basis.hpp"
#include "tchain/spinmodel.hpp"

namespace tchain::dynamics {

/// Single-excitation state-transfer record. p_max/tau0 describe the first
/// local maximum of P_N(t) (quadratically refined); both are empty when the
/// population never rises above the noise floor.
struct TransferResult {
    std::vector<double> times_s;
    std::vector<double> times_norm; ///< t * gbar_{nn+1}
    std::vector<double> population; ///< P_N(t)
    std::optional<double> p_max;
    std::optional<double> tau0_s;
    std::optional<double> tau0_norm;
};

/// N x N block of H on the one-excitation subspace: diagonal omega_n,
/// off-diagonal g_nm.
Eigen::MatrixXd single_excitation_block(const spinmodel::SpinHamiltonian& h);

/// Evolve |e g g ... g> and record P_N(t) on the grid t = 0, dt, ..., t_max.
/// Propagation is by eigendecomposition of the single-excitation block.
/// Throws NumericalError when the series is still rising at t_max without a
/// bracketed first maximum (grid too short or too coarse).
TransferResult evolve_transfer(const spinmodel::SpinHamiltonian& h, double t_max_s, double dt_s);

/// tr(A) / 2^N for an operator on the full qubit space.
std::complex<double> infinite_temperature_expectation(const Eigen::MatrixXcd& a);

enum class OtocTraceMode {
    Auto,       ///< exact up to 12 qubits, stochastic above
    Exact,      ///< full-basis trace, sector by sector
    Stochastic, ///< random-state (Haar) trace estimator
};

struct OtocOptions {
    int w_site = 1; ///< site of W = sigma_z (1-based)
    int v_site = 0; ///< site of V = sigma_z; 0 means qubit N
    OtocTraceMode trace = OtocTraceMode::Auto;
    int n_samples = 8;        ///< stochastic mode only
    std::uint64_t seed = 1;   ///< stochastic mode only
    int n_threads = 0;        ///< 0 = all available
};

struct OtocSeries {
    std::vector<double> times_s;
    std::vector<double> times_norm;
    std::vector<double> values; ///< C(t), real part; imaginary part checked internally
    int w_site = 1;
    int v_site = 0;
    bool stochastic = false;
};

/// Infinite-temperature OTOC C(t) = 2 [1 - tr(W(t) V W(t) V) / 2^N] with
/// W = sigma_z on w_site and V = sigma_z on v_site (Hermitian involutions,
/// so the daggers drop). One eigendecomposition per excitation sector is
/// shared by the whole grid; the per-time evaluations are independent and
/// run in parallel. Exact mode asserts |Im tr| / 2^N < 1e-8 at every point.
OtocSeries otoc_series(const spinmodel::SpinHamiltonian& h, const std::vector<double>& times_s,
                       const OtocOptions& opts = {});

/// Serial reference: same correlator evaluated on the full 2^N space with
/// one dense eigendecomposition and no sector blocking. Kept as the oracle
/// for the blocked kernel and as the benchmark baseline.
OtocSeries otoc_series_reference(const spinmodel::SpinHamiltonian& h,
                                 const std::vector<double>& times_s, int w_site = 1,
                                 int v_site = 0);

} // namespace tchain::dynamics
