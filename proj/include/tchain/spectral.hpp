#pragma once

#include <cstdint>
#include <vector>

#include "tchain/chain_spec.hpp"
#include "tchain/spinmodel.hpp"

namespace tchain::spectral {

enum class Parity {
    Even,
    Odd,
    Unresolved,
};

/// Which symmetry block to diagonalize. n_excitations < 0 selects the
/// default sector floor(N/2); parity refers to the site-reversal symmetry
/// and may only be requested when the Hamiltonian actually commutes with
/// the reversal (checked numerically).
struct SectorSpec {
    int n_excitations = -1;
    Parity parity = Parity::Unresolved;
};

/// Ascending eigenvalues of the requested (k, parity) block.
std::vector<double> sector_eigenvalues(const spinmodel::SpinHamiltonian& h,
                                       const SectorSpec& sector);

/// True when omega and g are invariant under site reversal (to 1e-10
/// relative), i.e. [H, R] == 0 for the mirror permutation R.
bool mirror_symmetric(const spinmodel::SpinHamiltonian& h);

/// Consecutive-spacing ratio statistics,
/// r_n = min(s_{n+1}, s_n) / max(s_{n+1}, s_n), mean over all n.
/// Spacings below merge_tol * spectral width are merged first and counted
/// in n_discarded (merge_tol = 0 keeps every spacing; exact degeneracies
/// then contribute r = 0, and equal consecutive spacings give r = 1).
struct SpacingStatistics {
    std::vector<double> eigenvalues; ///< sorted input
    std::vector<double> spacings;
    std::vector<double> ratios;
    double mean_r = 0.0;
    int n_discarded = 0;
};

SpacingStatistics level_spacing_ratios(std::vector<double> eigenvalues, double merge_tol = 0.0);

/// Monte-Carlo <r> of the Gaussian Orthogonal Ensemble: real symmetric
/// matrices with iid N(0,1) off-diagonal and N(0,2) diagonal entries.
/// Self-test oracle for the ratio pipeline; deterministic for a fixed seed
/// regardless of thread count.
double goe_reference(int dim, int n_samples, std::uint64_t seed);

/// One row of the <r>-vs-capacitance-ratio table. With parity_resolved the
/// ratios of the even and odd blocks are pooled.
struct SweepRow {
    double cc_over_cq = 0.0;
    spinmodel::ModelKind kind = spinmodel::ModelKind::NonLocal;
    int sector_k = 0;
    bool parity_resolved = false;
    double mean_r = 0.0;
    int n_ratios = 0;
    int n_discarded = 0;
};

struct SweepOptions {
    SectorSpec sector;          ///< parity Unresolved = resolve when available
    bool calibrated = true;     ///< retune all qubits to omega_1
    double merge_tol = 0.0;
    int n_threads = 0;
};

/// For each capacitance ratio and model kind, build the chain from the
/// template (cc = ratio * cq), extract the default sector and compute <r>.
/// When parity resolution is available, ratios from the even and odd blocks
/// are pooled. Rows come back ordered by ratio, then kind, independent of
/// scheduling.
std::vector<SweepRow> r_vs_coupling_sweep(const capnet::ChainSpec& chain_template,
                                          const std::vector<double>& ratios,
                                          const std::vector<spinmodel::ModelKind>& kinds,
                                          const PhysicalConstants& consts,
                                          const SweepOptions& opts = {});

} // namespace tchain::spectral
