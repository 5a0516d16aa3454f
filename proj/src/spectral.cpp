#include "tchain/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tchain/sector_basis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tchain::spectral {

namespace {

constexpr double mirror_tolerance = 1e-10;

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

std::vector<double> eigenvalues_of(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("spectral: eigendecomposition failed");
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

/// Orthonormal basis of the +/- site-reversal subspace inside one sector:
/// fixed states go to the even block, pairs (s, Rs) split symmetric and
/// antisymmetric.
Eigen::MatrixXd parity_projector(const sector::SectorBasis& basis, Parity parity) {
    const int dim = basis.dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Eigen::VectorXd> cols;
    for (int i = 0; i < dim; ++i) {
        const std::uint32_t s = basis.states[static_cast<std::size_t>(i)];
        const std::uint32_t r = sector::mirror_state(s, basis.n_qubits);
        if (s == r) {
            if (parity == Parity::Even) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
                v(i) = 1.0;
                cols.push_back(std::move(v));
            }
        } else if (s < r) {
            const int j = basis.index_of(r);
            Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
            v(i) = inv_sqrt2;
            v(j) = parity == Parity::Even ? inv_sqrt2 : -inv_sqrt2;
            cols.push_back(std::move(v));
        }
    }
    Eigen::MatrixXd p(dim, static_cast<long>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        p.col(static_cast<long>(c)) = cols[c];
    return p;
}

SpacingStatistics pooled_sector_stats(const spinmodel::SpinHamiltonian& h, int k,
                                      bool resolve_parity, double merge_tol, Parity* used) {
    if (resolve_parity) {
        SectorSpec even{k, Parity::Even};
        SectorSpec odd{k, Parity::Odd};
        auto stats_even = level_spacing_ratios(sector_eigenvalues(h, even), merge_tol);
        auto stats_odd = level_spacing_ratios(sector_eigenvalues(h, odd), merge_tol);
        SpacingStatistics pooled;
        pooled.ratios = stats_even.ratios;
        pooled.ratios.insert(pooled.ratios.end(), stats_odd.ratios.begin(),
                             stats_odd.ratios.end());
        pooled.n_discarded = stats_even.n_discarded + stats_odd.n_discarded;
        double acc = 0.0;
        for (double r : pooled.ratios)
            acc += r;
        pooled.mean_r = pooled.ratios.empty() ? 0.0 : acc / static_cast<double>(pooled.ratios.size());
        if (used)
            *used = Parity::Even; // marker: parity-resolved, both blocks pooled
        return pooled;
    }
    SectorSpec spec{k, Parity::Unresolved};
    if (used)
        *used = Parity::Unresolved;
    return level_spacing_ratios(sector_eigenvalues(h, spec), merge_tol);
}

} // namespace

bool mirror_symmetric(const spinmodel::SpinHamiltonian& h) {
    const int n = h.n_qubits();
    const auto& omega = h.omega();
    const auto& g = h.g();
    const double scale = std::max({omega.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff(), 1.0});
    for (int i = 0; i < n; ++i)
        if (std::abs(omega(i) - omega(n - 1 - i)) > mirror_tolerance * scale)
            return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (std::abs(g(a, b) - g(n - 1 - a, n - 1 - b)) > mirror_tolerance * scale)
                return false;
    return true;
}

std::vector<double> sector_eigenvalues(const spinmodel::SpinHamiltonian& h,
                                       const SectorSpec& sector) {
    const int n = h.n_qubits();
    const int k = sector.n_excitations < 0 ? n / 2 : sector.n_excitations;
    if (k < 0 || k > n)
        throw ValidationError("sector_eigenvalues: excitation number out of range");
    const auto basis = sector::SectorBasis::build(n, k);
    const Eigen::MatrixXd block = sector_matrix(h, basis);

    if (sector.parity == Parity::Unresolved)
        return eigenvalues_of(block);

    if (!mirror_symmetric(h))
        throw SymmetryError(
            "sector_eigenvalues: parity requested but the Hamiltonian does not commute "
            "with site reversal");
    const Eigen::MatrixXd p = parity_projector(basis, sector.parity);
    if (p.cols() == 0)
        return {};
    return eigenvalues_of(p.transpose() * block * p);
}

SpacingStatistics level_spacing_ratios(std::vector<double> eigenvalues, double merge_tol) {
    std::sort(eigenvalues.begin(), eigenvalues.end());
    SpacingStatistics stats;
    stats.eigenvalues = std::move(eigenvalues);
    const auto& e = stats.eigenvalues;

    std::vector<double> levels;
    if (merge_tol > 0.0 && e.size() >= 2) {
        const double width = e.back() - e.front();
        levels.push_back(e.front());
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (e[i] - levels.back() < merge_tol * width)
                ++stats.n_discarded;
            else
                levels.push_back(e[i]);
        }
    } else {
        levels = e;
    }
    if (levels.size() < 3)
        throw StatisticsError("level_spacing_ratios: need at least 3 levels after filtering");

    stats.spacings.resize(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        stats.spacings[i] = levels[i + 1] - levels[i];

    stats.ratios.resize(stats.spacings.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < stats.spacings.size(); ++i) {
        const double lo = std::min(stats.spacings[i], stats.spacings[i + 1]);
        const double hi = std::max(stats.spacings[i], stats.spacings[i + 1]);
        // min/max of two equal spacings is 1, including the degenerate 0/0 case
        const double r = lo == hi ? 1.0 : lo / hi;
        stats.ratios[i] = r;
        acc += r;
    }
    stats.mean_r = acc / static_cast<double>(stats.ratios.size());
    return stats;
}

double goe_reference(int dim, int n_samples, std::uint64_t seed) {
    if (dim < 2 || n_samples < 1)
        throw ValidationError("goe_reference: need dim >= 2 and n_samples >= 1");

    std::vector<double> sums(static_cast<std::size_t>(n_samples), 0.0);
    std::vector<long> counts(static_cast<std::size_t>(n_samples), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(0))
#endif
    for (int sample = 0; sample < n_samples; ++sample) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(sample)};
        std::mt19937_64 gen(seq);
        std::normal_distribution<double> normal;
        Eigen::MatrixXd m(dim, dim);
        for (int i = 0; i < dim; ++i) {
            m(i, i) = normal(gen) * std::sqrt(2.0);
            for (int j = i + 1; j < dim; ++j) {
                const double x = normal(gen);
                m(i, j) = x;
                m(j, i) = x;
            }
        }
        const auto stats = level_spacing_ratios(eigenvalues_of(m));
        double acc = 0.0;
        for (double r : stats.ratios)
            acc += r;
        sums[static_cast<std::size_t>(sample)] = acc;
        counts[static_cast<std::size_t>(sample)] = static_cast<long>(stats.ratios.size());
    }

    double total = 0.0;
    long count = 0;
    for (int sample = 0; sample < n_samples; ++sample) {
        total += sums[static_cast<std::size_t>(sample)];
        count += counts[static_cast<std::size_t>(sample)];
    }
    return total / static_cast<double>(count);
}

std::vector<SweepRow> r_vs_coupling_sweep(const capnet::ChainSpec& chain_template,
                                          const std::vector<double>& ratios,
                                          const std::vector<spinmodel::ModelKind>& kinds,
                                          const PhysicalConstants& consts,
                                          const SweepOptions& opts) {
    if (kinds.empty())
        throw ValidationError("r_vs_coupling_sweep: need at least one model kind");
    for (double ratio : ratios)
        if (!(ratio > 0.0))
            throw ValidationError("r_vs_coupling_sweep: capacitance ratios must be > 0");

    const auto n_points = static_cast<long>(ratios.size());
    std::vector<SweepRow> rows(ratios.size() * kinds.size());
    std::string first_error;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(opts.n_threads))
#endif
    for (long i = 0; i < n_points; ++i) {
        try {
            capnet::ChainSpec spec = chain_template;
            spec.cc_fF = ratios[static_cast<std::size_t>(i)] * spec.cq_fF;
            const auto params = spinmodel::build_chain_parameters(spec, opts.calibrated, consts);
            for (std::size_t kk = 0; kk < kinds.size(); ++kk) {
                const auto h = spinmodel::build_hamiltonian(params, kinds[kk]);
                const int k =
                    opts.sector.n_excitations < 0 ? h.n_qubits() / 2 : opts.sector.n_excitations;
                const bool resolve =
                    opts.sector.parity != Parity::Unresolved ||
                    (opts.sector.parity == Parity::Unresolved && mirror_symmetric(h));
                Parity used = Parity::Unresolved;
                const auto stats =
                    pooled_sector_stats(h, k, resolve, opts.merge_tol, &used);
                SweepRow row;
                row.cc_over_cq = ratios[static_cast<std::size_t>(i)];
                row.kind = kinds[kk];
                row.sector_k = k;
                row.parity = used;
                row.mean_r = stats.mean_r;
                row.n_ratios = static_cast<int>(stats.ratios.size());
                row.n_discarded = stats.n_discarded;
                rows[static_cast<std::size_t>(i) * kinds.size() + kk] = row;
            }
        } catch (const std::exception& ex) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (first_error.empty())
                    first_error = ex.what();
            }
        }
    }
    if (!first_error.empty())
        throw NumericalError("r_vs_coupling_sweep: " + first_error);
    return rows;
}

} // namespace tchain::spectral
