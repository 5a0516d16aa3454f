#include "tchain/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tchain::dynamics {

namespace {

using Complex = std::complex<double>;

constexpr double transfer_noise_floor = 1e-6;
constexpr int exact_trace_default_ceiling = 12;
constexpr double imag_tolerance = 1e-8;

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

/// +1/-1 of sigma_z on `site` (1-based) for each basis state of the chain.
double sigma_z_value(std::uint32_t state, int site) {
    return (state >> (site - 1)) & 1 ? 1.0 : -1.0;
}

void validate_site(int site, int n) {
    if (site < 1 || site > n)
        throw ValidationError("otoc: operator site out of range");
}

std::vector<double> normalized_times(const std::vector<double>& times_s, double gbar) {
    std::vector<double> out(times_s.size());
    for (std::size_t i = 0; i < times_s.size(); ++i)
        out[i] = times_s[i] * gbar;
    return out;
}

struct SectorEigen {
    sector::SectorBasis basis;
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
};

std::vector<SectorEigen> diagonalize_sectors(const spinmodel::SpinHamiltonian& h) {
    const int n = h.n_qubits();
    std::vector<SectorEigen> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        SectorEigen se;
        se.basis = sector::SectorBasis::build(n, k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sector_matrix(h, se.basis));
        if (solver.info() != Eigen::Success)
            throw NumericalError("otoc: sector eigendecomposition failed");
        se.evals = solver.eigenvalues();
        se.evecs = solver.eigenvectors();
        out.push_back(std::move(se));
    }
    return out;
}

OtocSeries otoc_exact(const spinmodel::SpinHamiltonian& h, const std::vector<double>& times_s,
                      int w_site, int v_site, int n_threads) {
    const int n = h.n_qubits();
    const double dim_full = std::pow(2.0, n);
    const auto sectors = diagonalize_sectors(h);

    // Time-independent pieces: W and V rotated into each sector eigenbasis.
    struct SectorOp {
        Eigen::MatrixXd what;
        Eigen::MatrixXcd vhat;
        Eigen::VectorXd evals;
    };
    std::vector<SectorOp> ops;
    ops.reserve(sectors.size());
    for (const auto& se : sectors) {
        const int dim = se.basis.dim();
        Eigen::VectorXd w(dim), v(dim);
        for (int i = 0; i < dim; ++i) {
            w(i) = sigma_z_value(se.basis.states[static_cast<std::size_t>(i)], w_site);
            v(i) = sigma_z_value(se.basis.states[static_cast<std::size_t>(i)], v_site);
        }
        SectorOp op;
        op.what = se.evecs.transpose() * w.asDiagonal() * se.evecs;
        op.vhat = (se.evecs.transpose() * v.asDiagonal() * se.evecs).cast<Complex>();
        op.evals = se.evals;
        ops.push_back(std::move(op));
    }

    const auto n_times = static_cast<long>(times_s.size());
    std::vector<double> values(times_s.size());
    std::atomic<bool> imag_bad{false};
    std::atomic<double> imag_worst{0.0};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#endif
    for (long i = 0; i < n_times; ++i) {
        const double t = times_s[static_cast<std::size_t>(i)];
        Complex total{0.0, 0.0};
        for (const auto& op : ops) {
            const long dim = op.evals.size();
            Eigen::VectorXcd phase(dim);
            for (long a = 0; a < dim; ++a)
                phase(a) = std::polar(1.0, op.evals(a) * t);
            // A = W(t) in the eigenbasis: A_ab = what_ab e^{i(l_a - l_b)t}
            Eigen::MatrixXcd a_mat(dim, dim);
            for (long b = 0; b < dim; ++b) {
                const Complex pb = std::conj(phase(b));
                for (long r = 0; r < dim; ++r)
                    a_mat(r, b) = op.what(r, b) * phase(r) * pb;
            }
            Eigen::MatrixXcd b_mat;
            b_mat.noalias() = a_mat * op.vhat;
            total += (b_mat.array() * b_mat.transpose().array()).sum();
        }
        const double expectation_im = total.imag() / dim_full;
        if (std::abs(expectation_im) > imag_tolerance) {
            imag_bad.store(true);
            imag_worst.store(std::abs(expectation_im));
        }
        values[static_cast<std::size_t>(i)] = 2.0 * (1.0 - total.real() / dim_full);
    }
    if (imag_bad.load()) {
        std::ostringstream msg;
        msg << "otoc: imaginary part of the trace reached " << imag_worst.load()
            << " (> " << imag_tolerance << "); this indicates a bug";
        throw NumericalError(msg.str());
    }

    OtocSeries series;
    series.times_s = times_s;
    series.times_norm = normalized_times(times_s, h.mean_nn_coupling());
    series.values = std::move(values);
    series.w_site = w_site;
    series.v_site = v_site;
    return series;
}

/// Haar-random state via normalized iid complex Gaussians; one generator
/// per sample index so results do not depend on evaluation order.
Eigen::VectorXcd random_state(int n_qubits, std::uint64_t seed, int sample) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal;
    const long dim = 1L << n_qubits;
    Eigen::VectorXcd v(dim);
    for (long i = 0; i < dim; ++i)
        v(i) = Complex(normal(gen), normal(gen));
    v.normalize();
    return v;
}

OtocSeries otoc_stochastic(const spinmodel::SpinHamiltonian& h,
                           const std::vector<double>& times_s, const OtocOptions& opts,
                           int w_site, int v_site, int n_threads) {
    if (opts.n_samples < 1)
        throw ValidationError("otoc: stochastic trace needs at least one sample");
    const int n = h.n_qubits();
    const long dim_full = 1L << n;
    const auto sectors = diagonalize_sectors(h);

    std::vector<Eigen::VectorXcd> base;
    base.reserve(static_cast<std::size_t>(opts.n_samples));
    for (int j = 0; j < opts.n_samples; ++j)
        base.push_back(random_state(n, opts.seed, j));

    Eigen::VectorXd w_diag(dim_full), v_diag(dim_full);
    for (long s = 0; s < dim_full; ++s) {
        w_diag(s) = sigma_z_value(static_cast<std::uint32_t>(s), w_site);
        v_diag(s) = sigma_z_value(static_cast<std::uint32_t>(s), v_site);
    }

    const auto apply_propagator = [&sectors](Eigen::VectorXcd& psi, double t, double sign) {
        for (const auto& se : sectors) {
            const int dim = se.basis.dim();
            Eigen::VectorXcd sub(dim);
            for (int i = 0; i < dim; ++i)
                sub(i) = psi(se.basis.states[static_cast<std::size_t>(i)]);
            Eigen::VectorXcd coeff = se.evecs.transpose() * sub;
            for (int a = 0; a < dim; ++a)
                coeff(a) *= std::polar(1.0, sign * se.evals(a) * t);
            sub = se.evecs * coeff;
            for (int i = 0; i < dim; ++i)
                psi(se.basis.states[static_cast<std::size_t>(i)]) = sub(i);
        }
    };

    const auto n_times = static_cast<long>(times_s.size());
    std::vector<double> values(times_s.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#endif
    for (long i = 0; i < n_times; ++i) {
        const double t = times_s[static_cast<std::size_t>(i)];
        Complex acc{0.0, 0.0};
        for (int j = 0; j < opts.n_samples; ++j) {
            Eigen::VectorXcd psi = base[static_cast<std::size_t>(j)];
            // W(t) V W(t) V |phi>, right to left; U(-t) is the dagger.
            psi.array() *= v_diag.array();
            apply_propagator(psi, t, -1.0);
            psi.array() *= w_diag.array();
            apply_propagator(psi, t, +1.0);
            psi.array() *= v_diag.array();
            apply_propagator(psi, t, -1.0);
            psi.array() *= w_diag.array();
            apply_propagator(psi, t, +1.0);
            acc += base[static_cast<std::size_t>(j)].dot(psi);
        }
        acc /= static_cast<double>(opts.n_samples);
        values[static_cast<std::size_t>(i)] = 2.0 * (1.0 - acc.real());
    }

    OtocSeries series;
    series.times_s = times_s;
    series.times_norm = normalized_times(times_s, h.mean_nn_coupling());
    series.values = std::move(values);
    series.w_site = w_site;
    series.v_site = v_site;
    series.stochastic = true;
    return series;
}

} // namespace

Eigen::MatrixXd single_excitation_block(const spinmodel::SpinHamiltonian& h) {
    Eigen::MatrixXd block = h.g();
    block.diagonal() = h.omega();
    return block;
}

TransferResult evolve_transfer(const spinmodel::SpinHamiltonian& h, double t_max_s, double dt_s) {
    if (!(t_max_s > 0.0) || !(dt_s > 0.0) || dt_s > t_max_s)
        throw ValidationError("evolve_transfer: need 0 < dt <= t_max");
    const int n = h.n_qubits();
    if (n < 2)
        throw ValidationError("evolve_transfer: need at least 2 qubits");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(single_excitation_block(h));
    if (solver.info() != Eigen::Success)
        throw NumericalError("evolve_transfer: eigendecomposition failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();
    // <N| e^{-iHt} |1> = sum_a Q_{N,a} Q_{1,a} e^{-i l_a t}
    const Eigen::VectorXd weight =
        solver.eigenvectors().row(n - 1).cwiseProduct(solver.eigenvectors().row(0));

    TransferResult result;
    const auto n_steps = static_cast<long>(std::floor(t_max_s / dt_s + 1e-9)) + 1;
    result.times_s.resize(static_cast<std::size_t>(n_steps));
    result.population.resize(static_cast<std::size_t>(n_steps));
    for (long i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt_s;
        Complex amp{0.0, 0.0};
        for (long a = 0; a < evals.size(); ++a)
            amp += weight(a) * std::polar(1.0, -evals(a) * t);
        result.times_s[static_cast<std::size_t>(i)] = t;
        result.population[static_cast<std::size_t>(i)] = std::norm(amp);
    }
    result.times_norm = normalized_times(result.times_s, h.mean_nn_coupling());

    const auto& p = result.population;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p[i] > p[i - 1] && p[i] >= p[i + 1] && p[i] > transfer_noise_floor) {
            const double y0 = p[i - 1], y1 = p[i], y2 = p[i + 1];
            const double denom = y0 - 2.0 * y1 + y2;
            const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
            result.tau0_s = result.times_s[i] + shift * dt_s;
            result.p_max = y1 - 0.25 * (y0 - y2) * shift;
            result.tau0_norm = *result.tau0_s * h.mean_nn_coupling();
            break;
        }
    }
    if (!result.p_max && p.size() >= 2 && p.back() > transfer_noise_floor &&
        p.back() > p[p.size() - 2]) {
        throw NumericalError(
            "evolve_transfer: population still rising at t_max without a bracketed "
            "maximum; increase t_max or decrease dt");
    }
    return result;
}

std::complex<double> infinite_temperature_expectation(const Eigen::MatrixXcd& a) {
    const long dim = a.rows();
    if (dim < 1 || a.cols() != dim)
        throw ValidationError("infinite_temperature_expectation: matrix must be square");
    if (!std::has_single_bit(static_cast<std::uint64_t>(dim)))
        throw ValidationError(
            "infinite_temperature_expectation: dimension must be a power of two");
    return a.trace() / static_cast<double>(dim);
}

OtocSeries otoc_series(const spinmodel::SpinHamiltonian& h, const std::vector<double>& times_s,
                       const OtocOptions& opts) {
    const int n = h.n_qubits();
    const int w_site = opts.w_site;
    const int v_site = opts.v_site == 0 ? n : opts.v_site;
    validate_site(w_site, n);
    validate_site(v_site, n);
    if (times_s.empty())
        throw ValidationError("otoc: empty time grid");

    const int threads = resolve_threads(opts.n_threads);
    switch (opts.trace) {
    case OtocTraceMode::Exact:
        return otoc_exact(h, times_s, w_site, v_site, threads);
    case OtocTraceMode::Stochastic:
        return otoc_stochastic(h, times_s, opts, w_site, v_site, threads);
    case OtocTraceMode::Auto:
    default:
        if (n <= exact_trace_default_ceiling)
            return otoc_exact(h, times_s, w_site, v_site, threads);
        return otoc_stochastic(h, times_s, opts, w_site, v_site, threads);
    }
}

OtocSeries otoc_series_reference(const spinmodel::SpinHamiltonian& h,
                                 const std::vector<double>& times_s, int w_site, int v_site) {
    const int n = h.n_qubits();
    if (v_site == 0)
        v_site = n;
    validate_site(w_site, n);
    validate_site(v_site, n);
    const long dim = 1L << n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
    if (solver.info() != Eigen::Success)
        throw NumericalError("otoc_series_reference: eigendecomposition failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& q = solver.eigenvectors();

    Eigen::VectorXd w(dim), v(dim);
    for (long s = 0; s < dim; ++s) {
        w(s) = sigma_z_value(static_cast<std::uint32_t>(s), w_site);
        v(s) = sigma_z_value(static_cast<std::uint32_t>(s), v_site);
    }
    const Eigen::MatrixXd what = q.transpose() * w.asDiagonal() * q;
    const Eigen::MatrixXcd vhat = (q.transpose() * v.asDiagonal() * q).cast<Complex>();

    OtocSeries series;
    series.times_s = times_s;
    series.times_norm = normalized_times(times_s, h.mean_nn_coupling());
    series.values.resize(times_s.size());
    series.w_site = w_site;
    series.v_site = v_site;

    Eigen::MatrixXcd a_mat(dim, dim), b_mat(dim, dim);
    for (std::size_t i = 0; i < times_s.size(); ++i) {
        const double t = times_s[i];
        Eigen::VectorXcd phase(dim);
        for (long a = 0; a < dim; ++a)
            phase(a) = std::polar(1.0, evals(a) * t);
        for (long b = 0; b < dim; ++b) {
            const Complex pb = std::conj(phase(b));
            for (long r = 0; r < dim; ++r)
                a_mat(r, b) = what(r, b) * phase(r) * pb;
        }
        b_mat.noalias() = a_mat * vhat;
        const Complex total = (b_mat.array() * b_mat.transpose().array()).sum();
        if (std::abs(total.imag() / static_cast<double>(dim)) > imag_tolerance)
            throw NumericalError("otoc_series_reference: imaginary trace; this indicates a bug");
        series.values[i] = 2.0 * (1.0 - total.real() / static_cast<double>(dim));
    }
    return series;
}

} // namespace tchain::dynamics
