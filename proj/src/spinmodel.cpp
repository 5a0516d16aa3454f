#include "tchain/spinmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace tchain::spinmodel {

namespace {

constexpr double transmon_floor = 20.0; // conventional E_J/E_C lower bound

void check_positive_energies(const capnet::CapacitiveEnergies& energies,
                             const Eigen::VectorXd& ej_J) {
    const long n = energies.local_J.size();
    if (ej_J.size() != n)
        throw ValidationError("spinmodel: E_J vector size must match the energy record");
    for (long i = 0; i < n; ++i) {
        if (!(energies.local_J(i) > 0.0))
            throw ValidationError("spinmodel: charging energies must be > 0");
        if (!(ej_J(i) > 0.0))
            throw ValidationError("spinmodel: Josephson energies must be > 0");
    }
}

} // namespace

void SpinModelParameters::validate() const {
    const long n = omega.size();
    if (n < 1 || g.rows() != n || g.cols() != n || xi.size() != n)
        throw ValidationError("SpinModelParameters: inconsistent sizes");
    for (long i = 0; i < n; ++i)
        if (!(omega(i) > 0.0))
            throw ValidationError("SpinModelParameters: frequencies must be > 0");
    const double gscale = std::max(g.cwiseAbs().maxCoeff(), 1.0);
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * gscale)
        throw ValidationError("SpinModelParameters: coupling matrix must be symmetric");
    if (g.diagonal().cwiseAbs().maxCoeff() != 0.0)
        throw ValidationError("SpinModelParameters: coupling diagonal must be zero");
}

double effective_frequency(double ec_J, double ej_J, const PhysicalConstants& consts,
                           std::vector<std::string>* warnings) {
    if (!(ec_J > 0.0) || !(ej_J > 0.0))
        throw ValidationError("effective_frequency: energies must be > 0");
    if (warnings && ej_J / ec_J < transmon_floor) {
        std::ostringstream msg;
        msg << "transmon regime marginal: E_J/E_C = " << ej_J / ec_J << " < " << transmon_floor;
        warnings->push_back(msg.str());
    }
    return (std::sqrt(8.0 * ec_J * ej_J) - ec_J) / consts.hbar;
}

Eigen::MatrixXd coupling_matrix(const capnet::CapacitiveEnergies& energies,
                                const Eigen::VectorXd& ej_J, const PhysicalConstants& consts) {
    check_positive_energies(energies, ej_J);
    const long n = energies.local_J.size();
    Eigen::VectorXd xi(n);
    for (long i = 0; i < n; ++i)
        xi(i) = std::sqrt(2.0 * energies.local_J(i) / ej_J(i));

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b) {
            const double val =
                4.0 * energies.pairwise_J(a, b) / (consts.hbar * std::sqrt(4.0 * xi(a) * xi(b)));
            g(a, b) = val;
            g(b, a) = val;
        }
    return g;
}

Eigen::VectorXd calibrate_resonance(const capnet::CapacitiveEnergies& energies,
                                    double target_omega, const PhysicalConstants& consts) {
    if (!(target_omega > 0.0))
        throw ValidationError("calibrate_resonance: target frequency must be > 0");
    const long n = energies.local_J.size();
    Eigen::VectorXd ej(n);
    for (long i = 0; i < n; ++i) {
        const double ec = energies.local_J(i);
        if (!(ec > 0.0))
            throw ValidationError("calibrate_resonance: charging energies must be > 0");
        const double s = consts.hbar * target_omega + ec;
        ej(i) = s * s / (8.0 * ec);
    }
    return ej;
}

SpinModelParameters build_parameters(const capnet::CapacitiveEnergies& energies,
                                     const Eigen::VectorXd& ej_J,
                                     const PhysicalConstants& consts) {
    check_positive_energies(energies, ej_J);
    const long n = energies.local_J.size();

    SpinModelParameters p;
    p.omega.resize(n);
    p.xi.resize(n);
    for (long i = 0; i < n; ++i) {
        p.omega(i) = effective_frequency(energies.local_J(i), ej_J(i), consts, &p.warnings);
        p.xi(i) = std::sqrt(2.0 * energies.local_J(i) / ej_J(i));
        if (!(p.xi(i) > 0.0 && p.xi(i) < 1.0)) {
            std::ostringstream msg;
            msg << "xi_" << i + 1 << " = " << p.xi(i) << " outside (0, 1)";
            p.warnings.push_back(msg.str());
        }
    }
    p.g = coupling_matrix(energies, ej_J, consts);

    double acc = 0.0;
    for (long i = 0; i + 1 < n; ++i)
        acc += p.g(i, i + 1);
    p.mean_nn_coupling = n > 1 ? acc / static_cast<double>(n - 1) : 0.0;
    p.validate();
    return p;
}

SpinModelParameters build_chain_parameters(const capnet::ChainSpec& spec, bool calibrated,
                                           const PhysicalConstants& consts) {
    const auto c = capnet::build_capacitance_matrix(spec);
    const auto energies = capnet::capacitive_energies(capnet::invert_numeric(c), consts);

    Eigen::VectorXd ej = Eigen::Map<const Eigen::VectorXd>(
        spec.ej_zero_flux_J.data(), static_cast<long>(spec.ej_zero_flux_J.size()));
    if (calibrated) {
        const double omega1 = effective_frequency(energies.local_J(0), ej(0), consts);
        ej = calibrate_resonance(energies, omega1, consts);
    }
    return build_parameters(energies, ej, consts);
}

SpinHamiltonian::SpinHamiltonian(Eigen::VectorXd omega, Eigen::MatrixXd g, ModelKind kind,
                                 double mean_nn_coupling)
    : omega_(std::move(omega)), g_(std::move(g)), kind_(kind),
      mean_nn_coupling_(mean_nn_coupling) {
    const int n = n_qubits();
    if (n < 1)
        throw ValidationError("SpinHamiltonian: need at least one qubit");
    if (n > max_qubits) {
        std::ostringstream msg;
        msg << "SpinHamiltonian: " << n << " qubits exceeds the " << max_qubits
            << "-qubit capacity ceiling";
        throw CapacityError(msg.str());
    }
}

Eigen::MatrixXd SpinHamiltonian::dense() const {
    const int n = n_qubits();
    const long dim = 1L << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (long s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int q = 0; q < n; ++q)
            if (s >> q & 1)
                diag += omega_(q);
        h(s, s) = diag;
        // Exchange: move the excitation on qubit a to empty qubit b.
        for (int a = 0; a < n; ++a) {
            if (!(s >> a & 1))
                continue;
            for (int b = 0; b < n; ++b) {
                if (a == b || (s >> b & 1) || g_(a, b) == 0.0)
                    continue;
                const long s2 = (s & ~(1L << a)) | (1L << b);
                h(s2, s) += g_(a, b);
            }
        }
    }
    return h;
}

SpinHamiltonian build_hamiltonian(const SpinModelParameters& params, ModelKind kind) {
    params.validate();
    Eigen::MatrixXd g = params.g;
    if (kind == ModelKind::NearestNeighbor) {
        const long n = g.rows();
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                if (std::abs(a - b) != 1)
                    g(a, b) = 0.0;
    }
    return SpinHamiltonian(params.omega, std::move(g), kind, params.mean_nn_coupling);
}

RwaReport rwa_report(const SpinModelParameters& params, double threshold) {
    params.validate();
    RwaReport report;
    report.threshold = threshold;
    const long n = params.omega.size();
    for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b) {
            if (params.g(a, b) == 0.0)
                continue;
            const double ratio =
                std::abs(params.g(a, b)) / std::min(params.omega(a), params.omega(b));
            if (ratio > report.max_ratio) {
                report.max_ratio = ratio;
                report.site_a = static_cast<int>(a) + 1;
                report.site_b = static_cast<int>(b) + 1;
            }
        }
    report.warn = report.max_ratio > threshold;
    return report;
}

} // namespace tchain::spinmodel
