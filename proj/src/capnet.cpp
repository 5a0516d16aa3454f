#include "tchain/capnet.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace tchain::capnet {

void ChainSpec::validate() const {
    if (n_qubits < 2)
        throw ValidationError("ChainSpec: n_qubits must be >= 2");
    if (!(cq_fF > 0.0))
        throw ValidationError("ChainSpec: cq_fF must be > 0");
    if (!(cc_fF > 0.0))
        throw ValidationError("ChainSpec: cc_fF must be > 0");
    if (ej_zero_flux_J.size() != static_cast<std::size_t>(n_qubits))
        throw ValidationError("ChainSpec: ej_zero_flux_J must have one entry per qubit");
    for (double ej : ej_zero_flux_J)
        if (!(ej > 0.0))
            throw ValidationError("ChainSpec: all Josephson energies must be > 0");

    std::set<std::pair<int, int>> seen;
    for (const auto& link : parasitic_links) {
        if (link.n < 1 || link.n > n_qubits || link.m < 1 || link.m > n_qubits)
            throw ValidationError("ChainSpec: parasitic link site out of range");
        if (std::abs(link.n - link.m) < 2)
            throw ValidationError("ChainSpec: parasitic links require |n - m| >= 2");
        if (!(link.c_fF >= 0.0))
            throw ValidationError("ChainSpec: parasitic capacitance must be >= 0");
        auto key = std::minmax(link.n, link.m);
        if (!seen.insert(key).second)
            throw ValidationError("ChainSpec: duplicate parasitic link");
    }
}

CapacitanceMatrix build_capacitance_matrix(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n_qubits;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);

    // Qubit capacitances to ground. Under ToeplitzEdges the edge qubits
    // carry C_q + C_C so that every diagonal ends up at C_q + 2C_C.
    for (int i = 0; i < n; ++i)
        c(i, i) = spec.cq_fF;
    if (spec.edge_convention == EdgeConvention::ToeplitzEdges) {
        c(0, 0) += spec.cc_fF;
        c(n - 1, n - 1) += spec.cc_fF;
    }

    for (int i = 0; i + 1 < n; ++i) {
        c(i, i + 1) -= spec.cc_fF;
        c(i + 1, i) -= spec.cc_fF;
        c(i, i) += spec.cc_fF;
        c(i + 1, i + 1) += spec.cc_fF;
    }

    for (const auto& link : spec.parasitic_links) {
        const int a = link.n - 1;
        const int b = link.m - 1;
        c(a, b) -= link.c_fF;
        c(b, a) -= link.c_fF;
        c(a, a) += link.c_fF;
        c(b, b) += link.c_fF;
    }
    return CapacitanceMatrix{std::move(c)};
}

InverseCapacitanceMatrix invert_numeric(const CapacitanceMatrix& c) {
    const auto& m = c.fF;
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ValidationError("invert_numeric: matrix must be square and non-empty");
    const double scale = m.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("invert_numeric: matrix must be symmetric");

    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        std::ostringstream msg;
        msg << "invert_numeric: matrix is not positive definite"
            << " (eigenvalue range [" << es.eigenvalues().minCoeff() << ", "
            << es.eigenvalues().maxCoeff() << "] fF)";
        throw NumericalError(msg.str());
    }

    const long n = m.rows();
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    inv = ((inv + inv.transpose()) * 0.5).eval();

    const double residual = (m * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        std::ostringstream msg;
        msg << "invert_numeric: inversion residual " << residual
            << " exceeds 1e-10; matrix is too ill-conditioned";
        throw NumericalError(msg.str());
    }
    return InverseCapacitanceMatrix{std::move(inv)};
}

CapacitiveEnergies capacitive_energies(const InverseCapacitanceMatrix& cinv,
                                       const PhysicalConstants& consts) {
    consts.validate();
    const auto& inv = cinv.per_fF;
    if (inv.rows() != inv.cols() || inv.rows() < 1)
        throw ValidationError("capacitive_energies: matrix must be square and non-empty");
    const long n = inv.rows();
    for (long i = 0; i < n; ++i)
        if (!(inv(i, i) > 0.0))
            throw ValidationError("capacitive_energies: inverse diagonal must be positive");

    const double pref = consts.e * consts.e * inverse_fF_to_inverse_F / 2.0;
    CapacitiveEnergies e;
    e.local_J = pref * inv.diagonal();
    e.pairwise_J = pref * inv;
    e.pairwise_J.diagonal().setZero();
    return e;
}

std::vector<double> edge_detuning_profile(const CapacitiveEnergies& energies) {
    const long n = energies.local_J.size();
    if (n < 2)
        throw ValidationError("edge_detuning_profile: need at least 2 qubits");
    const double e1 = energies.local_J(0);
    std::vector<double> profile(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        profile[static_cast<std::size_t>(i)] = energies.local_J(i) / e1 - 1.0;
    profile[0] = 0.0;
    return profile;
}

} // namespace tchain::capnet
