#include "tchain/chebinv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tchain::chebinv {

namespace {

// (2z)^k headroom against the ~1e308 double ceiling.
constexpr double overflow_log10_guard = 290.0;

void check_growth(int k, double z) {
    if (k > 1 && z > 1.0 && static_cast<double>(k) * std::log10(2.0 * z) > overflow_log10_guard) {
        std::ostringstream msg;
        msg << "chebyshev_u: U_" << k << "(" << z << ") would overflow double range";
        throw RangeError(msg.str());
    }
}

void validate_query(const ToeplitzInverseQuery& q) {
    if (q.n_qubits < 2)
        throw ValidationError("ToeplitzInverseQuery: n_qubits must be >= 2");
    if (q.n < 1 || q.n > q.n_qubits || q.m < 1 || q.m > q.n_qubits)
        throw ValidationError("ToeplitzInverseQuery: site index out of range");
    if (!(q.cq_fF > 0.0) || !(q.cc_fF > 0.0))
        throw ValidationError("ToeplitzInverseQuery: capacitances must be > 0");
}

} // namespace

double chebyshev_argument(double cq_fF, double cc_fF) {
    if (!(cq_fF > 0.0) || !(cc_fF > 0.0))
        throw ValidationError("chebyshev_argument: capacitances must be > 0");
    return (cq_fF + 2.0 * cc_fF) / (2.0 * cc_fF);
}

double chebyshev_u(int k, double z) {
    if (k < -1)
        throw ValidationError("chebyshev_u: degree must be >= -1");
    if (k == -1)
        return 0.0;
    if (k == 0)
        return 1.0;
    check_growth(k, z);
    double prev = 1.0;      // U_0
    double cur = 2.0 * z;   // U_1
    for (int i = 2; i <= k; ++i) {
        const double next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double toeplitz_inverse_element(const ToeplitzInverseQuery& q) {
    validate_query(q);
    const auto [n, m] = std::minmax(q.n, q.m);
    const int big = q.n_qubits;
    const double z = chebyshev_argument(q.cq_fF, q.cc_fF);
    check_growth(big, z);
    return chebyshev_u(n - 1, z) * chebyshev_u(big - m, z) / (q.cc_fF * chebyshev_u(big, z));
}

double identical_shunt_inverse_element(const ToeplitzInverseQuery& q) {
    validate_query(q);
    const auto [n, m] = std::minmax(q.n, q.m);
    const int big = q.n_qubits;
    const double z = chebyshev_argument(q.cq_fF, q.cc_fF);
    check_growth(big, z);
    const double theta_left = chebyshev_u(n - 1, z) - chebyshev_u(n - 2, z);
    const double theta_right = chebyshev_u(big - m, z) - chebyshev_u(big - m - 1, z);
    const double det =
        chebyshev_u(big, z) - 2.0 * chebyshev_u(big - 1, z) + chebyshev_u(big - 2, z);
    return theta_left * theta_right / (q.cc_fF * det);
}

double asymptotic_inverse_element(const ToeplitzInverseQuery& q) {
    validate_query(q);
    const int d = std::abs(q.m - q.n);
    return std::pow(q.cq_fF / q.cc_fF, -d) / q.cq_fF;
}

} // namespace tchain::chebinv
