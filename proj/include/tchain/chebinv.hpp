#pragma once

#include "tchain/errors.hpp"

namespace tchain::chebinv {

/// Dimensionless Chebyshev argument z = (C_q + 2 C_C) / (2 C_C); z > 1 for
/// any positive capacitances, which puts U_k(z) in its growth regime.
double chebyshev_argument(double cq_fF, double cc_fF);

/// Chebyshev polynomial of the second kind by forward recurrence,
/// U_k = 2z U_{k-1} - U_{k-2}, with U_{-1} == 0 adopted so the boundary
/// factors of the identical-shunt formula need no special-casing.
/// Throws RangeError when (2z)^k would leave the double range.
double chebyshev_u(int k, double z);

/// One element request against the uniform chain of length n_qubits.
/// Sites are 1-based; n and m are normalized internally so n <= m.
struct ToeplitzInverseQuery {
    int n = 1;
    int m = 1;
    int n_qubits = 2;
    double cq_fF = 0.0;
    double cc_fF = 0.0;
};

/// Exact inverse element of the Toeplitz-edge capacitance matrix:
/// (C^-1)_{nm} = U_{n-1}(z) U_{N-m}(z) / (C_C U_N(z)), in 1/fF.
double toeplitz_inverse_element(const ToeplitzInverseQuery& q);

/// Exact inverse element for identical shunt capacitances (edge diagonals
/// C_q + C_C): with th_k = U_k - U_{k-1},
/// (C^-1)_{nm} = th_{n-1} th_{N-m} / (C_C (U_N - 2U_{N-1} + U_{N-2})).
double identical_shunt_inverse_element(const ToeplitzInverseQuery& q);

/// Power-law approximation (1/C_q) (C_q/C_C)^{-|m-n|}, valid for
/// C_C << C_q. No regime enforcement; callers compare regimes themselves.
double asymptotic_inverse_element(const ToeplitzInverseQuery& q);

} // namespace tchain::chebinv
