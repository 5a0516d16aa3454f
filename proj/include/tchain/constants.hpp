#pragma once

#include <cmath>
#include <numbers>

#include "tchain/errors.hpp"

namespace tchain {

/// Fundamental constants used to convert circuit capacitances into qubit
/// energies and frequencies. All unit conversions are centralized here:
/// capacitances live in fF, energies in J, frequencies in rad/s.
struct PhysicalConstants {
    double e;    ///< elementary charge (C)
    double hbar; ///< reduced Planck constant (J s)
    double h;    ///< Planck constant (J s)
    double phi0; ///< magnetic flux quantum h/(2e) (Wb)

    /// CODATA 2018 exact values; phi0 and hbar are derived so the
    /// phi0 == h/(2e) invariant holds to machine precision.
    static PhysicalConstants codata2018() {
        PhysicalConstants c{};
        c.e = 1.602176634e-19;
        c.h = 6.62607015e-34;
        c.hbar = c.h / (2.0 * std::numbers::pi);
        c.phi0 = c.h / (2.0 * c.e);
        return c;
    }

    void validate() const {
        if (!(e > 0.0) || !(hbar > 0.0) || !(h > 0.0) || !(phi0 > 0.0))
            throw ValidationError("PhysicalConstants: all values must be strictly positive");
        const double ref = h / (2.0 * e);
        if (!(phi0 == ref || (phi0 > 0 && std::abs(phi0 - ref) <= 4e-16 * ref)))
            throw ValidationError("PhysicalConstants: phi0 must equal h/(2e)");
    }
};

/// 1/fF -> 1/F
inline constexpr double inverse_fF_to_inverse_F = 1e15;

} // namespace tchain
