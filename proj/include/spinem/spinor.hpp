#pragma once

#include <cmath>
#include <complex>

#include "spinem/vec3.hpp"

namespace spinem {

/// Complex 2-spinor. The global phase is kept as-is; every observable
/// derived from it is phase-invariant.
struct Spinor {
    std::complex<double> up{1.0, 0.0};
    std::complex<double> down{0.0, 0.0};
};

inline double norm(const Spinor& s) {
    return std::sqrt(std::norm(s.up) + std::norm(s.down));
}

/// Bloch vector <sigma>. Requires |norm(s) - 1| <= 1e-9.
Vec3 pauli_expectation(const Spinor& s);

/// Exact closed-form propagator exp(-i (dt/2) omega.sigma) s, the one-step
/// solution of d<sigma>/dt = omega x <sigma>. Norm-preserving; omega = 0 is
/// the identity.
Spinor su2_rotate(const Spinor& s, const Vec3& omega, double dt);

/// Spinor whose Bloch vector is n (|n| within 1e-6 of 1; renormalized),
/// with a real, non-negative up component.
Spinor spinor_from_bloch(const Vec3& n);

}  // namespace spinem
