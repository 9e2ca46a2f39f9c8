#pragma once

#include "spinem/constants.hpp"
#include "spinem/four_vector.hpp"
#include "spinem/vec3.hpp"

namespace spinem {

/// Spin supplementary condition: which components of the spin tensor are
/// physical for a moving particle. Moller picks the particle rest frame,
/// Dirac the inertial (nonrotating) frame.
enum class SSCKind { Moller, Dirac };

/// Offset between the centers of mass seen in the rest frame and in a frame
/// moving with velocity v: (S x v) / (m c^2). Requires |v| < c.
Vec3 hidden_position_classical(const Vec3& spin, const Vec3& velocity,
                               const Constants& k);

/// Momentum carried by the hidden position under an external force F:
/// (S x F) / (m c^2), equivalently (S x a) / c^2 with a = F/m.
Vec3 hidden_momentum_classical(const Vec3& spin, const Vec3& force,
                               const Constants& k);

/// Bloch-vector hidden position -hbar (sigma x v) / (4 m c^2); carries the
/// inertial-frame factor -1/2 relative to the classical form at
/// S = (hbar/2) sigma. Requires |v| < c.
Vec3 hidden_position_quantum(const Vec3& sigma, const Vec3& velocity,
                             const Constants& k);

/// Canonical-momentum shift -hbar (sigma x a) / (4 c^2).
Vec3 hidden_momentum_quantum(const Vec3& sigma, const Vec3& acceleration,
                             const Constants& k);

/// Dimensionless 4-velocity (gamma, gamma beta). Requires |beta| < 1.
FourVector u_from_beta(const Vec3& beta);

/// Lab-frame spin 4-vector for a rest-frame spin s and particle velocity
/// beta: the boost of (0, s). Minkowski-orthogonal to u_from_beta(beta).
FourVector boost_rest_spin(const Vec3& rest_spin, const Vec3& beta);

// The two contractions below use the permutation symbol with value +1 on
// (0,1,2,3) for the raised and the lowered index string alike; combined
// with the (+,-,-,-) metric on the vector arguments this makes
// vector -> tensor -> vector the identity on spins orthogonal to U.

/// Spin tensor from the spin 4-vector: Levi-Civita contraction over the
/// lowered components of s and u. Requires u.u = 1 within 1e-9.
AntisymTensor4 spin_tensor_from_vector(const FourVector& s, const FourVector& u);

/// Spin 4-vector from the tensor: the half-weighted contraction with the
/// contravariant components of t and u, returned with the free index raised.
/// Requires u.u = 1 within 1e-9.
FourVector spin_vector_from_tensor(const AntisymTensor4& t, const FourVector& u);

/// Residual of the rest-frame condition S^{ab} U_b = 0. Identically zero for
/// tensors built by spin_tensor_from_vector.
FourVector ssc_residual_moller(const AntisymTensor4& t, const FourVector& u);

/// Residual of the inertial-frame condition 2 S^{i0} + S^{ij} U_j = 0.
/// U_j enters with the spatial components of u as stored.
Vec3 ssc_residual_dirac(const AntisymTensor4& t, const FourVector& u);

}  // namespace spinem
