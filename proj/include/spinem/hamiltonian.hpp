#pragma once

#include "spinem/constants.hpp"
#include "spinem/fields.hpp"
#include "spinem/spinor.hpp"
#include "spinem/vec3.hpp"

namespace spinem {

/// Point-particle state: position, kinetic momentum p = m v, time, spin.
struct ParticleState {
    Vec3 r, p;
    double t = 0.0;
    Spinor spinor;
};

/// Canonical momentum P = p + e A.
Vec3 canonical_momentum(const ParticleState& st, const FieldSample& f,
                        const Constants& k);

/// Term selection. `so` and `dv` evaluate to the same energy; enabling both
/// double-counts the spin-orbit physics (see README).
struct TermMask {
    bool so = false;
    bool h1 = false;
    bool h2 = false;
    bool dv = false;
    bool zeeman = false;

    bool operator==(const TermMask&) const = default;
};

struct TermBreakdown {
    double h0 = 0.0;
    double so = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double dv = 0.0;
    double zeeman = 0.0;
    double total = 0.0;
};

/// Which acceleration feeds the acceleration-dependent quantities:
/// the full force over m, or the electric part e E / m alone.
enum class AccelerationModel { TotalForce, ElectricOnly };

Vec3 acceleration(const ParticleState& st, const FieldSample& f,
                  const Constants& k, AccelerationModel model);

/// Minimal-coupling energy (P - eA)^2 / 2m + V, evaluated through the
/// canonical momentum.
double base_hamiltonian(const ParticleState& st, const FieldSample& f,
                        const Constants& k);

/// Central-potential spin-orbit energy
/// (1/(2 m^2 c^2)) (1/r) (dV/dr) S.L with S = (hbar/2) sigma, L = r x p.
/// r = 0 -> SingularPointError.
double delta_h_spin_orbit(const ParticleState& st, const FieldSample& f,
                          const Constants& k);

/// The same energy through (hbar/(4 m c^2)) (1/r) (dV/dr) sigma.(r x v);
/// agrees with delta_h_spin_orbit identically.
double delta_h_spin_orbit_velocity_form(const ParticleState& st,
                                        const FieldSample& f,
                                        const Constants& k);

/// Coupling of the spin to the angular-momentum density of the field:
/// (e^2 hbar / (4 m^2 c^2)) sigma.(E x A).
double delta_h1(const ParticleState& st, const FieldSample& f,
                const Constants& k);

/// The same energy through -e A . dP / m, with dP the quantum hidden
/// momentum at a = e E / m.
double delta_h1_via_hidden_momentum(const ParticleState& st,
                                    const FieldSample& f, const Constants& k);

struct MomentProduct {
    Vec3 m_em;   ///< (e/(2 m c)) E x A
    Vec3 m_e;    ///< (e hbar/(2 m c)) sigma
    double dot;  ///< m_em . m_e, equal to delta_h1
};

MomentProduct moment_product(const ParticleState& st, const FieldSample& f,
                             const Constants& k);

/// Inertial spin-orbit energy -hbar sigma.(a x P) / (4 m c^2).
double delta_h2(const ParticleState& st, const FieldSample& f,
                const Constants& k, const Vec3& a);

/// delta_h2 at a = e E / m: -e hbar sigma.(E x P) / (4 m^2 c^2).
double delta_h2_electric_form(const ParticleState& st, const FieldSample& f,
                              const Constants& k);

/// First-order shift of the central potential from the spin-induced
/// displacement of the mass center, (dV/dr) (dr . r_hat) with dr the quantum
/// hidden position. Equals delta_h_spin_orbit identically.
/// r = 0 -> SingularPointError.
double delta_v_shift(const ParticleState& st, const FieldSample& f,
                     const Constants& k);

/// Magnetic-moment energy -(e hbar / (2 m c)) sigma.B. Not part of the
/// order-c^-2 family above; mask-gated and off by default.
double zeeman_term(const ParticleState& st, const FieldSample& f,
                   const Constants& k);

/// h0 plus every enabled correction term; disabled terms are reported as 0
/// and total is the plain left-to-right sum.
TermBreakdown term_breakdown(const ParticleState& st, const FieldSample& f,
                             const Constants& k, const TermMask& mask,
                             const Vec3& a);

}  // namespace spinem
