#include "spinem/hamiltonian.hpp"

#include <cmath>

#include "spinem/covariant_spin.hpp"
#include "spinem/errors.hpp"

namespace spinem {

namespace {

// (1/r, dV/dr) for the central potential at the particle position.
struct RadialPotential {
    double inv_r;
    double dvdr;
};

RadialPotential radial_potential(const ParticleState& st, const FieldSample& f) {
    const double rn = norm(st.r);
    if (rn == 0.0) throw SingularPointError("central-potential term evaluated at r = 0");
    return {1.0 / rn, dot(f.gradV, st.r / rn)};
}

}  // namespace

Vec3 canonical_momentum(const ParticleState& st, const FieldSample& f,
                        const Constants& k) {
    return st.p + k.e * f.A;
}

Vec3 acceleration(const ParticleState& st, const FieldSample& f,
                  const Constants& k, AccelerationModel model) {
    if (model == AccelerationModel::ElectricOnly) return k.e * f.E / k.m;
    const Vec3 v = st.p / k.m;
    return (k.e * (f.E + cross(v, f.B) / k.c) - f.gradV) / k.m;
}

double base_hamiltonian(const ParticleState& st, const FieldSample& f,
                        const Constants& k) {
    const Vec3 kinetic = canonical_momentum(st, f, k) - k.e * f.A;
    return norm2(kinetic) / (2.0 * k.m) + f.V;
}

double delta_h_spin_orbit(const ParticleState& st, const FieldSample& f,
                          const Constants& k) {
    const RadialPotential rp = radial_potential(st, f);
    const Vec3 spin = (0.5 * k.hbar) * pauli_expectation(st.spinor);
    const Vec3 angular = cross(st.r, st.p);
    return (rp.inv_r * rp.dvdr) * dot(spin, angular) /
           (2.0 * (k.m * k.m) * (k.c * k.c));
}

double delta_h_spin_orbit_velocity_form(const ParticleState& st,
                                        const FieldSample& f,
                                        const Constants& k) {
    const RadialPotential rp = radial_potential(st, f);
    const Vec3 sigma = pauli_expectation(st.spinor);
    const Vec3 v = st.p / k.m;
    return (k.hbar / (4.0 * k.m * k.c * k.c)) * (rp.inv_r * rp.dvdr) *
           dot(sigma, cross(st.r, v));
}

double delta_h1(const ParticleState& st, const FieldSample& f,
                const Constants& k) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    const double coef = (k.e * k.e * k.hbar) / (4.0 * (k.m * k.m) * (k.c * k.c));
    return coef * dot(sigma, cross(f.E, f.A));
}

double delta_h1_via_hidden_momentum(const ParticleState& st,
                                    const FieldSample& f, const Constants& k) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    const Vec3 a = k.e * f.E / k.m;
    const Vec3 dp = hidden_momentum_quantum(sigma, a, k);
    return -k.e * dot(f.A, dp) / k.m;
}

MomentProduct moment_product(const ParticleState& st, const FieldSample& f,
                             const Constants& k) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    MomentProduct out;
    out.m_em = (k.e / (2.0 * k.m * k.c)) * cross(f.E, f.A);
    out.m_e = (k.e * k.hbar / (2.0 * k.m * k.c)) * sigma;
    out.dot = dot(out.m_em, out.m_e);
    return out;
}

double delta_h2(const ParticleState& st, const FieldSample& f,
                const Constants& k, const Vec3& a) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    const Vec3 canonical = canonical_momentum(st, f, k);
    return -k.hbar * dot(sigma, cross(a, canonical)) /
           (4.0 * k.m * (k.c * k.c));
}

double delta_h2_electric_form(const ParticleState& st, const FieldSample& f,
                              const Constants& k) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    const Vec3 canonical = canonical_momentum(st, f, k);
    return -k.e * k.hbar * dot(sigma, cross(f.E, canonical)) /
           (4.0 * (k.m * k.m) * (k.c * k.c));
}

double delta_v_shift(const ParticleState& st, const FieldSample& f,
                     const Constants& k) {
    const RadialPotential rp = radial_potential(st, f);
    const Vec3 sigma = pauli_expectation(st.spinor);
    // Potential at the displaced mass center, to first order in the offset.
    // The displacement is the quantum hidden position, inlined here so this
    // term shares delta_h_spin_orbit's preconditions (|r| > 0 only).
    const Vec3 dr =
        (-k.hbar) * cross(sigma, st.p / k.m) / (4.0 * (k.m * k.c * k.c));
    return rp.dvdr * dot(dr, st.r * rp.inv_r);
}

double zeeman_term(const ParticleState& st, const FieldSample& f,
                   const Constants& k) {
    const Vec3 sigma = pauli_expectation(st.spinor);
    return -(k.e * k.hbar / (2.0 * k.m * k.c)) * dot(sigma, f.B);
}

TermBreakdown term_breakdown(const ParticleState& st, const FieldSample& f,
                             const Constants& k, const TermMask& mask,
                             const Vec3& a) {
    TermBreakdown out;
    out.h0 = base_hamiltonian(st, f, k);
    if (mask.so) out.so = delta_h_spin_orbit(st, f, k);
    if (mask.h1) out.h1 = delta_h1(st, f, k);
    if (mask.h2) out.h2 = delta_h2(st, f, k, a);
    if (mask.dv) out.dv = delta_v_shift(st, f, k);
    if (mask.zeeman) out.zeeman = zeeman_term(st, f, k);
    out.total = out.h0 + out.so + out.h1 + out.h2 + out.dv + out.zeeman;
    return out;
}

}  // namespace spinem
