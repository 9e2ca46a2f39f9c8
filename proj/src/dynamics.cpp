#include "spinem/dynamics.hpp"

#include <cmath>

#include "spinem/covariant_spin.hpp"
#include "spinem/errors.hpp"

namespace spinem {

PrecessionDecomposition precession_vector(const ParticleState& st,
                                          const FieldSample& f,
                                          const Constants& k,
                                          const TermMask& mask, const Vec3& a) {
    PrecessionDecomposition out;
    if (mask.so || mask.dv) {
        const double rn = norm(st.r);
        if (rn == 0.0) throw SingularPointError("spin-orbit precession evaluated at r = 0");
        const double dvdr = dot(f.gradV, st.r / rn);
        const Vec3 omega =
            (dvdr / rn) * cross(st.r, st.p) / (2.0 * (k.m * k.m) * (k.c * k.c));
        // so and dv generate the same precession; enabling both doubles it,
        // mirroring the double-counted energy.
        if (mask.so) out.omega_so += omega;
        if (mask.dv) out.omega_so += omega;
    }
    if (mask.h1) {
        out.omega_h1 =
            (k.e * k.e) * cross(f.E, f.A) / (2.0 * (k.m * k.m) * (k.c * k.c));
    }
    if (mask.h2) {
        const Vec3 canonical = st.p + k.e * f.A;
        out.omega_h2 = -cross(a, canonical) / (2.0 * k.m * (k.c * k.c));
    }
    if (mask.zeeman) {
        out.omega_zeeman = -(k.e / (k.m * k.c)) * f.B;
    }
    out.omega_total = out.omega_so + out.omega_h1 + out.omega_h2 + out.omega_zeeman;
    return out;
}

namespace {

struct Phase {
    Vec3 r, p;
};

Phase lorentz_derivative(const FieldConfiguration& cfg, const Constants& k,
                         const Phase& y, double t) {
    const FieldSample f = sample(cfg, y.r, t, k);
    const Vec3 v = y.p / k.m;
    return {v, k.e * (f.E + cross(v, f.B) / k.c) - f.gradV};
}

// Classical RK4 on (r, p).
Phase rk4_step(const FieldConfiguration& cfg, const Constants& k,
               const Phase& y, double t, double h) {
    const Phase k1 = lorentz_derivative(cfg, k, y, t);
    const Phase y2{y.r + 0.5 * h * k1.r, y.p + 0.5 * h * k1.p};
    const Phase k2 = lorentz_derivative(cfg, k, y2, t + 0.5 * h);
    const Phase y3{y.r + 0.5 * h * k2.r, y.p + 0.5 * h * k2.p};
    const Phase k3 = lorentz_derivative(cfg, k, y3, t + 0.5 * h);
    const Phase y4{y.r + h * k3.r, y.p + h * k3.p};
    const Phase k4 = lorentz_derivative(cfg, k, y4, t + h);
    return {y.r + (h / 6.0) * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
            y.p + (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

void guard_radius(const FieldConfiguration& cfg, const Vec3& r, double r_min) {
    if (cfg.family == FieldFamily::CoulombPotential && norm(r) < r_min) {
        throw SingularPointError("trajectory entered |r| < r_min around the Coulomb center");
    }
}

}  // namespace

ParticleState step(const ParticleState& st, const FieldConfiguration& cfg,
                   const Constants& k, const TermMask& mask, double dt,
                   AccelerationModel accel, double r_min) {
    if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
    guard_radius(cfg, st.r, r_min);

    Phase y{st.r, st.p};
    y = rk4_step(cfg, k, y, st.t, 0.5 * dt);
    guard_radius(cfg, y.r, r_min);

    const double t_mid = st.t + 0.5 * dt;
    const FieldSample f_mid = sample(cfg, y.r, t_mid, k);
    const ParticleState mid{y.r, y.p, t_mid, st.spinor};
    const Vec3 a = acceleration(mid, f_mid, k, accel);
    const Spinor rotated =
        su2_rotate(st.spinor, precession_vector(mid, f_mid, k, mask, a).omega_total, dt);

    y = rk4_step(cfg, k, y, t_mid, 0.5 * dt);
    guard_radius(cfg, y.r, r_min);

    return {y.r, y.p, st.t + dt, rotated};
}

TrajectoryRecord evolve(const EvolutionParams& params,
                        const ParticleState& initial) {
    if (!(params.dt > 0.0)) throw ArgumentError("dt must be positive");
    if (!(params.t1 > params.t0)) throw ArgumentError("t1 must exceed t0");
    if (params.sample_every < 1) throw ArgumentError("sample_every must be >= 1");

    const long n_steps =
        std::max(1L, std::lround((params.t1 - params.t0) / params.dt));

    TrajectoryRecord rec;
    rec.samples.reserve(static_cast<std::size_t>(n_steps / params.sample_every + 2));

    const Constants& k = params.constants;
    auto record = [&](const ParticleState& st) {
        const FieldSample f = sample(params.field, st.r, st.t, k);
        const Vec3 a = acceleration(st, f, k, params.accel);
        const Vec3 sigma = pauli_expectation(st.spinor);
        const Vec3 dr =
            (-k.hbar) * cross(sigma, st.p / k.m) / (4.0 * (k.m * k.c * k.c));
        rec.samples.push_back({st.t, st.r, st.p, sigma,
                               term_breakdown(st, f, k, params.mask, a), dr,
                               hidden_momentum_quantum(sigma, a, k)});
    };

    ParticleState st = initial;
    st.t = params.t0;
    record(st);
    for (long i = 1; i <= n_steps; ++i) {
        try {
            st = step(st, params.field, params.constants, params.mask,
                      params.dt, params.accel, params.r_min);
            if (i % params.sample_every == 0 || i == n_steps) record(st);
        } catch (const SingularPointError& e) {
            throw SingularityAbort(std::move(rec),
                                   std::string(e.what()) + " at step " +
                                       std::to_string(i));
        }
    }
    return rec;
}

}  // namespace spinem
