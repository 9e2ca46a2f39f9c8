#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spinem/errors.hpp"
#include "spinem/hamiltonian.hpp"

namespace spinem {

/// Angular velocity generated by each enabled term, defined by writing the
/// term as (hbar/2) sigma . omega. Disabled components are zero. The dv term
/// generates the same precession as so and is folded into omega_so, so
/// enabling both doubles it, mirroring the double-counted energy.
struct PrecessionDecomposition {
    Vec3 omega_so;
    Vec3 omega_h1;
    Vec3 omega_h2;
    Vec3 omega_zeeman;
    Vec3 omega_total;
};

PrecessionDecomposition precession_vector(const ParticleState& st,
                                          const FieldSample& f,
                                          const Constants& k,
                                          const TermMask& mask, const Vec3& a);

struct TrajectorySample {
    double t = 0.0;
    Vec3 r, p, sigma;
    TermBreakdown terms;
    // Diagnostics only; the corrections are not folded back into (r, p) and
    // the serialized formats do not carry them.
    Vec3 hidden_dr;  ///< -hbar (sigma x v) / (4 m c^2) at the sample
    Vec3 hidden_dp;  ///< -hbar (sigma x a) / (4 c^2) at the sample
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
};

struct EvolutionParams {
    FieldConfiguration field;
    Constants constants;
    TermMask mask;
    AccelerationModel accel = AccelerationModel::TotalForce;
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    long sample_every = 1;
    double r_min = 1e-6;
};

/// Evolution entered the guarded region around a field singularity. Carries
/// whatever samples were recorded before the abort.
class SingularityAbort : public Error {
public:
    SingularityAbort(TrajectoryRecord partial, const std::string& message)
        : Error(message), partial_(std::move(partial)) {}

    const TrajectoryRecord& partial() const noexcept { return partial_; }

private:
    TrajectoryRecord partial_;
};

/// One Strang step of length dt > 0: RK4 half-step of (r, p) under
/// dr/dt = p/m, dp/dt = e (E + (v/c) x B) - grad V, a full spin rotation by
/// the precession vector at the midpoint state, then the second RK4
/// half-step. The spin does not back-react on the trajectory. In a Coulomb
/// configuration, |r| < r_min -> SingularPointError.
ParticleState step(const ParticleState& st, const FieldConfiguration& cfg,
                   const Constants& k, const TermMask& mask, double dt,
                   AccelerationModel accel = AccelerationModel::TotalForce,
                   double r_min = 1e-6);

/// Fixed-step evolution from t0 to t1 recording the initial state, every
/// sample_every-th step, and the final step. Deterministic: identical inputs
/// give bit-identical records on one platform. A singular step raises
/// SingularityAbort carrying the partial record.
TrajectoryRecord evolve(const EvolutionParams& params,
                        const ParticleState& initial);

}  // namespace spinem
