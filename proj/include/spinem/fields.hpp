#pragma once

#include <utility>
#include <vector>

#include "spinem/constants.hpp"
#include "spinem/vec3.hpp"

namespace spinem {

enum class FieldFamily {
    CoulombPotential,
    UniformStatic,
    PlaneWaveCircular,
    PlaneWaveLinear,
};

const char* to_string(FieldFamily f);

/// Closed-form field configuration. Vector potentials are divergence-free
/// (radiation gauge); V is a central potential energy independent of the
/// radiation field.
struct FieldConfiguration {
    FieldFamily family = FieldFamily::UniformStatic;

    // CoulombPotential: V(r) = -Z/|r|, no electromagnetic field.
    double z_strength = 1.0;

    // UniformStatic: constant E and B, A = (1/2) B x r, V = 0.
    Vec3 e_field{};
    Vec3 b_field{};

    // Plane waves: amplitude E0 >= 0, angular frequency omega > 0,
    // propagation direction axis (any nonzero vector), and for the circular
    // family a helicity of +1 or -1.
    double amplitude = 0.0;
    double omega = 0.0;
    Vec3 axis{0.0, 0.0, 1.0};
    int helicity = 1;

    bool operator==(const FieldConfiguration&) const = default;
};

/// Throws ConfigError when family parameters are out of range.
void validate(const FieldConfiguration& cfg);

/// Every field quantity at one spacetime point.
struct FieldSample {
    Vec3 A, E, B;
    double V = 0.0;
    Vec3 gradV;
    Vec3 r;
    double t = 0.0;
};

/// Evaluate the configuration at (r, t). Wave phase theta = omega t - k.r
/// with k = (omega/c) axis_hat; the circular vector potential is
/// (E0/omega)(cos theta e1 - helicity sin theta e2) on the transverse basis
/// (e1, e2, axis_hat), so that E x A = -helicity (E0^2/(c omega)) axis_hat.
/// Coulomb evaluation at r = 0 -> SingularPointError.
FieldSample sample(const FieldConfiguration& cfg, const Vec3& r, double t,
                   const Constants& k);

/// Max |div A| over the sample points, by central differences of half-width h.
double check_coulomb_gauge(const FieldConfiguration& cfg,
                           const std::vector<std::pair<Vec3, double>>& points,
                           double h, const Constants& k);

struct FieldConsistency {
    double max_e_residual = 0.0;  ///< max-abs of E + (1/c) dA/dt, when e_checked
    double max_b_residual = 0.0;  ///< max-abs of B - curl A
    bool e_checked = false;       ///< false when E is an independent parameter
};

/// Finite-difference consistency of the closed forms over the sample points.
/// The E relation is skipped for UniformStatic, where E is set independently
/// of A.
FieldConsistency check_field_consistency(
    const FieldConfiguration& cfg,
    const std::vector<std::pair<Vec3, double>>& points, double h,
    const Constants& k);

}  // namespace spinem
