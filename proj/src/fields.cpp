#include "spinem/fields.hpp"

#include <cmath>

#include "spinem/errors.hpp"

namespace spinem {

const char* to_string(FieldFamily f) {
    switch (f) {
    case FieldFamily::CoulombPotential: return "coulomb_potential";
    case FieldFamily::UniformStatic: return "uniform_static";
    case FieldFamily::PlaneWaveCircular: return "plane_wave_circular";
    case FieldFamily::PlaneWaveLinear: return "plane_wave_linear";
    }
    return "?";
}

namespace {

struct WaveBasis {
    Vec3 k_hat, e1, e2;
};

WaveBasis wave_basis(const Vec3& axis) {
    const Vec3 k = normalized(axis);
    // For axis = z this yields exactly (x, y, z).
    const Vec3 seed = std::abs(k.x) <= 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const Vec3 e1 = normalized(seed - dot(seed, k) * k);
    return {k, e1, cross(k, e1)};
}

}  // namespace

void validate(const FieldConfiguration& cfg) {
    switch (cfg.family) {
    case FieldFamily::CoulombPotential:
        if (!std::isfinite(cfg.z_strength)) throw ConfigError("Z must be finite");
        return;
    case FieldFamily::UniformStatic:
        if (!is_finite(cfg.e_field) || !is_finite(cfg.b_field)) {
            throw ConfigError("uniform E and B must be finite");
        }
        return;
    case FieldFamily::PlaneWaveCircular:
    case FieldFamily::PlaneWaveLinear:
        if (!(cfg.omega > 0.0)) throw ConfigError("wave omega must be positive");
        if (!(cfg.amplitude >= 0.0)) throw ConfigError("wave amplitude must be non-negative");
        if (norm2(cfg.axis) == 0.0 || !is_finite(cfg.axis)) {
            throw ConfigError("wave axis must be a nonzero finite vector");
        }
        if (cfg.family == FieldFamily::PlaneWaveCircular && cfg.helicity != 1 &&
            cfg.helicity != -1) {
            throw ConfigError("helicity must be +1 or -1");
        }
        return;
    }
    throw ConfigError("unknown field family");
}

FieldSample sample(const FieldConfiguration& cfg, const Vec3& r, double t,
                   const Constants& k) {
    validate(cfg);
    FieldSample out;
    out.r = r;
    out.t = t;

    switch (cfg.family) {
    case FieldFamily::CoulombPotential: {
        const double rn = norm(r);
        if (rn == 0.0) throw SingularPointError("Coulomb potential evaluated at r = 0");
        out.V = -cfg.z_strength / rn;
        out.gradV = (cfg.z_strength / (rn * rn)) * (r / rn);
        return out;
    }
    case FieldFamily::UniformStatic:
        out.A = 0.5 * cross(cfg.b_field, r);
        out.E = cfg.e_field;
        out.B = cfg.b_field;
        return out;
    case FieldFamily::PlaneWaveCircular:
    case FieldFamily::PlaneWaveLinear: {
        const WaveBasis basis = wave_basis(cfg.axis);
        const double wavenumber = cfg.omega / k.c;
        const double theta = cfg.omega * t - wavenumber * dot(basis.k_hat, r);
        const double co = std::cos(theta);
        const double si = std::sin(theta);
        const double a0 = cfg.amplitude / cfg.omega;
        const double f0 = cfg.amplitude / k.c;
        if (cfg.family == FieldFamily::PlaneWaveCircular) {
            const double h = cfg.helicity;
            out.A = a0 * (co * basis.e1 - h * si * basis.e2);
            out.E = f0 * (si * basis.e1 + h * co * basis.e2);
            out.B = f0 * (-h * co * basis.e1 + si * basis.e2);
        } else {
            out.A = a0 * co * basis.e1;
            out.E = f0 * si * basis.e1;
            out.B = f0 * si * basis.e2;
        }
        return out;
    }
    }
    throw ConfigError("unknown field family");
}

double check_coulomb_gauge(const FieldConfiguration& cfg,
                           const std::vector<std::pair<Vec3, double>>& points,
                           double h, const Constants& k) {
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    const Vec3 axes[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    double worst = 0.0;
    for (const auto& [r, t] : points) {
        sample(cfg, r, t, k);  // rejects singular sample points
        double div = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Vec3 plus = sample(cfg, r + h * axes[i], t, k).A;
            const Vec3 minus = sample(cfg, r - h * axes[i], t, k).A;
            const double dplus = i == 0 ? plus.x : (i == 1 ? plus.y : plus.z);
            const double dminus = i == 0 ? minus.x : (i == 1 ? minus.y : minus.z);
            div += (dplus - dminus) / (2.0 * h);
        }
        worst = std::max(worst, std::abs(div));
    }
    return worst;
}

FieldConsistency check_field_consistency(
    const FieldConfiguration& cfg,
    const std::vector<std::pair<Vec3, double>>& points, double h,
    const Constants& k) {
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    FieldConsistency out;
    out.e_checked = cfg.family != FieldFamily::UniformStatic;

    const Vec3 axes[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    for (const auto& [r, t] : points) {
        const FieldSample here = sample(cfg, r, t, k);

        if (out.e_checked) {
            const Vec3 a_later = sample(cfg, r, t + h, k).A;
            const Vec3 a_earlier = sample(cfg, r, t - h, k).A;
            const Vec3 dadt = (a_later - a_earlier) / (2.0 * h);
            out.max_e_residual =
                std::max(out.max_e_residual, max_abs_component(here.E + dadt / k.c));
        }

        Vec3 grad[3];  // grad[i] = d A / d x_i
        for (int i = 0; i < 3; ++i) {
            const Vec3 plus = sample(cfg, r + h * axes[i], t, k).A;
            const Vec3 minus = sample(cfg, r - h * axes[i], t, k).A;
            grad[i] = (plus - minus) / (2.0 * h);
        }
        const Vec3 curl{grad[1].z - grad[2].y, grad[2].x - grad[0].z,
                        grad[0].y - grad[1].x};
        out.max_b_residual =
            std::max(out.max_b_residual, max_abs_component(here.B - curl));
    }
    return out;
}

}  // namespace spinem
