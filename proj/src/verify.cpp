#include "spinem/verify.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "spinem/covariant_spin.hpp"
#include "spinem/dynamics.hpp"
#include "spinem/errors.hpp"
#include "spinem/hamiltonian.hpp"

namespace spinem {

namespace {

using Rng = std::mt19937_64;

Vec3 random_vec(Rng& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

Vec3 random_unit(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v;
    do {
        v = {g(rng), g(rng), g(rng)};
    } while (norm(v) < 1e-3);
    return normalized(v);
}

// A generic state against hand-picked field values: every identity below is
// algebraic in (sigma, r, p, E, A, B, gradV), so fields need not satisfy any
// field equation here.
struct RandomState {
    ParticleState st;
    FieldSample f;
};

RandomState random_state(Rng& rng, double min_radius) {
    RandomState s;
    do {
        s.st.r = random_vec(rng, 1.5);
    } while (norm(s.st.r) <= min_radius);
    s.st.p = random_vec(rng, 0.5);  // sub-luminal: v = p/m stays below c
    s.st.spinor = spinor_from_bloch(random_unit(rng));
    s.f.A = random_vec(rng, 1.0);
    s.f.E = random_vec(rng, 1.0);
    s.f.B = random_vec(rng, 1.0);
    const double rn = norm(s.st.r);
    s.f.V = -1.0 / rn;
    s.f.gradV = s.st.r / (rn * rn * rn);
    s.f.r = s.st.r;
    return s;
}

double guarded_relative(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

CheckResult make_result(const std::string& suite, const std::string& check,
                        double residual, double tol) {
    return {suite, check, residual, tol, residual <= tol};
}

std::vector<CheckResult> suite_eq13_forms(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    double worst_forms = 0.0, worst_shift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RandomState s = random_state(rng, 0.1);
        const double tensor_form = delta_h_spin_orbit(s.st, s.f, k);
        const double velocity_form = delta_h_spin_orbit_velocity_form(s.st, s.f, k);
        const double shift = delta_v_shift(s.st, s.f, k);
        worst_forms = std::max(worst_forms, guarded_relative(tensor_form, velocity_form));
        worst_shift = std::max(worst_shift, guarded_relative(tensor_form, shift));
    }
    return {make_result("eq13-forms", "S.L form vs sigma.(r x v) form", worst_forms, 1e-13),
            make_result("eq13-forms", "potential-shift route vs spin-orbit term",
                        worst_shift, 1e-13)};
}

std::vector<CheckResult> suite_eq14_eq15(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RandomState s = random_state(rng, 0.0);
        worst = std::max(worst, guarded_relative(delta_h1(s.st, s.f, k),
                                                 delta_h1_via_hidden_momentum(s.st, s.f, k)));
    }
    return {make_result("eq14-eq15-route", "coefficient form vs hidden-momentum route",
                        worst, 1e-14)};
}

std::vector<CheckResult> suite_eq16(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RandomState s = random_state(rng, 0.0);
        const double direct = delta_h1(s.st, s.f, k);
        const double via_moments = moment_product(s.st, s.f, k).dot;
        worst = std::max(worst, guarded_relative(direct, via_moments));
    }
    return {make_result("eq16-identity", "moment product vs direct coupling", worst, 1e-14)};
}

std::vector<CheckResult> suite_eq17_eq18(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const RandomState s = random_state(rng, 0.0);
        const Vec3 a = k.e * s.f.E / k.m;
        worst = std::max(worst, guarded_relative(delta_h2(s.st, s.f, k, a),
                                                 delta_h2_electric_form(s.st, s.f, k)));
    }
    return {make_result("eq17-eq18-route", "a x P form at a = eE/m vs E x P form",
                        worst, 1e-14)};
}

std::vector<CheckResult> suite_ssc_factor(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    double worst_pos = 0.0, worst_mom = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 sigma = random_unit(rng);
        const Vec3 v = random_vec(rng, 0.5);
        const Vec3 a = random_vec(rng, 1.0);
        const Vec3 spin = (0.5 * k.hbar) * sigma;

        const Vec3 dr_q = hidden_position_quantum(sigma, v, k);
        const Vec3 dr_cl = hidden_position_classical(spin, v, k);
        const Vec3 dp_q = hidden_momentum_quantum(sigma, a, k);
        const Vec3 dp_cl = hidden_momentum_classical(spin, k.m * a, k);

        worst_pos = std::max(worst_pos,
                             max_abs_component(dr_q + 0.5 * dr_cl) /
                                 std::max(1.0, max_abs_component(dr_cl)));
        worst_mom = std::max(worst_mom,
                             max_abs_component(dp_q + 0.5 * dp_cl) /
                                 std::max(1.0, max_abs_component(dp_cl)));
    }
    return {make_result("ssc-factor-half", "hidden position: quantum = -1/2 classical",
                        worst_pos, 1e-15),
            make_result("ssc-factor-half", "hidden momentum: quantum = -1/2 classical",
                        worst_mom, 1e-15)};
}

std::vector<CheckResult> suite_c_scaling(std::uint64_t seed) {
    Rng rng(seed);
    Constants k_slow;
    Constants k_fast;
    k_fast.c = 10.0 * k_slow.c;
    double worst = 0.0;
    auto ratio_residual = [&](double slow, double fast) {
        if (slow == 0.0 && fast == 0.0) return;
        worst = std::max(worst, std::abs(slow / fast - 100.0) / 100.0);
    };
    for (int i = 0; i < 1000; ++i) {
        const RandomState s = random_state(rng, 0.1);
        const Vec3 a = random_vec(rng, 1.0);
        ratio_residual(delta_h_spin_orbit(s.st, s.f, k_slow),
                       delta_h_spin_orbit(s.st, s.f, k_fast));
        ratio_residual(delta_h1(s.st, s.f, k_slow), delta_h1(s.st, s.f, k_fast));
        ratio_residual(delta_h2(s.st, s.f, k_slow, a), delta_h2(s.st, s.f, k_fast, a));
        ratio_residual(delta_v_shift(s.st, s.f, k_slow), delta_v_shift(s.st, s.f, k_fast));

        const Vec3 sigma = pauli_expectation(s.st.spinor);
        const Vec3 v = random_vec(rng, 0.5);
        ratio_residual(max_abs_component(hidden_position_quantum(sigma, v, k_slow)),
                       max_abs_component(hidden_position_quantum(sigma, v, k_fast)));
        ratio_residual(max_abs_component(hidden_momentum_quantum(sigma, a, k_slow)),
                       max_abs_component(hidden_momentum_quantum(sigma, a, k_fast)));
    }
    return {make_result("c-scaling", "all corrections scale as 1/c^2", worst, 1e-12)};
}

std::vector<CheckResult> suite_gauge(std::uint64_t seed) {
    Rng rng(seed);
    const Constants k;
    const double h = 1e-4;

    auto points_for = [&](bool away_from_origin) {
        std::vector<std::pair<Vec3, double>> pts;
        std::uniform_real_distribution<double> ut(-5.0, 5.0);
        for (int i = 0; i < 50; ++i) {
            Vec3 r;
            do {
                r = random_vec(rng, 3.0);
            } while (away_from_origin && norm(r) < 0.5);
            pts.emplace_back(r, ut(rng));
        }
        return pts;
    };

    FieldConfiguration coulomb;
    coulomb.family = FieldFamily::CoulombPotential;
    coulomb.z_strength = 1.0;

    FieldConfiguration uniform;
    uniform.family = FieldFamily::UniformStatic;
    uniform.e_field = {0.3, -0.2, 0.1};
    uniform.b_field = {0.4, 0.5, -0.6};

    FieldConfiguration circular;
    circular.family = FieldFamily::PlaneWaveCircular;
    circular.amplitude = 1.0;
    circular.omega = 1.3;
    circular.helicity = -1;

    FieldConfiguration linear;
    linear.family = FieldFamily::PlaneWaveLinear;
    linear.amplitude = 0.8;
    linear.omega = 2.1;

    double worst_div = 0.0;
    double worst_field = 0.0;
    for (const FieldConfiguration& cfg : {coulomb, uniform, circular, linear}) {
        const auto pts = points_for(cfg.family == FieldFamily::CoulombPotential);
        worst_div = std::max(worst_div, check_coulomb_gauge(cfg, pts, h, k));
        const FieldConsistency fc = check_field_consistency(cfg, pts, h, k);
        worst_field = std::max(worst_field, fc.max_b_residual);
        if (fc.e_checked) worst_field = std::max(worst_field, fc.max_e_residual);
    }
    return {make_result("gauge", "max |div A| over all families", worst_div, 1e-6),
            make_result("gauge", "E and B against the potentials", worst_field, 1e-6)};
}

const std::vector<std::pair<std::string, std::function<std::vector<CheckResult>(std::uint64_t)>>>&
suite_table() {
    static const std::vector<
        std::pair<std::string, std::function<std::vector<CheckResult>(std::uint64_t)>>>
        table = {
            {"eq13-forms", suite_eq13_forms},
            {"eq14-eq15-route", suite_eq14_eq15},
            {"eq16-identity", suite_eq16},
            {"eq17-eq18-route", suite_eq17_eq18},
            {"ssc-factor-half", suite_ssc_factor},
            {"c-scaling", suite_c_scaling},
            {"gauge", suite_gauge},
        };
    return table;
}

}  // namespace

std::vector<std::string> verification_suites() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suite_table()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_verification_suite(const std::string& name,
                                                std::uint64_t seed) {
    for (const auto& [candidate, fn] : suite_table()) {
        if (candidate == name) return fn(seed);
    }
    throw ArgumentError("unknown verification suite '" + name + "'");
}

std::vector<CheckResult> run_all_verifications(std::uint64_t seed) {
    std::vector<CheckResult> all;
    for (const auto& [name, fn] : suite_table()) {
        for (CheckResult& r : fn(seed)) all.push_back(std::move(r));
    }
    return all;
}

}  // namespace spinem
