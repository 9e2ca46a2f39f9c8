#include "test_support.hpp"

#include <cmath>
#include <random>

#include "spinem/dynamics.hpp"
#include "spinem/errors.hpp"

using namespace spinem;

namespace {

constexpr double kTau = 6.283185307179586;

FieldConfiguration uniform_cfg(const Vec3& e, const Vec3& b) {
    FieldConfiguration cfg;
    cfg.family = FieldFamily::UniformStatic;
    cfg.e_field = e;
    cfg.b_field = b;
    return cfg;
}

FieldConfiguration coulomb_cfg(double z = 1.0) {
    FieldConfiguration cfg;
    cfg.family = FieldFamily::CoulombPotential;
    cfg.z_strength = z;
    return cfg;
}

// Electron (e = -1, m = c = B = 1) started with p = x: the momentum rotates
// counterclockwise at unit angular velocity and the position follows
// r(t) = r0 + (sin t, 1 - cos t, 0).
Vec3 cyclotron_position(double t) { return {std::sin(t), 1.0 - std::cos(t), 0.0}; }

Vec3 random_vec(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

// Unwrapped azimuth advance of the Bloch vector across a record.
double accumulated_azimuth(const TrajectoryRecord& rec) {
    double total = 0.0;
    double prev = std::atan2(rec.samples.front().sigma.y, rec.samples.front().sigma.x);
    for (std::size_t i = 1; i < rec.samples.size(); ++i) {
        const double cur = std::atan2(rec.samples[i].sigma.y, rec.samples[i].sigma.x);
        double d = cur - prev;
        while (d > M_PI) d -= kTau;
        while (d < -M_PI) d += kTau;
        total += d;
        prev = cur;
    }
    return total;
}

}  // namespace

TEST_CASE("precession vector examples") {
    Constants k;
    k.e = 1.0;
    ParticleState st;
    st.spinor = spinor_from_bloch({0, 0, 1});
    FieldSample f;
    f.E = {1, 0, 0};
    f.A = {0, 1, 0};

    TermMask h1_only;
    h1_only.h1 = true;
    const PrecessionDecomposition pd = precession_vector(st, f, k, h1_only, {});
    CHECK(pd.omega_total.x == 0.0);
    CHECK(pd.omega_total.y == 0.0);
    CHECK(pd.omega_total.z == doctest::Approx(0.5).epsilon(1e-14));

    const PrecessionDecomposition none = precession_vector(st, f, k, TermMask{}, {});
    CHECK(norm(none.omega_total) == 0.0);
}

TEST_CASE("each term energy equals (hbar/2) sigma . omega") {
    const Constants k;
    std::mt19937_64 rng(139);
    for (int i = 0; i < 1000; ++i) {
        ParticleState st;
        do {
            st.r = random_vec(rng, 1.5);
        } while (norm(st.r) < 0.2);
        st.p = random_vec(rng, 0.5);
        st.spinor = spinor_from_bloch(normalized(random_vec(rng, 1.0) + Vec3{0, 0, 2}));
        FieldSample f;
        f.A = random_vec(rng, 1.0);
        f.E = random_vec(rng, 1.0);
        f.B = random_vec(rng, 1.0);
        const double rn = norm(st.r);
        f.V = -1.0 / rn;
        f.gradV = st.r / (rn * rn * rn);
        const Vec3 a = random_vec(rng, 1.0);

        const Vec3 sigma = pauli_expectation(st.spinor);
        TermMask so, h1, h2, dv, zeeman;
        so.so = h1.h1 = h2.h2 = dv.dv = zeeman.zeeman = true;
        const struct {
            TermMask mask;
            double energy;
        } cases[] = {
            {so, delta_h_spin_orbit(st, f, k)},
            {h1, delta_h1(st, f, k)},
            {h2, delta_h2(st, f, k, a)},
            {dv, delta_v_shift(st, f, k)},
            {zeeman, zeeman_term(st, f, k)},
        };
        for (const auto& c : cases) {
            const PrecessionDecomposition pd = precession_vector(st, f, k, c.mask, a);
            const double dual = 0.5 * k.hbar * dot(sigma, pd.omega_total);
            CHECK(std::abs(dual - c.energy) <=
                  1e-14 * std::max({1.0, std::abs(dual), std::abs(c.energy)}));
        }
    }
}

TEST_CASE("free particle moves in a straight line with frozen spin") {
    EvolutionParams params;
    params.field = uniform_cfg({}, {});
    params.t1 = 2.0;
    params.dt = 0.01;
    params.sample_every = 50;

    ParticleState init;
    init.p = {0.3, 0.2, 0.1};
    init.spinor = spinor_from_bloch({1, 0, 0});

    const TrajectoryRecord rec = evolve(params, init);
    // Hidden diagnostics: constant offset from the frozen spin and velocity,
    // no canonical-momentum shift without a force.
    const Vec3 expected_dr = -0.25 * cross(Vec3{1, 0, 0}, init.p);
    for (const TrajectorySample& s : rec.samples) {
        CHECK(max_abs_component(s.r - s.t * Vec3{0.3, 0.2, 0.1}) < 1e-12);
        CHECK(s.p == init.p);
        CHECK(max_abs_component(s.sigma - Vec3{1, 0, 0}) < 1e-12);
        CHECK(max_abs_component(s.hidden_dr - expected_dr) < 1e-12);
        CHECK(max_abs_component(s.hidden_dp) < 1e-15);
    }
}

TEST_CASE("cyclotron orbit conserves |p| and follows the analytic circle") {
    EvolutionParams params;
    params.field = uniform_cfg({}, {0, 0, 1});
    params.t1 = 5.0 * kTau;
    params.dt = kTau / 2000.0;  // 10^4 steps over five turns
    params.sample_every = 100;

    ParticleState init;
    init.p = {1, 0, 0};

    const TrajectoryRecord rec = evolve(params, init);
    double worst_p = 0.0, worst_r = 0.0;
    for (const TrajectorySample& s : rec.samples) {
        worst_p = std::max(worst_p, std::abs(norm(s.p) - 1.0));
        worst_r = std::max(worst_r, norm(s.r - cyclotron_position(s.t)));
    }
    CHECK(worst_p < 1e-10);
    CHECK(worst_r < 1e-7);
}

TEST_CASE("trajectory error shrinks 16x when dt halves") {
    ParticleState init;
    init.p = {1, 0, 0};

    auto final_error = [&](double dt) {
        EvolutionParams params;
        params.field = uniform_cfg({}, {0, 0, 1});
        params.t1 = kTau;
        params.dt = dt;
        params.sample_every = 1000000;  // only initial and final samples
        const TrajectoryRecord rec = evolve(params, init);
        return norm(rec.samples.back().r - cyclotron_position(rec.samples.back().t));
    };

    const double coarse = final_error(kTau / 100.0);
    const double fine = final_error(kTau / 200.0);
    const double ratio = coarse / fine;
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("spin phase error is second order in dt") {
    // Eccentric Coulomb orbit: the spin-orbit precession vector varies along
    // the trajectory, so the splitting error is visible.
    auto final_sigma = [&](double dt) {
        EvolutionParams params;
        params.field = coulomb_cfg();
        params.constants.c = 3.0;
        params.mask.so = true;
        params.t1 = 2.0;
        params.dt = dt;
        params.sample_every = 1000000;
        ParticleState init;
        init.r = {1, 0, 0};
        init.p = {0, 0.8, 0};
        init.spinor = spinor_from_bloch({1, 0, 0});
        return evolve(params, init).samples.back().sigma;
    };

    const Vec3 s1 = final_sigma(0.02);
    const Vec3 s2 = final_sigma(0.01);
    const Vec3 s3 = final_sigma(0.005);
    const double d1 = norm(s1 - s2);
    const double d2 = norm(s2 - s3);
    CHECK(d1 / d2 > 3.0);
    CHECK(d1 / d2 < 5.5);
}

TEST_CASE("spinor norm drift stays below 1e-12 over 1e4 steps") {
    EvolutionParams params;
    params.field = uniform_cfg({}, {0, 0, 1});
    params.mask.zeeman = true;  // constant precession about z
    params.t1 = 10.0;
    params.dt = 1e-3;
    params.sample_every = 100;

    ParticleState init;
    init.p = {0.5, 0, 0};
    init.spinor = spinor_from_bloch({1, 0, 0});

    const TrajectoryRecord rec = evolve(params, init);
    for (const TrajectorySample& s : rec.samples) {
        CHECK(std::abs(norm(s.sigma) - 1.0) < 1e-12);
    }
}

TEST_CASE("records keep the term/precession duality at every sample") {
    EvolutionParams params;
    params.field = coulomb_cfg();
    params.constants.c = 5.0;
    params.mask.so = true;
    params.mask.dv = true;
    params.t1 = 4.0;
    params.dt = 0.002;
    params.sample_every = 25;

    ParticleState init;
    init.r = {1, 0, 0};
    init.p = {0, 0.9, 0};
    init.spinor = spinor_from_bloch(normalized(Vec3{1, 0, 1}));

    const TrajectoryRecord rec = evolve(params, init);
    double prev_t = -1.0;
    for (const TrajectorySample& s : rec.samples) {
        CHECK(s.t > prev_t);
        prev_t = s.t;
        CHECK(std::abs(norm(s.sigma) - 1.0) < 1e-9);

        ParticleState st{s.r, s.p, s.t, spinor_from_bloch(s.sigma)};
        const FieldSample f = sample(params.field, s.r, s.t, params.constants);
        const Vec3 a = acceleration(st, f, params.constants, params.accel);
        const PrecessionDecomposition pd =
            precession_vector(st, f, params.constants, params.mask, a);
        const double dual = 0.5 * params.constants.hbar * dot(s.sigma, pd.omega_total);
        CHECK(std::abs(dual - (s.terms.so + s.terms.dv)) < 1e-12);
    }
}

TEST_CASE("static fields conserve the base energy") {
    EvolutionParams params;
    params.field = coulomb_cfg();
    params.t1 = 5.0 * kTau;
    params.dt = kTau / 2000.0;
    params.sample_every = 100;

    ParticleState init;  // circular orbit r = v = 1
    init.r = {1, 0, 0};
    init.p = {0, 1, 0};

    const TrajectoryRecord rec = evolve(params, init);
    const double h0 = rec.samples.front().terms.h0;
    for (const TrajectorySample& s : rec.samples) {
        CHECK(std::abs(s.terms.h0 - h0) < 1e-8 * std::abs(h0));
    }
}

TEST_CASE("circular-wave coupling precesses the spin at the closed-form rate") {
    FieldConfiguration wave;
    wave.family = FieldFamily::PlaneWaveCircular;
    wave.amplitude = 0.1;
    wave.omega = 1.0;
    wave.helicity = 1;

    EvolutionParams params;
    params.field = wave;
    params.mask.h1 = true;
    params.t1 = 10.0 * kTau;  // ten optical cycles
    params.dt = kTau / 500.0;
    params.sample_every = 10;

    ParticleState init;  // at rest at the origin
    init.spinor = spinor_from_bloch({1, 0, 0});

    const TrajectoryRecord rec = evolve(params, init);
    const double omega_h1 = wave.amplitude * wave.amplitude / (2.0 * wave.omega);
    const double expected = omega_h1 * params.t1;
    const double measured = std::abs(accumulated_azimuth(rec));
    CHECK(std::abs(measured - expected) < 1e-6 * expected);
}

TEST_CASE("evolution aborts on the singular region with a partial record") {
    EvolutionParams params;
    params.field = coulomb_cfg();
    params.t1 = 10.0;
    params.dt = 0.01;
    params.r_min = 0.5;
    params.sample_every = 5;

    ParticleState init;  // radial plunge
    init.r = {1, 0, 0};
    init.p = {-1, 0, 0};

    try {
        evolve(params, init);
        FAIL("expected SingularityAbort");
    } catch (const SingularityAbort& e) {
        CHECK(e.partial().samples.size() > 1);
        CHECK(e.partial().samples.front().t == 0.0);
    }
}

TEST_CASE("evolve is deterministic") {
    EvolutionParams params;
    params.field = uniform_cfg({0.1, 0, 0}, {0, 0, 0.5});
    params.mask.h2 = true;
    params.mask.zeeman = true;
    params.t1 = 1.0;
    params.dt = 1e-3;
    params.sample_every = 10;

    ParticleState init;
    init.r = {0.2, 0, 0};
    init.p = {0, 0.3, 0};
    init.spinor = spinor_from_bloch({0, 1, 0});

    const TrajectoryRecord a = evolve(params, init);
    const TrajectoryRecord b = evolve(params, init);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].r == b.samples[i].r);
        CHECK(a.samples[i].p == b.samples[i].p);
        CHECK(a.samples[i].sigma == b.samples[i].sigma);
        CHECK(a.samples[i].terms.total == b.samples[i].terms.total);
    }
}

TEST_CASE("step argument validation") {
    ParticleState st;
    CHECK_THROWS_AS(step(st, uniform_cfg({}, {}), Constants{}, TermMask{}, 0.0),
                    ArgumentError);
    CHECK_THROWS_AS(step(st, uniform_cfg({}, {}), Constants{}, TermMask{}, -0.1),
                    ArgumentError);
}
