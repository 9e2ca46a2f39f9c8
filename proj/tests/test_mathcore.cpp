#include "test_support.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "spinem/errors.hpp"
#include "spinem/four_vector.hpp"
#include "spinem/spinor.hpp"

using namespace spinem;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

using Mat2 = std::array<std::complex<double>, 4>;  // row-major 2x2

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Series evaluation of exp(M); independent of the closed-form rotor.
Mat2 matrix_exp(const Mat2& m) {
    Mat2 sum = {1.0, 0.0, 0.0, 1.0};
    Mat2 term = {1.0, 0.0, 0.0, 1.0};
    for (int n = 1; n < 64; ++n) {
        term = matmul(term, m);
        for (auto& c : term) c /= n;
        double magnitude = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            sum[i] += term[i];
            magnitude += std::abs(term[i]);
        }
        if (magnitude < 1e-20) break;
    }
    return sum;
}

Spinor exp_rotate_oracle(const Spinor& s, const Vec3& omega, double dt) {
    const std::complex<double> i(0.0, 1.0);
    const Mat2 h = {omega.z, omega.x - i * omega.y, omega.x + i * omega.y, -omega.z};
    Mat2 m;
    for (std::size_t j = 0; j < 4; ++j) m[j] = -i * (0.5 * dt) * h[j];
    const Mat2 u = matrix_exp(m);
    return {u[0] * s.up + u[1] * s.down, u[2] * s.up + u[3] * s.down};
}

Vec3 rodrigues(const Vec3& axis, double angle, const Vec3& v) {
    const Vec3 n = normalized(axis);
    return v * std::cos(angle) + cross(n, v) * std::sin(angle) +
           n * dot(n, v) * (1.0 - std::cos(angle));
}

double spinor_distance(const Spinor& a, const Spinor& b) {
    return std::abs(a.up - b.up) + std::abs(a.down - b.down);
}

}  // namespace

TEST_CASE("pauli_expectation on the axis eigenstates") {
    const Spinor z_up{{1.0, 0.0}, {0.0, 0.0}};
    const Vec3 ez = pauli_expectation(z_up);
    CHECK(ez.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ez.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ez.z == doctest::Approx(1.0).epsilon(1e-12));

    const Spinor x_plus{{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}};
    const Vec3 ex = pauli_expectation(x_plus);
    CHECK(ex.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ex.y) < 1e-12);
    CHECK(std::abs(ex.z) < 1e-12);

    const Spinor y_plus{{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}};
    const Vec3 ey = pauli_expectation(y_plus);
    CHECK(std::abs(ey.x) < 1e-12);
    CHECK(ey.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ey.z) < 1e-12);
}

TEST_CASE("pauli_expectation rejects non-normalized spinors") {
    const Spinor bad{{1.0, 0.0}, {0.5, 0.0}};
    CHECK_THROWS_AS(pauli_expectation(bad), InvalidStateError);
}

TEST_CASE("pauli expectation of any normalized spinor is a unit vector") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Spinor s{{g(rng), g(rng)}, {g(rng), g(rng)}};
        const double n = norm(s);
        s.up /= n;
        s.down /= n;
        CHECK(std::abs(norm(pauli_expectation(s)) - 1.0) < 1e-12);
    }
}

TEST_CASE("su2_rotate with zero omega is the identity") {
    const Spinor s{{0.6, 0.0}, {0.0, 0.8}};
    const Spinor out = su2_rotate(s, {0.0, 0.0, 0.0}, 0.3);
    CHECK(out.up == s.up);
    CHECK(out.down == s.down);
}

TEST_CASE("su2_rotate gives an eigenstate a pure phase") {
    const double w = 2.0, dt = 0.4;
    const Spinor out = su2_rotate(Spinor{}, {0.0, 0.0, w}, dt);
    const std::complex<double> expected = std::polar(1.0, -0.5 * w * dt);
    CHECK(std::abs(out.up - expected) < 1e-14);
    CHECK(std::abs(out.down) < 1e-14);
    const Vec3 sigma = pauli_expectation(out);
    CHECK(std::abs(sigma.z - 1.0) < 1e-14);
}

TEST_CASE("su2_rotate matches a series matrix exponential") {
    const Spinor s = spinor_from_bloch(normalized(Vec3{1.0, 0.0, 0.0}));
    for (double dt : {1e-3, 1e-2}) {
        const Vec3 omega{0.0, 0.0, 1.0};
        const Spinor fast = su2_rotate(s, omega, dt);
        const Spinor slow = exp_rotate_oracle(s, omega, dt);
        CHECK(spinor_distance(fast, slow) < 1e-12);
    }
    // A few skew axes as well.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Vec3 omega{g(rng), g(rng), g(rng)};
        const double dt = std::abs(g(rng));
        const Spinor fast = su2_rotate(s, omega, dt);
        const Spinor slow = exp_rotate_oracle(s, omega, dt);
        CHECK(spinor_distance(fast, slow) < 1e-12);
    }
}

TEST_CASE("su2_rotate composes in the rotation angle") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 omega{g(rng), g(rng), g(rng)};
        const double dt1 = u(rng), dt2 = u(rng);
        const Spinor s = spinor_from_bloch(normalized(Vec3{g(rng), g(rng), g(rng) + 3.0}));
        const Spinor split = su2_rotate(su2_rotate(s, omega, dt1), omega, dt2);
        const Spinor joined = su2_rotate(s, omega, dt1 + dt2);
        const Vec3 d = pauli_expectation(split) - pauli_expectation(joined);
        CHECK(norm(d) < 1e-12);
    }
}

TEST_CASE("su2_rotate agrees with the Rodrigues rotation of the Bloch vector") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vec3 omega{g(rng), g(rng), g(rng)};
        if (norm(omega) < 1e-6) omega = {0.0, 0.0, 1.0};
        const double dt = u(rng);
        Vec3 n{g(rng), g(rng), g(rng)};
        if (norm(n) < 1e-3) n = {0.0, 0.0, 1.0};
        const Spinor s = spinor_from_bloch(normalized(n));

        const Vec3 rotated = pauli_expectation(su2_rotate(s, omega, dt));
        const Vec3 expected = rodrigues(omega, norm(omega) * dt, pauli_expectation(s));
        worst = std::max(worst, norm(rotated - expected));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("su2_rotate preserves the norm over long products") {
    Spinor s = spinor_from_bloch({1.0, 0.0, 0.0});
    const Vec3 omega{0.3, -0.2, 0.9};
    for (int i = 0; i < 10000; ++i) s = su2_rotate(s, omega, 0.01);
    CHECK(std::abs(norm(s) - 1.0) < 1e-12);
}

TEST_CASE("levi_civita4 anchors and degeneracies") {
    CHECK(levi_civita4(0, 1, 2, 3) == 1);
    CHECK(levi_civita4(1, 0, 2, 3) == -1);
    CHECK(levi_civita4(0, 0, 2, 3) == 0);
    CHECK(levi_civita4(3, 2, 1, 0) == 1);
    CHECK_THROWS_AS(levi_civita4(0, 1, 2, 4), ArgumentError);
    CHECK_THROWS_AS(levi_civita4(-1, 1, 2, 3), ArgumentError);
}

TEST_CASE("levi_civita4 flips sign under any transposition") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const int base = levi_civita4(a, b, c, d);
                    CHECK(levi_civita4(b, a, c, d) == -base);
                    CHECK(levi_civita4(a, c, b, d) == -base);
                    CHECK(levi_civita4(a, b, d, c) == -base);
                }
}

TEST_CASE("AntisymTensor4 is antisymmetric by construction") {
    AntisymTensor4 t;
    t.set(0, 1, 2.5);
    t.set(3, 1, -4.0);
    for (int a = 0; a < 4; ++a) {
        CHECK(t(a, a) == 0.0);
        for (int b = 0; b < 4; ++b) CHECK(t(a, b) == -t(b, a));
    }
    CHECK(t(1, 0) == -2.5);
    CHECK(t(1, 3) == 4.0);
    CHECK(t.max_abs() == 4.0);
    CHECK_THROWS_AS(t.set(2, 2, 1.0), ArgumentError);
    CHECK_THROWS_AS(t(0, 4), ArgumentError);
}

TEST_CASE("spinor_from_bloch round trips through pauli_expectation") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        Vec3 n{g(rng), g(rng), g(rng)};
        if (norm(n) < 1e-3) continue;
        n = normalized(n);
        const Vec3 back = pauli_expectation(spinor_from_bloch(n));
        CHECK(norm(back - n) < 1e-12);
    }
    CHECK_THROWS_AS(spinor_from_bloch({0.0, 0.0, 0.0}), ArgumentError);
}
