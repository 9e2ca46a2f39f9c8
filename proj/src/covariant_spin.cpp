#include "spinem/covariant_spin.hpp"

#include <cmath>

#include "spinem/errors.hpp"

namespace spinem {

namespace {

void require_subluminal(const Vec3& v, const Constants& k) {
    if (!(norm(v) < k.c)) throw DomainError("|v| must be below c");
}

void require_unit_u(const FourVector& u) {
    if (std::abs(minkowski_dot(u, u) - 1.0) > 1e-9) {
        throw DomainError("4-velocity is not normalized (U.U != 1)");
    }
}

}  // namespace

Vec3 hidden_position_classical(const Vec3& spin, const Vec3& velocity,
                               const Constants& k) {
    require_subluminal(velocity, k);
    return cross(spin, velocity) / (k.m * k.c * k.c);
}

Vec3 hidden_momentum_classical(const Vec3& spin, const Vec3& force,
                               const Constants& k) {
    return cross(spin, force) / (k.m * k.c * k.c);
}

Vec3 hidden_position_quantum(const Vec3& sigma, const Vec3& velocity,
                             const Constants& k) {
    require_subluminal(velocity, k);
    return (-k.hbar) * cross(sigma, velocity) / (4.0 * (k.m * k.c * k.c));
}

Vec3 hidden_momentum_quantum(const Vec3& sigma, const Vec3& acceleration,
                             const Constants& k) {
    return (-k.hbar) * cross(sigma, acceleration) / (4.0 * (k.c * k.c));
}

FourVector u_from_beta(const Vec3& beta) {
    const double b2 = norm2(beta);
    if (!(b2 < 1.0)) throw DomainError("|beta| must be below 1");
    const double gamma = 1.0 / std::sqrt(1.0 - b2);
    return four_vector(gamma, gamma * beta);
}

FourVector boost_rest_spin(const Vec3& rest_spin, const Vec3& beta) {
    const double b2 = norm2(beta);
    if (!(b2 < 1.0)) throw DomainError("|beta| must be below 1");
    if (b2 == 0.0) return four_vector(0.0, rest_spin);
    const double gamma = 1.0 / std::sqrt(1.0 - b2);
    const double bs = dot(beta, rest_spin);
    // (gamma - 1)/beta^2 in the cancellation-free form gamma^2/(gamma + 1).
    const double coef = gamma * gamma / (gamma + 1.0);
    return four_vector(gamma * bs, rest_spin + coef * bs * beta);
}

AntisymTensor4 spin_tensor_from_vector(const FourVector& s, const FourVector& u) {
    require_unit_u(u);
    AntisymTensor4 t;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            double sum = 0.0;
            for (int sig = 0; sig < 4; ++sig) {
                for (int tau = 0; tau < 4; ++tau) {
                    const int eps = levi_civita4(a, b, sig, tau);
                    if (eps != 0) sum += eps * s.lower(sig) * u.lower(tau);
                }
            }
            t.set(a, b, sum);
        }
    }
    return t;
}

FourVector spin_vector_from_tensor(const AntisymTensor4& t, const FourVector& u) {
    require_unit_u(u);
    double low[4] = {0.0, 0.0, 0.0, 0.0};
    for (int a = 0; a < 4; ++a) {
        double sum = 0.0;
        for (int b = 0; b < 4; ++b) {
            for (int sig = 0; sig < 4; ++sig) {
                for (int tau = 0; tau < 4; ++tau) {
                    const int eps = levi_civita4(a, b, sig, tau);
                    if (eps != 0) sum += eps * t(b, sig) * u[tau];
                }
            }
        }
        low[a] = 0.5 * sum;
    }
    return {low[0], -low[1], -low[2], -low[3]};
}

FourVector ssc_residual_moller(const AntisymTensor4& t, const FourVector& u) {
    double r[4];
    for (int a = 0; a < 4; ++a) {
        double sum = 0.0;
        for (int b = 0; b < 4; ++b) sum += t(a, b) * u.lower(b);
        r[a] = sum;
    }
    return {r[0], r[1], r[2], r[3]};
}

Vec3 ssc_residual_dirac(const AntisymTensor4& t, const FourVector& u) {
    double r[3];
    for (int i = 1; i < 4; ++i) {
        double sum = 2.0 * t(i, 0);
        for (int j = 1; j < 4; ++j) sum += t(i, j) * u[j];
        r[i - 1] = sum;
    }
    return {r[0], r[1], r[2]};
}

}  // namespace spinem
