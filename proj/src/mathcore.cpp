#include <cmath>
#include <complex>

#include "spinem/errors.hpp"
#include "spinem/four_vector.hpp"
#include "spinem/spinor.hpp"

namespace spinem {

Vec3 pauli_expectation(const Spinor& s) {
    const double n = norm(s);
    if (std::abs(n - 1.0) > 1e-9) {
        throw InvalidStateError("spinor norm " + std::to_string(n) +
                                " deviates from 1 by more than 1e-9");
    }
    const std::complex<double> ud = std::conj(s.up) * s.down;
    return {2.0 * ud.real(), 2.0 * ud.imag(),
            std::norm(s.up) - std::norm(s.down)};
}

Spinor su2_rotate(const Spinor& s, const Vec3& omega, double dt) {
    const double w = norm(omega);
    const double half = 0.5 * w * dt;
    if (half == 0.0) return s;

    const Vec3 n = omega / w;
    const double co = std::cos(half);
    const double si = std::sin(half);

    // Rotor [[a, b], [-conj(b), conj(a)]] for exp(-i half n.sigma),
    // renormalized so |a|^2 + |b|^2 = 1 at roundoff level.
    std::complex<double> a(co, -si * n.z);
    std::complex<double> b(-si * n.y, -si * n.x);
    const double det = std::sqrt(std::norm(a) + std::norm(b));
    a /= det;
    b /= det;

    return {a * s.up + b * s.down,
            -std::conj(b) * s.up + std::conj(a) * s.down};
}

Spinor spinor_from_bloch(const Vec3& n) {
    const double len = norm(n);
    if (std::abs(len - 1.0) > 1e-6) {
        throw ArgumentError("Bloch vector norm deviates from 1 by more than 1e-6");
    }
    const Vec3 u = n / len;
    const double theta = std::atan2(std::hypot(u.x, u.y), u.z);
    const double phi = std::atan2(u.y, u.x);
    return {std::complex<double>(std::cos(0.5 * theta), 0.0),
            std::polar(std::sin(0.5 * theta), phi)};
}

double FourVector::operator[](int i) const {
    switch (i) {
    case 0: return t;
    case 1: return x;
    case 2: return y;
    case 3: return z;
    default: throw ArgumentError("four-vector index out of range");
    }
}

double FourVector::lower(int i) const {
    return i == 0 ? (*this)[0] : -(*this)[i];
}

int levi_civita4(int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    for (int v : idx) {
        if (v < 0 || v > 3) throw ArgumentError("Levi-Civita index out of range");
    }
    int sign = 1;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    }
    return sign;
}

namespace {

// Slot of the (a,b) pair with a < b in (01,02,03,12,13,23) order.
int pair_slot(int a, int b) {
    static constexpr int table[4][4] = {{-1, 0, 1, 2},
                                        {0, -1, 3, 4},
                                        {1, 3, -1, 5},
                                        {2, 4, 5, -1}};
    return table[a][b];
}

void check_tensor_index(int i) {
    if (i < 0 || i > 3) throw ArgumentError("tensor index out of range");
}

}  // namespace

double AntisymTensor4::operator()(int a, int b) const {
    check_tensor_index(a);
    check_tensor_index(b);
    if (a == b) return 0.0;
    const double v = c_[static_cast<std::size_t>(pair_slot(a, b))];
    return a < b ? v : -v;
}

void AntisymTensor4::set(int a, int b, double value) {
    check_tensor_index(a);
    check_tensor_index(b);
    if (a == b) throw ArgumentError("diagonal of an antisymmetric tensor is fixed at 0");
    c_[static_cast<std::size_t>(pair_slot(a, b))] = a < b ? value : -value;
}

double AntisymTensor4::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace spinem
