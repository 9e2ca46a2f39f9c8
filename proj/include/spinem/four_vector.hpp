#pragma once

#include <array>

#include "spinem/vec3.hpp"

namespace spinem {

/// Contravariant Minkowski 4-vector; metric (+,-,-,-), index 0 = time.
struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    /// Contravariant component, i in 0..3.
    double operator[](int i) const;

    /// Covariant component (spatial signs flipped by the metric).
    double lower(int i) const;

    Vec3 spatial() const { return {x, y, z}; }

    bool operator==(const FourVector&) const = default;
};

inline FourVector four_vector(double t, const Vec3& s) { return {t, s.x, s.y, s.z}; }

inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Sign of the permutation (a,b,c,d) of (0,1,2,3); 0 on any repeated index.
/// Anchored to levi_civita4(0,1,2,3) == +1. Out-of-range index -> ArgumentError.
int levi_civita4(int a, int b, int c, int d);

/// Antisymmetric rank-2 tensor on four indices. Only the six independent
/// components are stored, so T(a,b) == -T(b,a) holds exactly by construction.
class AntisymTensor4 {
public:
    AntisymTensor4() = default;

    double operator()(int a, int b) const;

    /// Sets T(a,b) (and thereby T(b,a) = -value). a == b -> ArgumentError.
    void set(int a, int b, double value);

    double max_abs() const;

private:
    // Slots ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
    std::array<double, 6> c_{};
};

}  // namespace spinem
