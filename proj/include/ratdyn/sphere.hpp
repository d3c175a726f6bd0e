#pragma once

#include <array>
#include <complex>

namespace ratdyn {

using cplx = std::complex<double>;

// A point of the Riemann sphere: a finite complex value or infinity.
struct RiemannPoint {
    cplx z{};
    bool infinite = false;

    RiemannPoint() = default;
    RiemannPoint(cplx value) : z(value) {}  // NOLINT(google-explicit-constructor)
    static RiemannPoint infinity() {
        RiemannPoint p;
        p.infinite = true;
        return p;
    }
};

// Stereographic lift to the unit sphere in R^3; infinity maps to the north pole.
inline std::array<double, 3> sphere_lift(const RiemannPoint& p) {
    if (p.infinite) return {0.0, 0.0, 1.0};
    const double n2 = std::norm(p.z);
    if (n2 > 1e300) return {0.0, 0.0, 1.0};
    const double s = 1.0 / (1.0 + n2);
    return {2.0 * p.z.real() * s, 2.0 * p.z.imag() * s, (n2 - 1.0) * s};
}

// Chord length between two points of the unit sphere; lies in [0, 2].
inline double chordal_distance(const RiemannPoint& a, const RiemannPoint& b) {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.infinite) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
    return 2.0 * std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

inline double chordal_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace ratdyn
