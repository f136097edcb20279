#pragma once

#include <cmath>
#include <complex>

namespace blaschke {

using cdouble = std::complex<double>;

// A point of the Riemann sphere: either a finite complex number or infinity.
struct SpherePoint {
    cdouble z{0.0, 0.0};
    bool inf = false;

    static SpherePoint infinity() {
        SpherePoint p;
        p.inf = true;
        return p;
    }
    static SpherePoint finite(cdouble v) {
        SpherePoint p;
        p.z = v;
        return p;
    }
};

// Chordal distance on the sphere of diameter 2 (so antipodes are at distance 2).
inline double chordal(const SpherePoint& p, const SpherePoint& q) {
    if (p.inf && q.inf) return 0.0;
    if (p.inf || q.inf) {
        const cdouble& w = p.inf ? q.z : p.z;
        return 2.0 / std::sqrt(1.0 + std::norm(w));
    }
    return 2.0 * std::abs(p.z - q.z) /
           std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
}

// z -> 1/conj(z): reflection through the unit circle, swaps 0 and infinity.
inline SpherePoint involution(const SpherePoint& p) {
    if (p.inf) return SpherePoint::finite({0.0, 0.0});
    if (p.z == cdouble{0.0, 0.0}) return SpherePoint::infinity();
    return SpherePoint::finite(1.0 / std::conj(p.z));
}

} // namespace blaschke
