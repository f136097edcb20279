#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/sphere.hpp"

namespace blaschke {

// B_a(z) = z^{d+1} ((z - a) / (1 - conj(a) z))^d, a rational self-map of the
// sphere of degree 2d+1 commuting with z -> 1/conj(z). The |a| = 1 case
// degenerates to the monomial (-a)^d z^{d+1}.
struct MapParams {
    int d = 1;
    cdouble a{0.0, 0.0};

    MapParams() = default;
    MapParams(int d_, cdouble a_) : d(d_), a(a_) {
        if (d < 1) fail("InvalidDegree", "d must be >= 1");
    }

    static MapParams from_polar(int d, double r, double alpha);

    double r() const { return std::abs(a); }
    // arg(a) in turns, in [0, 1).
    double arg_turns() const;
    // arg(a)/2pi reduced into the fundamental domain (-1/(4d), 1/(4d)].
    double alpha() const;

    int map_degree() const { return 2 * d + 1; }
    bool monomial() const { return std::abs(r() - 1.0) <= 1e-14; }
};

enum class RegionClass { TrivialDisk, Endomorphism, HomeoBoundary, Diffeo };

const char* region_name(RegionClass rc);

// Classify by |a| against 1 and 2d+1 with tie tolerance 1e-12.
RegionClass classify_region(const MapParams& p);

// The two-parameter family e^{2 pi i t} z^{d+1} ((z-c)/(1-conj(c) z))^d is
// conjugate by a rigid rotation to the one-parameter family above; this
// returns the reduced parameter a = c e^{i pi t / d}.
MapParams reduce_parameters(cdouble c, double t, int d);

// Evaluate the degree-(2d+1) map at a sphere point. Exact at the pole
// 1/conj(a) (-> infinity) and at infinity (-> infinity for |a| != 1).
SpherePoint evaluate(const MapParams& p, const SpherePoint& z);

// Evaluate the unreduced two-parameter map (used to validate the reduction).
SpherePoint evaluate_ct(cdouble c, double t, int d, const SpherePoint& z);

// B'(z) at a finite non-pole point; fails with PoleDerivative at the pole.
cdouble derivative(const MapParams& p, cdouble z);

// h(z) = conj(a)(d+1) z^2 - (2d+1+|a|^2) z + a(d+1), the quadratic whose
// roots are the free critical points.
cdouble h_eval(const MapParams& p, cdouble z);

// The two free critical points c+ (outside or on the circle) and c-
// (inside or on it); they satisfy c+ * conj(c-) proportional to a/conj(a)
// and coincide when |a| = 2d+1. Fails with DegenerateParameter at a = 0.
std::pair<cdouble, cdouble> free_critical_points(const MapParams& p);

struct CriticalPointRecord {
    SpherePoint point;
    int multiplicity = 1;
};

struct CriticalSet {
    std::vector<CriticalPointRecord> fixed_critical; // 0, inf, a, 1/conj(a)
    cdouble c_plus{0.0, 0.0};
    cdouble c_minus{0.0, 0.0};
    // Circle preimages of the free critical values beyond the critical points
    // themselves; present only in the interior-endomorphism regime.
    std::optional<std::pair<cdouble, cdouble>> cocritical;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& rec : fixed_critical) m += rec.multiplicity;
        return m + 2;
    }
};

CriticalSet critical_set(const MapParams& p);

enum class FixedPointTag { Zero, Infinity, OnCircle, OffCircle };

struct FixedPointRecord {
    SpherePoint point;
    cdouble multiplier{0.0, 0.0};
    double residual = 0.0; // chordal(B(z), z)
    FixedPointTag tag = FixedPointTag::OffCircle;
};

// All 2d+2 fixed points on the sphere (counted with multiplicity collapsed
// for |a| = 1, where only d+2 are geometrically present). Sorted with 0
// first, infinity last, finite points by (re, im).
std::vector<FixedPointRecord> fixed_points(const MapParams& p);

// Image angle of the restriction to the unit circle, as a turn in [0, 1):
// x -> angle of B(e^{2 pi i x}). If mod_err is given, receives the distance
// of |B(e^{2 pi i x})| from 1 (should be ~1e-16; the circle is invariant).
double circle_angle_image(const MapParams& p, double x, double* mod_err = nullptr);

struct ConnectivityVerdict {
    bool connected_unconditional = false;
    // Populated on the conditional branch: measured circle rotation number.
    std::optional<double> circle_rotation;
    std::optional<std::pair<long long, int>> lock; // p, q when rational lock found
};

// Julia set connectivity: unconditional for |a| <= 2d+1; beyond that it is
// connected unless the annular attractor supports a Herman ring, which a
// rational rotation lock rules out.
ConnectivityVerdict connectivity_verdict(const MapParams& p);

} // namespace blaschke
