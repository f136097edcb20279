#pragma once

#include <optional>
#include <vector>

#include "blaschke/map.hpp"
#include "blaschke/rational.hpp"

namespace blaschke {

// Continuous lift of the circle restriction of B_a, a = r e^{2 pi i alpha},
// r > 1, written in turns:
//
//   G(x) = x + 2 d alpha + (d / pi) atan( sin(2 pi x) / (cos(2 pi x) - r) )
//
// The atan argument's denominator stays negative for r > 1, so G is smooth,
// commutes with x -> x+1 exactly (the trig terms are evaluated on x mod 1),
// and G(0) = 2 d alpha. Degree one; a diffeomorphism iff r > 2d+1.
struct CircleLift {
    int d = 1;
    double r = 2.0;
    double alpha = 0.0;

    double eval(double x) const;
    double derivative(double x) const;
    // G^n(x).
    double iterate(double x, long long n) const;
};

// Lift of the circle map of p; requires |a| > 1 (fails NotACircleCover).
CircleLift lift_of(const MapParams& p);

// Angles where G' vanishes: two for 1 < r < 2d+1, returned sorted as
// {X, 1 - X} with X in (0, 1/2) the angle of the outer free critical point;
// one (the angle 0) at r = 2d+1; none for r > 2d+1. Angles are measured
// relative to the direction of a and do not depend on alpha.
std::vector<double> critical_angles(const CircleLift& L);

struct RotationEstimate {
    double value = 0.0;       // representative in [0, 1)
    double raw = 0.0;         // (G^n(x0) - x0)/n, un-reduced
    double error_bound = 0.0; // 2/n a priori bound for the raw estimate
    std::optional<Rational> lock; // p/q in [0,1) when a rational lock is confirmed
};

// Birkhoff average along the lift orbit, plus detection of rational locking:
// candidate fractions with denominator <= q_max are screened against the raw
// average and confirmed by finding a genuine q-periodic orbit.
RotationEstimate rotation_number(const CircleLift& L, double x0, long long n_iter,
                                 int q_max);

struct RotationInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(long long p, long long q) const;
};

// Rotation interval [rho_min, rho_max] of the (generally non-monotone) lift,
// computed from the monotone upper and lower envelopes on a grid. For a
// diffeomorphism the two endpoints agree to grid accuracy and are snapped.
RotationInterval rotation_interval(const CircleLift& L, int grid_n = 4096,
                                   long long n_iter = 100000);

enum class Stability { SuperAttracting, Attracting, Indifferent, Repelling };

const char* stability_name(Stability s);

struct CircleCycle {
    std::vector<double> angles; // one orbit, sorted increasingly in [0,1)
    long long p = 0;            // displacement of G^q along the orbit
    int q = 1;
    double multiplier = 0.0;    // product of G' along the orbit (signed)
    Stability stability = Stability::Repelling;
};

// Solutions of G^q(x) = x + p with exact period q. Picks the orbit with the
// smallest |multiplier|; with all_out != nullptr also returns every orbit
// found. Throws NoCycle when no root exists, LowerPeriod when roots exist
// but each one belongs to a shorter cycle.
CircleCycle find_circle_cycle(const CircleLift& L, long long p, int q,
                              std::vector<CircleCycle>* all_out = nullptr);

// All period-q orbits whose rotation number reduces to p/q mod 1, scanning
// the compatible displacement window for this lift.
std::vector<CircleCycle> cycles_with_rotation(const CircleLift& L, long long p, int q);

enum class Adjacency { No, Yes, Inconclusive };

// Whether both free critical angles converge to one non-repelling cycle of
// rotation number p/q — the numerical tongue-membership test. Fails with
// RegionMismatch outside the interior endomorphism regime.
Adjacency is_adjacent(const MapParams& p, long long pp, int q);

// The |alpha| minimizing parameter in (lo, hi] for which the critical angle
// orbit is exactly p/q periodic (mod-q displacement window). Fails with
// NoSignChange when no such parameter exists in the bracket.
double find_superattracting_alpha(int d, double r, long long p, int q, double lo,
                                  double hi);

} // namespace blaschke
