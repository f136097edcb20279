#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blaschke/map.hpp"
#include "blaschke/rational.hpp"

namespace blaschke {

enum class Basin { Zero, Infinity };

enum class RayStatus { Landed, BudgetExhausted, BranchLost };

const char* ray_status_name(RayStatus s);

struct BoettcherRay {
    Basin basin = Basin::Infinity;
    Rational angle;                // external angle in turns
    std::vector<cdouble> points;   // one sample per potential level, deep end last
    std::vector<double> potentials;
    std::optional<cdouble> landing;
    RayStatus status = RayStatus::BudgetExhausted;
};

// Starting point of the parameter ray at angle theta in the linearizing
// coordinate near infinity (|start| = R0 / |mu| with mu the normalizing
// d-th root), or its reflection for the basin of 0. Fails with
// BasinUndefined when a = 0 (the basins collapse to the monomial picture).
cdouble boettcher_start(const MapParams& p, Basin basin, const Rational& angle,
                        double R0);

// Trace the external ray of rational angle by iterated pull-back: at each
// level solve B(w) = previous sample on the ray of the image angle, seeded
// at the previous sample of this ray. Potential scale R0 defaults to
// 1000 * max(|a|, 1) when <= 0.
BoettcherRay trace_ray(const MapParams& p, Basin basin, const Rational& angle,
                       int depth = 80, double R0 = 0.0);

enum class BiAccessVerdict {
    Verified,        // every ray landed on the cycle, from both sides
    NotAdjacent,     // the parameter fails the regime/tongue gates
    NoRepellingCycle,
    RayBudget,       // some ray did not settle within the depth budget
    LandingMismatch, // rays landed, but not on the target cycle
};

const char* biaccess_verdict_name(BiAccessVerdict v);

struct RayLanding {
    Rational angle;
    Basin basin = Basin::Infinity;
    RayStatus status = RayStatus::BudgetExhausted;
    cdouble endpoint{0.0, 0.0};
    double gap = 0.0; // distance to the nearest target cycle point
};

struct BiAccessReport {
    BiAccessVerdict verdict = BiAccessVerdict::NotAdjacent;
    long long p = 0;
    int q = 1;
    std::vector<cdouble> cycle; // the repelling circle cycle in the plane
    std::vector<RayLanding> rays;
    double max_gap = 0.0;
};

// Verify that the repelling p/q circle cycle is bi-accessible: the m_{d+1}
// sector-cycle angles from the basin of infinity and their reflections from
// the basin of zero all land on it. Region gates: inside the disk there is
// nothing to verify; elsewhere a non-repelling p/q circle cycle must exist
// (the tongue-membership test), and the verdict then rests on the measured
// ray landings.
BiAccessReport verify_biaccessible(const MapParams& p, long long pp, int q,
                                   int depth = 80);

} // namespace blaschke
