#include "blaschke/circle.hpp"
#include "blaschke/error.hpp"
#include "blaschke/map.hpp"
#include "test_util.hpp"
#include <random>

using namespace blaschke;

static double frac(double x) {
    double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}
static double circ_dist(double a, double b) {
    double t = frac(a - b);
    return t > 0.5 ? 1.0 - t : t;
}

static void lift_basics() {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int d : {1, 2}) {
        CircleLift L{d, 2.5, 0.07};
        for (int k = 0; k < 200; ++k) {
            double x = u(rng);
            REQUIRE(std::abs(L.eval(x + 1.0) - L.eval(x) - 1.0) <= 1e-10, "G(x+1) = G(x)+1");
        }
        // lift vs planar boundary action: G is the angle map of B_{|a|}
        // composed with the rotation by 2 d alpha
        MapParams Pr{d, {2.5, 0.0}};
        for (int k = 0; k < 100; ++k) {
            double x = frac(u(rng));
            double y = circle_angle_image(Pr, x);
            REQUIRE(circ_dist(L.eval(x), y + 2.0 * d * 0.07) <= 1e-10,
                    "lift matches the planar circle action");
        }
    }
    pass("lift: degree-one identity and consistency with the plane map");
}

static void critical_angle_values() {
    CircleLift L{2, 2.0, 0.0};
    auto ca = critical_angles(L);
    REQUIRE(ca.size() == 2, "two critical angles");
    REQUIRE_NEAR(ca[0], 0.11502672808130796, 1e-15, "lower critical angle d=2 r=2");
    REQUIRE_NEAR(ca[1], 0.88497327191869202, 1e-15, "upper critical angle d=2 r=2");
    REQUIRE(std::abs(L.derivative(ca[0])) <= 1e-12, "G' vanishes at x+");
    REQUIRE(std::abs(L.derivative(ca[1])) <= 1e-12, "G' vanishes at x-");

    // diffeomorphism regime: strictly positive derivative
    for (int d : {1, 2, 3}) {
        CircleLift D{d, 2.0 * d + 2.0, 0.03};
        double gmin = 1e9;
        for (int i = 0; i < 10000; ++i) gmin = std::min(gmin, D.derivative(i / 10000.0));
        REQUIRE(gmin > 0.0, "G' > 0 at r = 2d+2");
    }
    pass("critical angles: frozen values, derivative zeroes, diffeo positivity");
}

static void rotation_numbers() {
    CircleLift L{1, 2.0, 0.0};
    RotationEstimate re = rotation_number(L, 0.17, 20000, 12);
    REQUIRE(re.lock && re.lock->num == 0 && re.lock->den == 1, "lock 0/1 at alpha=0");
    REQUIRE(std::abs(re.value) <= 1e-9, "locked value is 0");
    REQUIRE_NEAR(re.error_bound, 2.0 / 20000.0, 1e-15, "a priori bound 2/n");

    CircleLift T{1, 4.0, 0.02}; // inside the 0/1 tongue (half-width 0.0402 at r=4)
    RotationEstimate rt = rotation_number(T, 0.33, 20000, 12);
    REQUIRE(rt.lock && rt.lock->num == 0 && rt.lock->den == 1, "0/1 tongue at alpha=0.02");

    CircleLift N{1, 4.0, 0.045}; // just outside: no rational lock up to q=12
    RotationEstimate rn = rotation_number(N, 0.33, 60000, 12);
    REQUIRE(!rn.lock, "no lock just outside the tongue");
    REQUIRE(rn.value > 0.02 && rn.value < 0.06, "small positive rotation number");

    // homeomorphism: estimates from different seeds agree within summed bounds
    RotationEstimate a1 = rotation_number(N, 0.10, 40000, 1);
    RotationEstimate a2 = rotation_number(N, 0.77, 40000, 1);
    REQUIRE(std::abs(a1.raw - a2.raw) <= a1.error_bound + a2.error_bound,
            "seed independence within error bounds");
    pass("rotation numbers: locks, tongue edges, seed independence");
}

static void rotation_intervals() {
    CircleLift L{2, 1.5, 0.0};
    RotationInterval ri = rotation_interval(L);
    REQUIRE(ri.lo <= ri.hi, "interval ordering");
    REQUIRE(ri.hi - ri.lo <= 1e-4, "degenerate interval at alpha=0, r=1.5");
    REQUIRE(ri.contains(0, 1), "contains 0/1");

    CircleLift W{2, 1.5, 0.04};
    RotationInterval rw = rotation_interval(W);
    REQUIRE(rw.hi - rw.lo > 0.3, "wide interval at alpha=0.04");
    REQUIRE(rw.contains(0, 1) && rw.contains(1, 3) && rw.contains(1, 12),
            "several rationals inside");
    REQUIRE(!rw.contains(1, 2), "1/2 stays outside");
    pass("rotation intervals: degenerate and wide cases");
}

static void circle_cycles() {
    CircleLift L{1, 4.0, 0.0};
    std::vector<CircleCycle> all;
    CircleCycle best = find_circle_cycle(L, 0, 1, &all);
    REQUIRE(all.size() == 2, "two fixed points on the circle");
    REQUIRE(best.q == 1 && std::abs(best.angles[0]) <= 1e-12, "attracting fixed angle 0");
    REQUIRE_NEAR(best.multiplier, 1.0 / 3.0, 1e-12, "multiplier 1/3");
    REQUIRE(best.stability == Stability::Attracting, "attracting band");
    bool saw_rep = false;
    for (auto& c : all)
        if (circ_dist(c.angles[0], 0.5) <= 1e-12) {
            saw_rep = true;
            REQUIRE_NEAR(c.multiplier, 7.0 / 5.0, 1e-12, "multiplier 7/5");
            REQUIRE(c.stability == Stability::Repelling, "repelling band");
        }
    REQUIRE(saw_rep, "repelling fixed point at angle 1/2");

    bool no_cycle = false;
    try {
        find_circle_cycle(L, 1, 2);
    } catch (const Error& e) {
        no_cycle = std::string(e.name()) == "NoCycle";
    }
    REQUIRE(no_cycle, "NoCycle for displacement out of reach");

    bool lower = false;
    try {
        find_circle_cycle(L, 0, 2); // both roots of G^2(x)=x are fixed points
    } catch (const Error& e) {
        lower = std::string(e.name()) == "LowerPeriod";
    }
    REQUIRE(lower, "LowerPeriod when all period-2 roots are fixed");

    // superattracting pair at the solved parameter
    double as = find_superattracting_alpha(2, 2.0, 1, 2, -0.125, 0.125);
    CircleLift S{2, 2.0, as};
    auto cyc = cycles_with_rotation(S, 1, 2);
    REQUIRE(cyc.size() == 2, "attracting/repelling pair in the 1/2 tongue");
    int n_super = 0, n_rep = 0;
    for (auto& c : cyc) {
        if (c.stability == Stability::SuperAttracting) {
            ++n_super;
            REQUIRE(std::abs(c.multiplier) <= 1e-8, "superattracting multiplier");
            double dmin = 1.0;
            for (double a : c.angles) dmin = std::min(dmin, circ_dist(a, 0.88497327191869202));
            REQUIRE(dmin <= 1e-10, "cycle passes through a critical angle");
        }
        if (c.stability == Stability::Repelling) ++n_rep;
    }
    REQUIRE(n_super == 1 && n_rep == 1, "one superattracting, one repelling");
    REQUIRE(std::string(stability_name(Stability::SuperAttracting)) == "SuperAttracting",
            "stability name table");
    pass("circle cycles: fixed points, error paths, superattracting pair");
}

static void adjacency() {
    // both critical orbits land on the same attracting cycle
    double a01 = find_superattracting_alpha(1, 2.0, 0, 1, -0.25, 0.25);
    REQUIRE(is_adjacent(MapParams::from_polar(1, 2.0, a01), 0, 1) == Adjacency::Yes,
            "both criticals trapped, d=1 r=2");

    // deep in the band the second critical orbit finds its own attractor:
    // a coexisting attracting fixed point, so the 1/2 test says No
    double a12 = find_superattracting_alpha(2, 2.0, 1, 2, -0.125, 0.125);
    REQUIRE(is_adjacent(MapParams::from_polar(2, 2.0, a12), 1, 2) == Adjacency::No,
            "second critical escapes to a coexisting attractor, d=2 r=2");

    // closer to the homeomorphism boundary both orbits are trapped again
    double a45 = find_superattracting_alpha(2, 4.5, 1, 2, -0.125, 0.125);
    REQUIRE(is_adjacent(MapParams::from_polar(2, 4.5, a45), 1, 2) == Adjacency::Yes,
            "both criticals trapped, d=2 r=4.5");

    REQUIRE(is_adjacent(MapParams{2, {1.5, 0.0}}, 0, 1) == Adjacency::No,
            "repelling fixed point captures nothing");

    bool region_err = false;
    try {
        is_adjacent(MapParams{1, {4.0, 0.0}}, 0, 1);
    } catch (const Error& e) {
        region_err = std::string(e.name()) == "RegionMismatch";
    }
    REQUIRE(region_err, "RegionMismatch outside the interior band");
    pass("adjacency test: trapped, split, and out-of-region cases");
}

static void superattracting_solver() {
    double a12 = find_superattracting_alpha(2, 2.0, 1, 2, -0.125, 0.125);
    REQUIRE_NEAR(a12, 0.082282748238747844, 1e-12, "solved alpha for d=2 r=2 1/2");
    // residual of the defining equation at the returned parameter
    CircleLift L{2, 2.0, a12};
    double xc = critical_angles(L)[1];
    double g2 = L.eval(L.eval(xc));
    REQUIRE(std::abs(g2 - xc - std::round(g2 - xc)) <= 1e-12, "periodicity residual");

    double a01 = find_superattracting_alpha(1, 2.0, 0, 1, -0.25, 0.25);
    REQUIRE_NEAR(a01, 0.064677032558625308, 1e-12, "solved alpha for d=1 r=2 0/1");

    bool nosign = false;
    try {
        find_superattracting_alpha(2, 2.0, 1, 2, 0.24, 0.25);
    } catch (const Error& e) {
        nosign = std::string(e.name()) == "NoSignChange";
    }
    REQUIRE(nosign, "NoSignChange outside the tongue");

    bool region = false;
    try {
        find_superattracting_alpha(1, 4.0, 0, 1, -0.25, 0.25);
    } catch (const Error& e) {
        region = std::string(e.name()) == "RegionMismatch";
    }
    REQUIRE(region, "RegionMismatch where no critical angles exist");
    pass("superattracting parameter solver: frozen roots and error paths");
}

int main() {
    lift_basics();
    critical_angle_values();
    rotation_numbers();
    rotation_intervals();
    circle_cycles();
    adjacency();
    superattracting_solver();
    std::printf("circle dynamics: all sections passed\n");
    return 0;
}
