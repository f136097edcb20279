#include "blaschke/map.hpp"
#include "blaschke/error.hpp"
#include "test_util.hpp"
#include <complex>
#include <random>

using namespace blaschke;

static void derivative_oracles() {
    MapParams P{1, {4.0, 0.0}};
    cdouble b1 = derivative(P, {1.0, 0.0});
    cdouble bm = derivative(P, {-1.0, 0.0});
    REQUIRE_NEAR(b1.real(), 1.0 / 3.0, 1e-14, "B'(1) for d=1, a=4");
    REQUIRE_NEAR(b1.imag(), 0.0, 1e-14, "B'(1) imaginary part");
    REQUIRE_NEAR(bm.real(), 7.0 / 5.0, 1e-14, "B'(-1) for d=1, a=4");
    REQUIRE_NEAR(bm.imag(), 0.0, 1e-14, "B'(-1) imaginary part");
    pass("derivative values at the two circle fixed points, d=1 a=4");
}

static void critical_point_oracles() {
    // d=1, a=2: free criticals are (7 +- i sqrt(15))/8, on the unit circle
    MapParams P{1, {2.0, 0.0}};
    auto [cp, cm] = free_critical_points(P);
    REQUIRE_NEAR(cp.real(), 7.0 / 8.0, 1e-14, "Re c+ for a=2");
    REQUIRE_NEAR(cp.imag(), std::sqrt(15.0) / 8.0, 1e-14, "Im c+ for a=2");
    REQUIRE_NEAR(std::abs(cp), 1.0, 1e-14, "|c+| = 1 for a=2");
    REQUIRE_NEAR(std::abs(cm), 1.0, 1e-14, "|c-| = 1 for a=2");

    // d=1, a=4: (19 +- sqrt(105))/16, real, inversive pair
    MapParams Q{1, {4.0, 0.0}};
    auto [dp, dm] = free_critical_points(Q);
    double s = std::sqrt(105.0);
    REQUIRE_NEAR(dp.real(), (19.0 + s) / 16.0, 1e-13, "c+ for a=4");
    REQUIRE_NEAR(dm.real(), (19.0 - s) / 16.0, 1e-13, "c- for a=4");
    REQUIRE_NEAR(std::abs(dp * std::conj(dm)), 1.0, 1e-13, "c+ conj(c-) = 1");

    // h vanishes at both free criticals
    REQUIRE(std::abs(h_eval(Q, dp)) <= 1e-10, "h(c+) = 0");
    REQUIRE(std::abs(h_eval(Q, dm)) <= 1e-10, "h(c-) = 0");
    pass("free critical points: exact values at a=2 and a=4");
}

static void critical_points_random() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ph(0.0, 1.0);
    for (int d = 1; d <= 3; ++d) {
        double s = 2.0 * d + 1.0;
        for (int k = 0; k < 50; ++k) {
            double th = 2.0 * M_PI * ph(rng);
            // disk region
            double r1 = 0.05 + 0.9 * ph(rng);
            MapParams P1{d, std::polar(r1, th)};
            auto [p1, m1] = free_critical_points(P1);
            REQUIRE(std::abs(p1 * std::conj(m1) - 1.0) <= 1e-10, "product identity, |a|<1");
            REQUIRE(std::abs(p1) > 1.0 && std::abs(m1) < 1.0, "modulus ordering, |a|<1");
            // outer region
            double r2 = s + 0.1 + 3.0 * ph(rng);
            MapParams P2{d, std::polar(r2, th)};
            auto [p2, m2] = free_critical_points(P2);
            REQUIRE(std::abs(p2 * std::conj(m2) - 1.0) <= 1e-10, "product identity, |a|>2d+1");
            REQUIRE(std::abs(p2) > 1.0 && std::abs(m2) < 1.0, "modulus ordering, |a|>2d+1");
            // interior band: both on the unit circle
            double r3 = 1.05 + (s - 1.1) * ph(rng);
            MapParams P3{d, std::polar(r3, th)};
            auto [p3, m3] = free_critical_points(P3);
            REQUIRE(std::abs(std::abs(p3) - 1.0) <= 1e-10, "|c+| = 1 in the band");
            REQUIRE(std::abs(std::abs(m3) - 1.0) <= 1e-10, "|c-| = 1 in the band");
        }
        // boundary r = 2d+1: both collapse to a/(2d+1)
        MapParams Pb{d, {s, 0.0}};
        auto [bp, bm] = free_critical_points(Pb);
        REQUIRE(std::abs(bp - bm) <= 1e-8, "criticals coincide at r = 2d+1");
        REQUIRE_NEAR(bp.real(), 1.0, 1e-8, "coincidence point a/(2d+1)");

        MapParams Pc{d, std::polar(1.4, 0.3)};
        CriticalSet cs = critical_set(Pc);
        REQUIRE(cs.total_multiplicity() == 4 * d, "2(2d+1)-2 critical points with multiplicity");
    }
    pass("critical point location in all three regions, d = 1..3");
}

static void reduction_conjugacy() {
    MapParams R = reduce_parameters({2.0, 0.0}, 0.5, 1);
    REQUIRE_NEAR(R.a.real(), 0.0, 1e-15, "reduce(2, t=1/2, d=1) -> 2i (re)");
    REQUIRE_NEAR(R.a.imag(), 2.0, 1e-15, "reduce(2, t=1/2, d=1) -> 2i (im)");

    // B_{c,t}(lambda w) = lambda * B_a(w) with lambda = e^{-i pi t / d}
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int d = 1; d <= 3; ++d) {
        cdouble c{1.3 * u(rng) + 1.5, 0.8 * u(rng)};
        double t = 0.37 * u(rng) + 0.4;
        MapParams Pa = reduce_parameters(c, t, d);
        cdouble lam = std::polar(1.0, -M_PI * t / d);
        for (int k = 0; k < 25; ++k) {
            cdouble w{2.0 * u(rng), 2.0 * u(rng)};
            SpherePoint lhs = evaluate_ct(c, t, d, SpherePoint{lam * w, false});
            SpherePoint rhs = evaluate(Pa, SpherePoint{w, false});
            REQUIRE(!lhs.inf && !rhs.inf, "finite images in conjugacy test");
            REQUIRE(std::abs(lhs.z - lam * rhs.z) <= 1e-9 * (1.0 + std::abs(rhs.z)),
                    "rotation conjugacy to the one-parameter normal form");
        }
    }
    pass("parameter reduction: rotation conjugacy identity");
}

static void involution_symmetry() {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    MapParams P{2, {1.7, 0.6}};
    for (int k = 0; k < 50; ++k) {
        cdouble z{u(rng), u(rng)};
        if (std::abs(z) < 0.1) continue;
        SpherePoint f = evaluate(P, SpherePoint{z, false});
        SpherePoint g = evaluate(P, SpherePoint{1.0 / std::conj(z), false});
        if (f.inf || g.inf) continue;
        cdouble refl = 1.0 / std::conj(f.z);
        REQUIRE(std::abs(g.z - refl) <= 1e-9 * (1.0 + std::abs(refl)),
                "B(1/conj(z)) = 1/conj(B(z))");
    }
    pass("inversion symmetry across the unit circle");
}

static void regions() {
    REQUIRE(classify_region({1, {0.5, 0.0}}) == RegionClass::TrivialDisk, "|a|=0.5");
    REQUIRE(classify_region({1, {1.0, 0.0}}) == RegionClass::TrivialDisk, "|a|=1 tie");
    REQUIRE(classify_region({1, {0.0, 1.0 + 9e-13}}) == RegionClass::TrivialDisk, "tie width");
    REQUIRE(classify_region({1, {2.0, 0.0}}) == RegionClass::Endomorphism, "|a|=2, d=1");
    REQUIRE(classify_region({1, {3.0, 0.0}}) == RegionClass::HomeoBoundary, "|a|=3, d=1");
    REQUIRE(classify_region({1, {4.0, 0.0}}) == RegionClass::Diffeo, "|a|=4, d=1");
    REQUIRE(classify_region({2, {4.0, 0.0}}) == RegionClass::Endomorphism, "|a|=4, d=2");
    REQUIRE(std::string(region_name(RegionClass::Diffeo)) == "Diffeo", "region name");
    MapParams M{1, {-1.0, 0.0}};
    REQUIRE(M.monomial(), "monomial flag at |a|=1");
    pass("region classification with 1e-12 tie handling");
}

static void fixed_census() {
    // d=1, a=4: exactly {0, inf, 1, -1} with multipliers {0, 0, 1/3, 7/5}
    MapParams P{1, {4.0, 0.0}};
    auto fps = fixed_points(P);
    REQUIRE(fps.size() == 4, "2d+2 fixed points for d=1");
    bool saw0 = false, sawInf = false, sawP1 = false, sawM1 = false;
    for (auto& f : fps) {
        REQUIRE(f.residual <= 1e-9, "fixed point residual");
        if (f.point.inf) {
            sawInf = true;
            REQUIRE(std::abs(f.multiplier) <= 1e-12, "infinity superattracting");
            REQUIRE(f.tag == FixedPointTag::Infinity, "infinity tag");
        } else if (std::abs(f.point.z) <= 1e-12) {
            saw0 = true;
            REQUIRE(std::abs(f.multiplier) <= 1e-12, "origin superattracting");
            REQUIRE(f.tag == FixedPointTag::Zero, "origin tag");
        } else if (std::abs(f.point.z - 1.0) <= 1e-9) {
            sawP1 = true;
            REQUIRE_NEAR(std::abs(f.multiplier), 1.0 / 3.0, 1e-12, "multiplier at 1");
            REQUIRE(f.tag == FixedPointTag::OnCircle, "on-circle tag");
        } else if (std::abs(f.point.z + 1.0) <= 1e-9) {
            sawM1 = true;
            REQUIRE_NEAR(std::abs(f.multiplier), 7.0 / 5.0, 1e-12, "multiplier at -1");
        }
    }
    REQUIRE(saw0 && sawInf && sawP1 && sawM1, "census contains 0, inf, 1, -1");

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k < 8; ++k) {
            double r = (k % 2) ? 0.15 + 0.7 * u(rng) : 1.1 + (2.0 * d + 1.0) * u(rng);
            MapParams Q{d, std::polar(r, 2.0 * M_PI * u(rng))};
            auto v = fixed_points(Q);
            REQUIRE((int)v.size() == 2 * d + 2, "2d+2 fixed points");
            for (auto& f : v) REQUIRE(f.residual <= 1e-9, "residual bound");
        }
    }

    // |a| = 1 degenerates to a monomial: d+2 fixed points survive
    auto mono = fixed_points(MapParams{1, {1.0, 0.0}});
    REQUIRE(mono.size() == 3, "monomial census d+2");
    pass("fixed point census: counts, residuals, exact a=4 values");
}

static void connectivity() {
    ConnectivityVerdict c1 = connectivity_verdict({1, {0.5, 0.0}});
    REQUIRE(c1.connected_unconditional, "trivial disk connected");
    ConnectivityVerdict c2 = connectivity_verdict({1, {4.0, 0.0}});
    REQUIRE(c2.connected_unconditional, "rational lock upgrade at a=4");
    REQUIRE(c2.lock && c2.lock->first == 0 && c2.lock->second == 1, "lock is 0/1");
    ConnectivityVerdict c3 = connectivity_verdict(MapParams::from_polar(1, 4.0, 0.045));
    REQUIRE(!c3.connected_unconditional, "conditional verdict off the locked tongue");
    REQUIRE(!c3.lock, "no rational lock at alpha=0.045, r=4");
    REQUIRE(c3.circle_rotation && *c3.circle_rotation > 0.02 && *c3.circle_rotation < 0.06,
            "measured rotation number reported");
    pass("connectivity rule: unconditional inside, lock or conditional outside");
}

static void angle_image() {
    MapParams P{1, {4.0, 0.0}};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        double err = 0.0;
        circle_angle_image(P, u(rng), &err);
        REQUIRE(err <= 1e-12, "circle invariance of the boundary restriction");
    }
    pass("circle angle image preserves the unit circle");
}

int main() {
    derivative_oracles();
    critical_point_oracles();
    critical_points_random();
    reduction_conjugacy();
    involution_symmetry();
    regions();
    fixed_census();
    connectivity();
    angle_image();
    std::printf("map core: all sections passed\n");
    return 0;
}
