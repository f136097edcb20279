#include "blaschke/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blaschke/circle.hpp"
#include "blaschke/rotation_sets.hpp"

namespace blaschke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cdouble powi(cdouble z, int n) {
    cdouble r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// the d-th root mu of (-1/conj(a))^d with arg(mu) in (-pi/d, pi/d]; the map
// looks like (z -> mu^{-d} z^{d+1}) near infinity in the coordinate mu*z
cdouble normalizing_root(const MapParams& p) {
    cdouble w = powi(-1.0 / std::conj(p.a), p.d);
    if (w.imag() == 0.0) w = cdouble(w.real(), 0.0); // clear a negative zero
    double argw = std::atan2(w.imag(), w.real());
    return std::polar(std::pow(std::abs(w), 1.0 / p.d), argw / p.d);
}

// Newton pull-back: solve B(w) = target starting from the seed, damped by
// step halving; false when it fails to settle
bool pullback_step(const MapParams& p, cdouble target, cdouble& w) {
    for (int it = 0; it < 50; ++it) {
        SpherePoint Bw = evaluate(p, SpherePoint::finite(w));
        if (Bw.inf) return false;
        cdouble f = Bw.z - target;
        double fn = std::abs(f);
        if (fn <= 1e-13 * (1.0 + std::abs(target))) return true;
        cdouble dB;
        try {
            dB = derivative(p, w);
        } catch (const Error&) {
            return false;
        }
        if (dB == cdouble{0.0, 0.0}) return false;
        cdouble step = f / dB;
        cdouble w_new = w - step;
        for (int h = 0; h < 25; ++h) {
            SpherePoint Bn = evaluate(p, SpherePoint::finite(w_new));
            if (!Bn.inf && std::abs(Bn.z - target) < fn) break;
            step *= 0.5;
            w_new = w - step;
        }
        w = w_new;
    }
    SpherePoint Bw = evaluate(p, SpherePoint::finite(w));
    return !Bw.inf && std::abs(Bw.z - target) <= 1e-13 * (1.0 + std::abs(target));
}

} // namespace

const char* ray_status_name(RayStatus s) {
    switch (s) {
    case RayStatus::Landed: return "Landed";
    case RayStatus::BudgetExhausted: return "BudgetExhausted";
    case RayStatus::BranchLost: return "BranchLost";
    }
    return "?";
}

const char* biaccess_verdict_name(BiAccessVerdict v) {
    switch (v) {
    case BiAccessVerdict::Verified: return "Verified";
    case BiAccessVerdict::NotAdjacent: return "NotAdjacent";
    case BiAccessVerdict::NoRepellingCycle: return "NoRepellingCycle";
    case BiAccessVerdict::RayBudget: return "RayBudget";
    case BiAccessVerdict::LandingMismatch: return "LandingMismatch";
    }
    return "?";
}

cdouble boettcher_start(const MapParams& p, Basin basin, const Rational& angle,
                        double R0) {
    if (p.a == cdouble{0.0, 0.0})
        fail("BasinUndefined", "the two basins merge for the pure power map");
    if (R0 <= 0.0) fail("InvalidArgument", "starting radius must be positive");
    cdouble mu = normalizing_root(p);
    if (basin == Basin::Infinity) {
        double th = angle.mod1().to_double();
        return (R0 / mu) * std::polar(1.0, kTwoPi * th);
    }
    // the 0-side ray is the circle reflection of the infinity ray at -angle
    double th = rat_sub(Rational(0, 1), angle).mod1().to_double();
    cdouble v = (R0 / mu) * std::polar(1.0, kTwoPi * th);
    return 1.0 / std::conj(v);
}

BoettcherRay trace_ray(const MapParams& p, Basin basin, const Rational& angle,
                       int depth, double R0) {
    if (p.a == cdouble{0.0, 0.0})
        fail("BasinUndefined", "the two basins merge for the pure power map");
    if (depth < 1) fail("InvalidArgument", "depth must be positive");
    if (R0 <= 0.0) R0 = 1000.0 * std::max(p.r(), 1.0);

    BoettcherRay ray;
    ray.basin = basin;
    ray.angle = angle.mod1();
    ray.status = RayStatus::BudgetExhausted;

    // work on the infinity side; the 0-side ray is its circle reflection
    Rational theta = basin == Basin::Infinity
                         ? ray.angle
                         : rat_sub(Rational(0, 1), ray.angle).mod1();

    // forward orbit of the angle under multiplication by d+1
    std::vector<Rational> angles{theta};
    std::vector<int> img;
    for (;;) {
        Rational nxt = mn_apply(p.d + 1, angles.back());
        int idx = -1;
        for (std::size_t i = 0; i < angles.size(); ++i)
            if (angles[i] == nxt) {
                idx = int(i);
                break;
            }
        if (idx >= 0) {
            img.push_back(idx);
            break;
        }
        img.push_back(int(angles.size()));
        angles.push_back(nxt);
        if (angles.size() > 4096) fail("BudgetExceeded", "angle orbit too long");
    }

    const std::size_t m = angles.size();
    cdouble mu = normalizing_root(p);
    std::vector<cdouble> prev(m);
    for (std::size_t j = 0; j < m; ++j)
        prev[j] = (R0 / mu) * std::polar(1.0, kTwoPi * angles[j].to_double());

    double pot = std::log(R0);
    ray.points.push_back(prev[0]);
    ray.potentials.push_back(pot);

    for (int k = 1; k <= depth; ++k) {
        pot /= double(p.d + 1);
        std::vector<cdouble> cur(m);
        bool lost = false;
        for (std::size_t j = 0; j < m; ++j) {
            cdouble w = prev[j];
            if (!pullback_step(p, prev[std::size_t(img[j])], w) || std::abs(w) <= 1.0) {
                lost = true;
                break;
            }
            cur[j] = w;
        }
        if (lost) {
            ray.status = RayStatus::BranchLost;
            break;
        }
        prev = std::move(cur);
        ray.points.push_back(prev[0]);
        ray.potentials.push_back(pot);
    }

    if (basin == Basin::Zero) {
        for (cdouble& w : ray.points) w = 1.0 / std::conj(w);
    }

    if (ray.status != RayStatus::BranchLost) {
        std::size_t n = std::min<std::size_t>(10, ray.points.size());
        double diam = 0.0;
        for (std::size_t i = ray.points.size() - n; i < ray.points.size(); ++i)
            for (std::size_t j = i + 1; j < ray.points.size(); ++j)
                diam = std::max(diam, std::abs(ray.points[i] - ray.points[j]));
        if (diam <= 1e-8) {
            ray.status = RayStatus::Landed;
            ray.landing = ray.points.back();
        }
    }
    return ray;
}

BiAccessReport verify_biaccessible(const MapParams& P, long long pp, int q, int depth) {
    if (q < 1) fail("InvalidArgument", "period must be positive");
    Rational rho = Rational(pp, q).mod1();

    BiAccessReport rep;
    rep.p = rho.num;
    rep.q = int(rho.den);

    RegionClass rc = classify_region(P);
    if (rc == RegionClass::TrivialDisk) {
        rep.verdict = BiAccessVerdict::NotAdjacent;
        return rep;
    }
    CircleLift L = lift_of(P);

    // tongue membership gate: some non-repelling p/q cycle must exist on the
    // circle.  Trapping BOTH critical orbits would guarantee landing but is
    // not necessary for it (a superattracting cycle can coexist with a second
    // attractor that holds the other critical point), so the verdict rests on
    // the ray landings measured below.
    bool attracting = false;
    for (const CircleCycle& c : cycles_with_rotation(L, rep.p, rep.q))
        if (c.stability != Stability::Repelling) attracting = true;
    if (!attracting) {
        rep.verdict = BiAccessVerdict::NotAdjacent;
        return rep;
    }

    std::vector<CircleCycle> repelling;
    for (CircleCycle& c : cycles_with_rotation(L, rep.p, rep.q))
        if (c.stability == Stability::Repelling) repelling.push_back(std::move(c));
    if (repelling.empty()) {
        rep.verdict = BiAccessVerdict::NoRepellingCycle;
        return rep;
    }
    const CircleCycle& cyc = repelling.front();
    const double A = P.arg_turns();
    for (double ang : cyc.angles)
        rep.cycle.push_back(std::polar(1.0, kTwoPi * (ang + A)));

    // external angles: the rotation cycle of the (d+1)-fold angle map living
    // in the topmost sector, and its reflection for the 0 side
    std::vector<Rational> dep(std::size_t(P.d), Rational(0, 1));
    dep.back() = Rational(1, 1);
    std::optional<MnCycle> sector = goldberg_realize(P.d + 1, rho, dep);
    if (!sector) fail("VerificationFailure", "no angle cycle with this rotation number");

    auto land_one = [&](Basin basin, const Rational& th) {
        BoettcherRay ray = trace_ray(P, basin, th, depth, 0.0);
        RayLanding rl;
        rl.angle = th;
        rl.basin = basin;
        rl.status = ray.status;
        rl.endpoint = ray.points.empty() ? cdouble{0.0, 0.0} : ray.points.back();
        double g = 1e300;
        for (const cdouble& zt : rep.cycle) g = std::min(g, std::abs(rl.endpoint - zt));
        rl.gap = g;
        rep.rays.push_back(rl);
    };
    for (const Rational& th : sector->points) land_one(Basin::Infinity, th);
    for (const Rational& th : sector->points)
        land_one(Basin::Zero, rat_sub(Rational(0, 1), th).mod1());

    for (const RayLanding& rl : rep.rays)
        if (rl.status != RayStatus::Landed) {
            rep.verdict = BiAccessVerdict::RayBudget;
            return rep;
        }

    // every cycle point must be reached from both sides
    double worst = 0.0;
    const std::size_t n_inf = sector->points.size();
    for (const cdouble& zt : rep.cycle) {
        double best_inf = 1e300, best_zero = 1e300;
        for (std::size_t i = 0; i < rep.rays.size(); ++i) {
            double dist = std::abs(rep.rays[i].endpoint - zt);
            if (i < n_inf) best_inf = std::min(best_inf, dist);
            else best_zero = std::min(best_zero, dist);
        }
        worst = std::max(worst, std::max(best_inf, best_zero));
    }
    rep.max_gap = worst;
    rep.verdict = worst <= 1e-5 ? BiAccessVerdict::Verified : BiAccessVerdict::LandingMismatch;
    return rep;
}

} // namespace blaschke
