#include "blaschke/map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "blaschke/polyroots.hpp"

namespace blaschke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRegionTie = 1e-12;

cdouble powi(cdouble z, int n) {
    cdouble r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
    return v;
}


} // namespace

MapParams MapParams::from_polar(int d, double r, double alpha) {
    return MapParams(d, std::polar(r, kTwoPi * alpha));
}

double MapParams::arg_turns() const {
    double t = std::atan2(a.imag(), a.real()) / kTwoPi;
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    return t;
}

double MapParams::alpha() const {
    double m = arg_turns() * (2.0 * d);
    double frac = m - std::floor(m); // [0, 1)
    if (frac > 0.5) frac -= 1.0;     // (-1/2, 1/2]
    return frac / (2.0 * d);
}

const char* region_name(RegionClass rc) {
    switch (rc) {
    case RegionClass::TrivialDisk: return "TrivialDisk";
    case RegionClass::Endomorphism: return "Endomorphism";
    case RegionClass::HomeoBoundary: return "HomeoBoundary";
    case RegionClass::Diffeo: return "Diffeo";
    }
    return "?";
}

RegionClass classify_region(const MapParams& p) {
    double R = p.r();
    double s = 2.0 * p.d + 1.0;
    if (R <= 1.0 + kRegionTie) return RegionClass::TrivialDisk;
    if (std::abs(R - s) <= kRegionTie) return RegionClass::HomeoBoundary;
    if (R < s) return RegionClass::Endomorphism;
    return RegionClass::Diffeo;
}

MapParams reduce_parameters(cdouble c, double t, int d) {
    // conjugating by the rotation z -> e^{i pi t / d} z kills the phase factor
    return MapParams(d, c * std::polar(1.0, std::numbers::pi * t / d));
}

SpherePoint evaluate(const MapParams& p, const SpherePoint& zp) {
    const int d = p.d;
    const cdouble a = p.a;
    const cdouble ab = std::conj(a);

    if (p.monomial()) {
        if (zp.inf) return SpherePoint::infinity();
        return SpherePoint::finite(powi(-a, d) * powi(zp.z, d + 1));
    }

    if (zp.inf) return SpherePoint::infinity();
    const cdouble z = zp.z;
    const double big = 2.0 * std::max(std::abs(a), 1.0);

    if (std::abs(z) > big) {
        // reciprocal chart: with w = 1/z the same formula with a conjugated
        // gives 1/B(z), which is well conditioned for large |z|
        cdouble w = 1.0 / z;
        cdouble inv = powi(w, d + 1) * powi((w - ab) / (1.0 - a * w), d);
        if (inv == cdouble{0.0, 0.0}) return SpherePoint::infinity();
        return SpherePoint::finite(1.0 / inv);
    }

    cdouble den = 1.0 - ab * z;
    if (den == cdouble{0.0, 0.0}) return SpherePoint::infinity();
    return SpherePoint::finite(powi(z, d + 1) * powi((z - a) / den, d));
}

SpherePoint evaluate_ct(cdouble c, double t, int d, const SpherePoint& zp) {
    if (zp.inf) return SpherePoint::infinity();
    const cdouble z = zp.z;
    cdouble den = 1.0 - std::conj(c) * z;
    if (den == cdouble{0.0, 0.0}) return SpherePoint::infinity();
    cdouble phase = std::polar(1.0, kTwoPi * t);
    cdouble w = powi(z, d + 1) * powi((z - c) / den, d);
    return SpherePoint::finite(phase * w);
}

cdouble h_eval(const MapParams& p, cdouble z) {
    const double d1 = p.d + 1.0;
    const double s = 2.0 * p.d + 1.0;
    return std::conj(p.a) * d1 * z * z - (s + std::norm(p.a)) * z + p.a * d1;
}

cdouble derivative(const MapParams& p, cdouble z) {
    const int d = p.d;
    const cdouble a = p.a;
    const cdouble ab = std::conj(a);

    if (p.monomial()) return double(d + 1) * powi(-a, d) * powi(z, d);

    cdouble den = 1.0 - ab * z;
    if (den == cdouble{0.0, 0.0}) fail("PoleDerivative", "derivative at the pole");
    return -powi(z, d) * powi(z - a, d - 1) * h_eval(p, z) / powi(den, d + 1);
}

std::pair<cdouble, cdouble> free_critical_points(const MapParams& p) {
    if (p.a == cdouble{0.0, 0.0})
        fail("DegenerateParameter", "free critical points merge into 0 and infinity");
    const double d1 = p.d + 1.0;
    const double s = 2.0 * p.d + 1.0;
    const double r2 = std::norm(p.a);
    const double disc = (r2 - s * s) * (r2 - 1.0);
    cdouble root = disc >= 0.0 ? cdouble{std::sqrt(disc), 0.0}
                               : cdouble{0.0, std::sqrt(-disc)};
    cdouble scale = p.a / (2.0 * d1 * r2);
    return {scale * (s + r2 + root), scale * ((s + r2) - root)};
}

namespace {

// The extra circle preimage of the critical value v = B(c) paired with a
// free critical point c on the circle. Solved in the plane: the roots of
// z^{d+1}(z-a)^d - v(1-conj(a)z)^d are the 2d+1 preimages of v, of which
// the on-circle ones are c (twice) and the cocritical point (once). Picking
// the on-circle root farthest from c removes the double root without any
// separation bookkeeping, which an angular sign-change scan cannot do once
// the fold flattens near the ends of the band.
cdouble cocritical_of(const MapParams& p, cdouble c_free) {
    SpherePoint v_sp = evaluate(p, SpherePoint::finite(c_free));
    if (v_sp.inf) fail("CocriticalNotFound", "critical value at infinity");
    const cdouble v = v_sp.z;
    const int d = p.d;
    std::vector<cdouble> coeffs(2 * d + 2, cdouble{0.0, 0.0});
    for (int k = 0; k <= d; ++k) {
        coeffs[d + 1 + k] += binom(d, k) * powi(-p.a, d - k);
        coeffs[k] -= v * binom(d, k) * powi(-std::conj(p.a), k);
    }
    cdouble best{0.0, 0.0};
    double best_dist = -1.0;
    int near_circle = 0;
    for (const cdouble& z : polynomial_roots(coeffs)) {
        if (std::abs(std::abs(z) - 1.0) > 1e-5) continue;
        ++near_circle;
        double dist = std::abs(z - c_free);
        if (dist > best_dist) {
            best_dist = dist;
            best = z;
        }
    }
    if (near_circle < 2 || best_dist < 1e-4)
        fail("CocriticalNotFound",
             "no separated circle preimage of the critical value");
    return best / std::abs(best);
}

} // namespace

CriticalSet critical_set(const MapParams& p) {
    auto [cp, cm] = free_critical_points(p);
    CriticalSet out;
    out.fixed_critical.push_back({SpherePoint::finite({0.0, 0.0}), p.d});
    out.fixed_critical.push_back({SpherePoint::infinity(), p.d});
    if (p.d > 1) {
        out.fixed_critical.push_back({SpherePoint::finite(p.a), p.d - 1});
        out.fixed_critical.push_back(
            {SpherePoint::finite(1.0 / std::conj(p.a)), p.d - 1});
    }
    out.c_plus = cp;
    out.c_minus = cm;

    if (classify_region(p) == RegionClass::Endomorphism) {
        const double s = 2.0 * p.d + 1.0;
        const double r = p.r();
        double cosv = (s + r * r) / (2.0 * r * (p.d + 1.0));
        if (cosv < 1.0)
            out.cocritical =
                std::make_pair(cocritical_of(p, cp), cocritical_of(p, cm));
    }
    return out;
}

namespace {

bool sphere_less(const FixedPointRecord& x, const FixedPointRecord& y) {
    auto rank = [](const FixedPointRecord& f) {
        if (f.tag == FixedPointTag::Zero) return 0;
        if (f.tag == FixedPointTag::Infinity) return 2;
        return 1;
    };
    int rx = rank(x), ry = rank(y);
    if (rx != ry) return rx < ry;
    if (x.point.z.real() != y.point.z.real()) return x.point.z.real() < y.point.z.real();
    return x.point.z.imag() < y.point.z.imag();
}

FixedPointRecord make_record(const MapParams& p, cdouble z) {
    FixedPointRecord rec;
    rec.point = SpherePoint::finite(z);
    rec.multiplier = derivative(p, z);
    rec.residual = chordal(evaluate(p, rec.point), rec.point);
    rec.tag = std::abs(std::abs(z) - 1.0) <= 1e-8 ? FixedPointTag::OnCircle
                                                  : FixedPointTag::OffCircle;
    return rec;
}

} // namespace

std::vector<FixedPointRecord> fixed_points(const MapParams& p) {
    std::vector<FixedPointRecord> recs;

    FixedPointRecord zero;
    zero.point = SpherePoint::finite({0.0, 0.0});
    zero.multiplier = {0.0, 0.0};
    zero.residual = 0.0;
    zero.tag = FixedPointTag::Zero;
    recs.push_back(zero);

    if (p.monomial()) {
        // (-a)^d z^{d+1} = z on the circle: z^d = (-conj(a))^d
        cdouble base = powi(-std::conj(p.a), p.d);
        double arg0 = std::atan2(base.imag(), base.real());
        for (int k = 0; k < p.d; ++k) {
            cdouble z = std::polar(1.0, (arg0 + kTwoPi * k) / p.d);
            FixedPointRecord rec = make_record(p, z);
            rec.tag = FixedPointTag::OnCircle;
            recs.push_back(rec);
        }
    } else {
        // z^d (z-a)^d - (1 - conj(a) z)^d, a monic polynomial of degree 2d
        const int d = p.d;
        std::vector<cdouble> coef(2 * d + 1, cdouble{0.0, 0.0});
        for (int k = 0; k <= d; ++k)
            coef[d + k] += binom(d, k) * powi(-p.a, d - k);
        for (int j = 0; j <= d; ++j)
            coef[j] -= binom(d, j) * powi(-std::conj(p.a), j);
        for (cdouble z : polynomial_roots(coef)) recs.push_back(make_record(p, z));
    }

    FixedPointRecord inf;
    inf.point = SpherePoint::infinity();
    inf.multiplier = {0.0, 0.0}; // local degree d+1 there
    inf.residual = chordal(evaluate(p, inf.point), inf.point);
    inf.tag = FixedPointTag::Infinity;
    recs.push_back(inf);

    std::sort(recs.begin(), recs.end(), sphere_less);
    return recs;
}

double circle_angle_image(const MapParams& p, double x, double* mod_err) {
    double u = x - std::floor(x);
    cdouble z = std::polar(1.0, kTwoPi * u);
    SpherePoint w = evaluate(p, SpherePoint::finite(z));
    if (w.inf) fail("NotOnCircle", "circle image escaped");
    if (mod_err) *mod_err = std::abs(std::abs(w.z) - 1.0);
    double ang = std::atan2(w.z.imag(), w.z.real()) / kTwoPi;
    ang -= std::floor(ang);
    if (ang >= 1.0) ang = 0.0;
    return ang;
}

} // namespace blaschke
