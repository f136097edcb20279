#include "blaschke/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace blaschke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) {
    double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}

// signed circular distance x - y reduced to (-1/2, 1/2]
double circ_delta(double x, double y) {
    double t = x - y;
    t -= std::floor(t);
    if (t > 0.5) t -= 1.0;
    return t;
}

// G^q(x) and (G^q)'(x) along the orbit
void orbit_eval(const CircleLift& L, double x, int q, double& gq, double& dgq) {
    double v = x, dp = 1.0;
    for (int i = 0; i < q; ++i) {
        dp *= L.derivative(v);
        v = L.eval(v);
    }
    gq = v;
    dgq = dp;
}

double displacement_q(const CircleLift& L, double x, int q) {
    double gq, dgq;
    orbit_eval(L, x, q, gq, dgq);
    return gq - x;
}

// all solutions of G^q(x) = x + p in [0,1), by grid scan + bisection
std::vector<double> cycle_roots(const CircleLift& L, long long p, int q) {
    const int N = 4096;
    std::vector<double> H(N + 1);
    for (int i = 0; i <= N; ++i)
        H[i] = displacement_q(L, double(i) / N, q) - double(p);

    std::vector<double> roots;
    for (int i = 0; i < N; ++i) {
        if (std::abs(H[i]) < 1e-12) {
            roots.push_back(double(i) / N);
            continue;
        }
        if (H[i] * H[i + 1] >= 0.0) continue;
        double lo = double(i) / N, hi = double(i + 1) / N, flo = H[i];
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = displacement_q(L, mid, q) - double(p);
            if (flo * fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        double x = 0.5 * (lo + hi);
        if (std::abs(displacement_q(L, x, q) - double(p)) <= 1e-9) roots.push_back(frac(x));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double x : roots) {
        if (!out.empty() && std::abs(circ_delta(x, out.back())) < 2e-9) continue;
        out.push_back(x);
    }
    while (out.size() > 1 && std::abs(circ_delta(out.front(), out.back())) < 2e-9)
        out.pop_back();
    return out;
}

Stability stability_of(double m) {
    double am = std::abs(m);
    if (am <= 1e-8) return Stability::SuperAttracting;
    if (am < 1.0 - 1e-8) return Stability::Attracting;
    if (am <= 1.0 + 1e-8) return Stability::Indifferent;
    return Stability::Repelling;
}

// group roots of G^q - x - p into orbits with exact period q
std::vector<CircleCycle> group_orbits(const CircleLift& L, const std::vector<double>& roots,
                                      long long p, int q, bool* lower_seen) {
    std::vector<CircleCycle> orbits;
    std::vector<bool> used(roots.size(), false);
    auto consume_near = [&](double ang) {
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (!used[k] && std::abs(circ_delta(roots[k], ang)) < 1e-6) used[k] = true;
    };

    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        double x0 = roots[i];
        std::vector<double> angles{x0};
        bool lower = false;
        double v = x0;
        for (int k = 1; k < q; ++k) {
            v = L.eval(v);
            double ang = frac(v);
            if (std::abs(circ_delta(ang, x0)) <= 1e-9) {
                lower = true;
                break;
            }
            angles.push_back(ang);
            consume_near(ang);
        }
        if (lower) {
            if (lower_seen) *lower_seen = true;
            continue;
        }
        double gq, dgq;
        orbit_eval(L, x0, q, gq, dgq);
        CircleCycle c;
        std::sort(angles.begin(), angles.end());
        c.angles = std::move(angles);
        c.p = p;
        c.q = q;
        c.multiplier = dgq;
        c.stability = stability_of(dgq);
        orbits.push_back(std::move(c));
    }
    return orbits;
}

// shared implementation; with allow_lower the error outcomes become an empty
// result so window scans can keep going
std::vector<CircleCycle> find_cycles_impl(const CircleLift& L, long long p, int q,
                                          bool allow_lower) {
    std::vector<double> roots = cycle_roots(L, p, q);
    if (roots.empty()) {
        if (allow_lower) return {};
        fail("NoCycle", "no solution of the periodicity equation");
    }
    bool lower_seen = false;
    std::vector<CircleCycle> orbits = group_orbits(L, roots, p, q, &lower_seen);
    if (orbits.empty()) {
        if (allow_lower) return {};
        fail("LowerPeriod", "all solutions belong to shorter cycles");
    }
    return orbits;
}

} // namespace

double CircleLift::eval(double x) const {
    double u = x - std::floor(x);
    double s = std::sin(kTwoPi * u);
    double c = std::cos(kTwoPi * u);
    return x + 2.0 * d * alpha + (d / std::numbers::pi) * std::atan(s / (c - r));
}

double CircleLift::derivative(double x) const {
    double u = x - std::floor(x);
    double c = std::cos(kTwoPi * u);
    double den = 1.0 - 2.0 * r * c + r * r;
    return (d + 1.0) + d * (1.0 - r * r) / den;
}

double CircleLift::iterate(double x, long long n) const {
    for (long long i = 0; i < n; ++i) x = eval(x);
    return x;
}

CircleLift lift_of(const MapParams& p) {
    if (p.r() <= 1.0 + 1e-12)
        fail("NotACircleCover", "the circle restriction needs |a| > 1");
    CircleLift L;
    L.d = p.d;
    L.r = p.r();
    L.alpha = p.alpha();
    return L;
}

std::vector<double> critical_angles(const CircleLift& L) {
    double s = 2.0 * L.d + 1.0;
    double cosv = (s + L.r * L.r) / (2.0 * L.r * (L.d + 1.0));
    if (cosv > 1.0) return {};
    double X = std::acos(cosv) / kTwoPi;
    if (X == 0.0) return {0.0};
    return {X, 1.0 - X};
}

RotationEstimate rotation_number(const CircleLift& L, double x0, long long n_iter,
                                 int q_max) {
    if (n_iter < 1) fail("InvalidArgument", "need at least one iteration");
    double u = frac(x0);
    double total = 0.0;
    for (long long i = 0; i < n_iter; ++i) {
        double v = L.eval(u);
        total += v - u;
        u = frac(v);
    }
    RotationEstimate est;
    est.raw = total / double(n_iter);
    est.value = frac(est.raw);
    est.error_bound = 2.0 / double(n_iter);

    for (int q = 1; q <= q_max; ++q) {
        long long pp = std::llround(est.raw * q);
        if (std::gcd(std::abs(pp), (long long)q) != 1) continue;
        if (std::abs(est.raw - double(pp) / q) > est.error_bound + 1e-12) continue;
        if (cycle_roots(L, pp, q).empty()) continue;
        long long num = ((pp % q) + q) % q;
        est.lock = Rational(num, q);
        est.value = est.lock->to_double();
        break;
    }
    return est;
}

bool RotationInterval::contains(long long p, long long q) const {
    if (q < 1) fail("InvalidArgument", "denominator must be positive");
    // an integer m with lo-tol <= (p+mq)/q <= hi+tol exists iff the rounded
    // bounds cross; shifts by q keep the fraction in the same residue class
    double tol = 1e-7;
    long long lo_m = (long long)std::ceil(((lo - tol) * q - double(p)) / double(q));
    long long hi_m = (long long)std::floor(((hi + tol) * q - double(p)) / double(q));
    return lo_m <= hi_m;
}

RotationInterval rotation_interval(const CircleLift& L, int grid_n, long long n_iter) {
    const int N = grid_n;
    std::vector<double> g(N);
    for (int i = 0; i < N; ++i) g[i] = L.eval(double(i) / N);

    // monotone envelopes: sup of G over (-inf, x] and inf over [x, +inf),
    // folded into one period using G(x+1) = G(x) + 1
    std::vector<double> upper(N), lower(N);
    {
        std::vector<double> pre(N), suf(N);
        pre[0] = g[0];
        for (int i = 1; i < N; ++i) pre[i] = std::max(pre[i - 1], g[i]);
        suf[N - 1] = g[N - 1];
        for (int i = N - 2; i >= 0; --i) suf[i] = std::max(suf[i + 1], g[i]);
        for (int i = 0; i < N; ++i) {
            double best = pre[i];
            if (i + 1 < N) best = std::max(best, suf[i + 1] - 1.0);
            upper[i] = best;
        }
    }
    {
        std::vector<double> pre(N), suf(N);
        suf[N - 1] = g[N - 1];
        for (int i = N - 2; i >= 0; --i) suf[i] = std::min(suf[i + 1], g[i]);
        pre[0] = g[0];
        for (int i = 1; i < N; ++i) pre[i] = std::min(pre[i - 1], g[i]);
        for (int i = 0; i < N; ++i) {
            double best = suf[i];
            if (i > 0) best = std::min(best, pre[i - 1] + 1.0);
            lower[i] = best;
        }
    }

    auto rho_of = [&](const std::vector<double>& env) {
        auto eval_env = [&](double u) {
            double t = u * N;
            int i = int(std::floor(t));
            double fr = t - i;
            double y0 = env[i];
            double y1 = (i + 1 < N) ? env[i + 1] : env[0] + 1.0;
            return y0 + fr * (y1 - y0);
        };
        double u = 0.123;
        double total = 0.0;
        for (long long k = 0; k < n_iter; ++k) {
            double v = eval_env(u);
            total += v - u;
            u = frac(v);
        }
        return total / double(n_iter);
    };

    RotationInterval out;
    out.lo = rho_of(lower);
    out.hi = rho_of(upper);
    if (out.lo > out.hi) std::swap(out.lo, out.hi);
    return out;
}

const char* stability_name(Stability s) {
    switch (s) {
    case Stability::SuperAttracting: return "SuperAttracting";
    case Stability::Attracting: return "Attracting";
    case Stability::Indifferent: return "Indifferent";
    case Stability::Repelling: return "Repelling";
    }
    return "?";
}

CircleCycle find_circle_cycle(const CircleLift& L, long long p, int q,
                              std::vector<CircleCycle>* all_out) {
    if (q < 1) fail("InvalidArgument", "period must be positive");
    std::vector<CircleCycle> orbits = find_cycles_impl(L, p, q, false);
    std::size_t best = 0;
    for (std::size_t i = 1; i < orbits.size(); ++i)
        if (std::abs(orbits[i].multiplier) < std::abs(orbits[best].multiplier)) best = i;
    CircleCycle chosen = orbits[best];
    if (all_out) *all_out = std::move(orbits);
    return chosen;
}

std::vector<CircleCycle> cycles_with_rotation(const CircleLift& L, long long p, int q) {
    if (q < 1) fail("InvalidArgument", "period must be positive");
    double center = 2.0 * L.d * L.alpha;
    long long lo = (long long)std::ceil(q * (center - L.d / 2.0));
    long long hi = (long long)std::floor(q * (center + L.d / 2.0));
    std::vector<CircleCycle> all;
    for (long long pp = lo; pp <= hi; ++pp) {
        if ((((pp - p) % q) + q) % q != 0) continue;
        std::vector<CircleCycle> found = find_cycles_impl(L, pp, q, true);
        all.insert(all.end(), found.begin(), found.end());
    }
    std::sort(all.begin(), all.end(), [](const CircleCycle& x, const CircleCycle& y) {
        return x.angles.front() < y.angles.front();
    });
    return all;
}

namespace {

// where one critical orbit ends up: index of the captured candidate cycle,
// -1 when it settles on some other periodic orbit, -2 when undecided
int settle_target(const CircleLift& L, double x_crit,
                  const std::vector<CircleCycle>& cands, int q) {
    double u = x_crit;
    for (int i = 0; i < 10000; ++i) u = frac(L.eval(u));
    for (int w = 0; w < 1000; ++w) {
        u = frac(L.eval(u));
        for (std::size_t j = 0; j < cands.size(); ++j)
            for (double ang : cands[j].angles)
                if (std::abs(circ_delta(u, ang)) <= 1e-8) return int(j);
    }
    int probe = std::max(q, 8);
    double v = u;
    for (int qq = 1; qq <= probe; ++qq) {
        v = L.eval(v);
        if (std::abs(circ_delta(frac(v), u)) <= 1e-9) return -1;
    }
    return -2;
}

} // namespace

Adjacency is_adjacent(const MapParams& P, long long pp, int q) {
    if (classify_region(P) != RegionClass::Endomorphism)
        fail("RegionMismatch", std::string("adjacency is defined in the interior regime, got ") +
                                   region_name(classify_region(P)));
    CircleLift L = lift_of(P);
    std::vector<CircleCycle> cands;
    for (CircleCycle& c : cycles_with_rotation(L, pp, q))
        if (c.stability != Stability::Repelling) cands.push_back(std::move(c));
    if (cands.empty()) return Adjacency::No;

    std::vector<double> xs = critical_angles(L);
    int first = settle_target(L, xs[0], cands, q);
    int second = xs.size() > 1 ? settle_target(L, xs[1], cands, q) : first;
    if (first >= 0 && first == second) return Adjacency::Yes;
    if (first == -2 || second == -2) return Adjacency::Inconclusive;
    return Adjacency::No;
}

double find_superattracting_alpha(int d, double r, long long p, int q, double lo,
                                  double hi) {
    if (q < 1) fail("InvalidArgument", "period must be positive");
    if (r <= 1.0 + 1e-12 || r >= 2.0 * d + 1.0 - 1e-12)
        fail("RegionMismatch", "free critical angles require 1 < r < 2d+1");
    if (!(lo < hi)) fail("InvalidArgument", "empty bracket");

    double s = 2.0 * d + 1.0;
    double x_plus = std::acos((s + r * r) / (2.0 * r * (d + 1.0))) / kTwoPi;

    // a superattracting cycle passes through one of the two critical angles;
    // solve the periodicity condition for each and pool the roots
    std::vector<double> found;
    for (double xc : {x_plus, 1.0 - x_plus}) {
        auto D = [&](double alpha) {
            CircleLift L{d, r, alpha};
            double gq, dgq;
            orbit_eval(L, xc, q, gq, dgq);
            return gq - xc;
        };

        const int M = 512;
        std::vector<double> as(M + 1), Ds(M + 1);
        for (int i = 0; i <= M; ++i) {
            as[i] = lo + (hi - lo) * (double(i) / M);
            if (i == 0) as[i] = lo + (hi - lo) * 1e-9; // bracket is open at lo
            Ds[i] = D(as[i]);
        }
        double dmin = *std::min_element(Ds.begin(), Ds.end());
        double dmax = *std::max_element(Ds.begin(), Ds.end());

        for (long long cand = (long long)std::ceil(dmin - 1e-9);
             cand <= (long long)std::floor(dmax + 1e-9); ++cand) {
            if ((((cand - p) % q) + q) % q != 0) continue;
            for (int i = 0; i < M; ++i) {
                double f0 = Ds[i] - cand, f1 = Ds[i + 1] - cand;
                if (f0 == 0.0) {
                    found.push_back(as[i]);
                    continue;
                }
                if (f0 * f1 > 0.0) continue;
                double a0 = as[i], a1 = as[i + 1], fl = f0;
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (a0 + a1);
                    double fm = D(mid) - cand;
                    if (fl * fm <= 0.0) {
                        a1 = mid;
                    } else {
                        a0 = mid;
                        fl = fm;
                    }
                }
                double root = 0.5 * (a0 + a1);
                if (std::abs(D(root) - cand) <= 1e-8) found.push_back(root);
            }
        }
    }
    if (found.empty())
        fail("NoSignChange", "no parameter in the bracket makes the critical orbit periodic");
    // smallest |alpha| wins; a conjugate pair +/-alpha is resolved toward the
    // positive representative (complex conjugation maps B_a to B_conj(a))
    double best = found[0];
    for (double a : found) {
        double da = std::abs(a), db = std::abs(best);
        if (da < db - 1e-9 || (da <= db + 1e-9 && a > best)) best = a;
    }
    return best;
}

ConnectivityVerdict connectivity_verdict(const MapParams& p) {
    ConnectivityVerdict v;
    if (p.r() <= 2.0 * p.d + 1.0 + 1e-12) {
        v.connected_unconditional = true;
        return v;
    }
    CircleLift L = lift_of(p);
    RotationEstimate est = rotation_number(L, 0.17, 8192, 12);
    v.circle_rotation = est.value;
    if (est.lock) {
        v.connected_unconditional = true;
        v.lock = std::make_pair(est.lock->num, int(est.lock->den));
    }
    return v;
}

} // namespace blaschke
