#include "blaschke/rotation_sets.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

namespace blaschke {

namespace {

constexpr long long kMaxCyclePoints = 20'000'000;

long long checked_pow_minus_one(int n, int q) {
    __int128 m = 1;
    for (int i = 0; i < q; ++i) {
        m *= n;
        if (m - 1 > kMaxCyclePoints) fail("BudgetExceeded", "n^q - 1 exceeds the search budget");
    }
    return (long long)(m - 1);
}

// positions the map induces on the sorted orbit must be a rigid shift
std::optional<long long> rotation_shift(int n, const std::vector<Rational>& sorted_pts) {
    const int q = int(sorted_pts.size());
    std::vector<int> sigma(q, -1);
    for (int i = 0; i < q; ++i) {
        Rational img = mn_apply(n, sorted_pts[i]);
        auto it = std::lower_bound(sorted_pts.begin(), sorted_pts.end(), img);
        if (it == sorted_pts.end() || !(*it == img)) return std::nullopt;
        sigma[i] = int(it - sorted_pts.begin());
    }
    for (int i = 0; i < q; ++i)
        if (sigma[i] != (sigma[0] + i) % q) return std::nullopt;
    return (long long)sigma[0];
}

std::vector<Rational> deployment_of(int n, const std::vector<Rational>& pts) {
    const int q = int(pts.size());
    std::vector<Rational> dep;
    for (int i = 1; i <= n - 1; ++i) {
        Rational lo(i - 1, n - 1), hi(i, n - 1);
        long long cnt = 0;
        for (const Rational& t : pts)
            if (lo <= t && t < hi) ++cnt;
        dep.push_back(Rational(cnt, q));
    }
    return dep;
}

} // namespace

Rational mn_apply_map(int n, const Rational& t) { return mn_apply(n, t); }

std::vector<MnCycle> enumerate_cycles(int n, int q, int threads) {
    if (n < 2) fail("InvalidArgument", "need n >= 2");
    if (q < 1) fail("InvalidArgument", "need q >= 1");
    if (q > 12) fail("BudgetExceeded", "period budget is q <= 12");
    const long long M = checked_pow_minus_one(n, q);

    int nt = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<MnCycle>> buckets(nt);

#pragma omp parallel num_threads(nt)
    {
        int tid = omp_get_thread_num();
#pragma omp for schedule(dynamic, 8192)
        for (long long k = 0; k < M; ++k) {
            // keep only the smallest representative of each orbit, with
            // exact period q
            long long v = k;
            int period = 0;
            bool is_min = true;
            do {
                v = (v * n) % M;
                ++period;
                if (v < k) {
                    is_min = false;
                    break;
                }
            } while (v != k && period <= q);
            if (!is_min || period != q) continue;

            std::vector<Rational> pts;
            pts.reserve(q);
            long long w = k;
            for (int i = 0; i < q; ++i) {
                pts.push_back(Rational(w, M));
                w = (w * n) % M;
            }
            std::sort(pts.begin(), pts.end());
            std::optional<long long> s = rotation_shift(n, pts);
            if (!s) continue;

            MnCycle c;
            c.n = n;
            c.points = std::move(pts);
            c.p = *s;
            c.q = q;
            c.deployment = deployment_of(n, c.points);
            buckets[tid].push_back(std::move(c));
        }
    }

    std::vector<MnCycle> out;
    for (std::vector<MnCycle>& b : buckets)
        for (MnCycle& c : b) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const MnCycle& x, const MnCycle& y) { return x.points[0] < y.points[0]; });
    return out;
}

CycleInvariants cycle_invariants(int n, const Rational& t) {
    if (n < 2) fail("InvalidArgument", "need n >= 2");
    Rational t0 = t.mod1();
    if (std::gcd(t0.den, (long long)n) != 1)
        fail("NotPeriodic", "orbit is strictly preperiodic");

    std::vector<Rational> pts{t0};
    Rational cur = mn_apply(n, t0);
    while (!(cur == t0)) {
        pts.push_back(cur);
        cur = mn_apply(n, cur);
        if (pts.size() > 1'000'000) fail("BudgetExceeded", "period too large");
    }
    std::sort(pts.begin(), pts.end());

    CycleInvariants inv;
    std::optional<long long> s = rotation_shift(n, pts);
    if (!s) return inv;
    inv.is_rotation_set = true;
    inv.rho = Rational(*s, (long long)pts.size());
    inv.deployment = deployment_of(n, pts);
    return inv;
}

std::optional<MnCycle> goldberg_realize(int n, const Rational& rho,
                                        const std::vector<Rational>& deployment) {
    if (n < 2) fail("InvalidArgument", "need n >= 2");
    if ((int)deployment.size() != n - 1)
        fail("InvalidArgument", "deployment needs n-1 entries");
    Rational r = rho.mod1();
    long long q = r.den;

    Rational sum(0, 1);
    for (const Rational& dlt : deployment) {
        if (dlt < Rational(0, 1)) fail("IntegralityViolation", "negative deployment entry");
        if ((dlt.num * q) % dlt.den != 0)
            fail("IntegralityViolation", "deployment times the period must be integral");
        sum = rat_add(sum, dlt);
    }
    if (!(sum == Rational(1, 1))) fail("IntegralityViolation", "deployment must sum to 1");

    std::vector<MnCycle> all = enumerate_cycles(n, int(q));
    std::optional<MnCycle> hit;
    for (MnCycle& c : all) {
        if (!(Rational(c.p, c.q) == r)) continue;
        if (c.deployment != deployment) continue;
        if (hit) fail("UniquenessViolation", "two cycles share rotation number and deployment");
        hit = std::move(c);
    }
    return hit;
}

SectorPartition partition_points(int d) {
    if (d < 1) fail("InvalidArgument", "need d >= 1");
    SectorPartition sp;
    sp.left = Rational(d - 1, d);
    sp.b_prime = Rational(d, d + 1);
    sp.a_prime = Rational((long long)d * d + d - 1, (long long)d * (d + 1));
    return sp;
}

namespace {

// 0 / 1 for the outer sectors, -1 for the middle sector, -2 outside I
int sector_of(const SectorPartition& sp, const Rational& t) {
    if (t < sp.left) return -2;
    if (t < sp.b_prime) return 0;
    if (t < sp.a_prime) return -1;
    if (t < Rational(1, 1)) return 1;
    return -2;
}

} // namespace

std::vector<int> itinerary(int d, const Rational& t, int length) {
    if (d < 1) fail("InvalidArgument", "need d >= 1");
    if (length < 0) fail("InvalidArgument", "negative length");
    SectorPartition sp = partition_points(d);
    Rational cur = t.mod1();
    if (sector_of(sp, cur) < 0) fail("NotInLambda", "base point is not in an outer sector");
    std::vector<int> out;
    for (int k = 1; k <= length; ++k) {
        cur = mn_apply(d + 1, cur);
        int s = sector_of(sp, cur);
        if (s < 0)
            fail("NotInLambda", "iterate " + std::to_string(k) + " leaves the outer sectors");
        out.push_back(s);
    }
    return out;
}

ItineraryInterval gen_interval(int d, long long p, int q) {
    if (d < 1) fail("InvalidArgument", "need d >= 1");
    if (q < 1) fail("InvalidArgument", "need q >= 1");
    const int n = d + 1;
    SectorPartition sp = partition_points(d);
    Rational rho = Rational(p, q).mod1();

    std::vector<Rational> dep(n - 1, Rational(0, 1));
    dep.back() = Rational(1, 1);
    std::optional<MnCycle> cyc = goldberg_realize(n, rho, dep);
    if (!cyc) fail("VerificationFailure", "no sector cycle with this rotation number");

    ItineraryInterval out;
    out.d = d;
    out.p = rho.num;
    out.q = int(rho.den);

    // smallest cycle point in the lower sector, and its sector word
    bool have_t1 = false;
    for (const Rational& x : cyc->points)
        if (sector_of(sp, x) == 0) {
            out.t1 = x;
            have_t1 = true;
            break;
        }
    if (!have_t1) fail("VerificationFailure", "cycle misses the lower sector");

    std::vector<int> word;
    Rational cur = out.t1;
    for (int j = 0; j < out.q; ++j) {
        int s = sector_of(sp, cur);
        if (s < 0) fail("VerificationFailure", "cycle touches the middle sector");
        word.push_back(s);
        cur = mn_apply(n, cur);
    }
    out.word = word;

    // pull the base sector back along the reversed word
    Rational lo = sp.left, hi = sp.b_prime; // the lower sector
    auto pull = [&](int branch) {
        long long c = branch == 0 ? d - 1 : d;
        lo = rat_div_int(rat_add(lo, Rational(c, 1)), n);
        hi = rat_div_int(rat_add(hi, Rational(c, 1)), n);
    };
    for (int j = out.q - 1; j >= 0; --j) pull(word[j]);
    out.a = lo;
    out.b = hi;

    // the defining properties of the interval, checked exactly
    Rational ma = out.a;
    for (int j = 0; j < out.q; ++j) ma = mn_apply(n, ma);
    if (!(ma == sp.left))
        fail("VerificationFailure", "left endpoint does not return to the sector boundary");
    Rational mb = out.b;
    for (int j = 0; j < out.q + 1; ++j) mb = mn_apply(n, mb);
    if (!(mb == Rational(0, 1)))
        fail("VerificationFailure", "right endpoint does not reach the fixed point");

    long long inside = 0;
    for (const Rational& x : cyc->points)
        if (out.a <= x && x <= out.b) {
            ++inside;
            if (!(x == out.t1)) fail("VerificationFailure", "a second cycle point enters the interval");
        }
    if (inside != 1 || !(out.a < out.t1) || !(out.t1 < out.b))
        fail("VerificationFailure", "base point is not interior to the interval");
    if (out.a < sp.left || sp.b_prime < out.b)
        fail("VerificationFailure", "interval leaves the lower sector");

    out.isolated = true;
    return out;
}

WordClass word_classify(int d, const Word& w) {
    if (d < 1) fail("InvalidArgument", "need d >= 1");
    for (const Symbol& s : w)
        if (s.value < 0 || s.value > d)
            fail("SymbolOutOfRange", "letter " + std::to_string(s.value));

    WordClass wc;
    if (w.empty()) return wc;

    auto plain_d = [&](const Symbol& s) { return s.value == d && !s.underlined; };
    bool ok = !w.back().underlined;
    for (std::size_t i = 0; ok && i + 1 < w.size(); ++i)
        ok = w[i].underlined ? plain_d(w[i + 1]) : !plain_d(w[i + 1]);
    if (!ok) return wc;

    wc.admissible = true;
    wc.in_S = wc.in_S0 = wc.in_S2 = true;
    for (const Symbol& s : w) {
        bool u0 = s.underlined && s.value == 0;
        bool ud = s.underlined && s.value == d;
        bool pd = plain_d(s);
        if (!(pd || u0 || ud)) wc.in_S = false;
        if (!(pd || u0)) wc.in_S0 = false;
        if (!(pd || ud)) wc.in_S2 = false;
    }
    return wc;
}

Word word_shift(const Word& w) {
    if (w.size() < 2) fail("LengthTooShort", "need at least two letters");
    return Word(w.begin() + 1, w.end());
}

} // namespace blaschke
