#include "blaschke/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>

#include <omp.h>

#include "blaschke/format.hpp"

namespace blaschke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const unsigned char kBaseColors[3][3] = {
    {0, 0, 0},      // undecided
    {30, 30, 160},  // attracted to 0
    {160, 30, 30},  // attracted to infinity
};

const unsigned char kCycleColors[8][3] = {
    {240, 200, 60}, {80, 200, 120},  {200, 120, 220}, {60, 200, 220},
    {230, 150, 40}, {140, 220, 60},  {220, 80, 140},  {100, 140, 240},
};

} // namespace

std::vector<CycleRef> circle_cycle_table(const MapParams& p, int q_max) {
    std::vector<CycleRef> out;
    if (p.r() <= 1.0 + 1e-12) return out;
    CircleLift L = lift_of(p);
    double A = p.arg_turns();
    for (int q = 1; q <= q_max; ++q) {
        std::vector<CircleCycle> at_q;
        for (int res = 0; res < q; ++res)
            for (CircleCycle& c : cycles_with_rotation(L, res, q))
                if (c.stability != Stability::Repelling) at_q.push_back(std::move(c));
        std::sort(at_q.begin(), at_q.end(), [](const CircleCycle& x, const CircleCycle& y) {
            return x.angles.front() < y.angles.front();
        });
        for (const CircleCycle& c : at_q) {
            CycleRef ref;
            for (double ang : c.angles)
                ref.plane_points.push_back(std::polar(1.0, kTwoPi * (ang + A)));
            ref.q = c.q;
            ref.multiplier = c.multiplier;
            out.push_back(std::move(ref));
            if (out.size() >= 200) return out; // pixel ids are one byte
        }
    }
    return out;
}

std::uint8_t classify_point(const MapParams& p, cdouble z0, int budget, double r_in,
                            double R_out, const std::vector<CycleRef>& cycles) {
    SpherePoint z = SpherePoint::finite(z0);
    int cand = -1, streak = 0;
    for (int it = 0; it < budget; ++it) {
        if (z.inf) return kClassToInfinity;
        double m = std::abs(z.z);
        if (m <= r_in) return kClassToZero;
        if (m >= R_out) return kClassToInfinity;

        int hit = -1;
        for (std::size_t k = 0; k < cycles.size() && hit < 0; ++k)
            for (const cdouble& pt : cycles[k].plane_points)
                if (std::abs(z.z - pt) <= 1e-6) {
                    hit = int(k);
                    break;
                }
        if (hit >= 0) {
            if (hit == cand) {
                ++streak;
            } else {
                cand = hit;
                streak = 1;
            }
            if (streak >= cycles[std::size_t(hit)].q + 1)
                return std::uint8_t(kClassCycleBase + hit);
        } else {
            cand = -1;
            streak = 0;
        }
        z = evaluate(p, z);
    }
    return kClassUndecided;
}

namespace {

Raster make_raster(const MapParams& p, const Viewport& vp, int budget) {
    if (vp.width < 1 || vp.height < 1) fail("InvalidArgument", "empty viewport");
    if (budget < 1) fail("InvalidArgument", "iteration budget must be positive");
    Raster ra;
    ra.vp = vp;
    ra.params = p;
    ra.budget = budget;
    ra.cycles = circle_cycle_table(p, 8);
    ra.classes.assign(std::size_t(vp.width) * vp.height, kClassUndecided);
    return ra;
}

} // namespace

Raster render_dynamical_plane(const MapParams& p, const Viewport& vp, int budget,
                              int threads) {
    Raster ra = make_raster(p, vp, budget);
    const int W = vp.width, H = vp.height;
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1)
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i)
            ra.classes[std::size_t(j) * W + i] = classify_point(
                p, vp.pixel_center(i, j), budget, ra.r_in, ra.R_out, ra.cycles);
    return ra;
}

Raster render_dynamical_plane_serial(const MapParams& p, const Viewport& vp, int budget) {
    Raster ra = make_raster(p, vp, budget);
    const int W = vp.width, H = vp.height;
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i)
            ra.classes[std::size_t(j) * W + i] = classify_point(
                p, vp.pixel_center(i, j), budget, ra.r_in, ra.R_out, ra.cycles);
    return ra;
}

void write_ppm(const Raster& raster, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("IoError", "cannot open " + path);
    f << "P6\n" << raster.vp.width << " " << raster.vp.height << "\n255\n";
    for (std::uint8_t id : raster.classes) {
        const unsigned char* rgb =
            id < 3 ? kBaseColors[id] : kCycleColors[(id - kClassCycleBase) % 8];
        f.write(reinterpret_cast<const char*>(rgb), 3);
    }
    if (!f) fail("IoError", "short write to " + path);
}

namespace {

ScanCell compute_cell(int d, double r, double alpha, int q_max) {
    ScanCell c;
    c.r = r;
    c.alpha = alpha;
    c.rho_lo = std::numeric_limits<double>::quiet_NaN();
    c.rho_hi = std::numeric_limits<double>::quiet_NaN();
    MapParams P = MapParams::from_polar(d, r, alpha);
    c.region = classify_region(P);
    if (c.region == RegionClass::TrivialDisk) return c;

    CircleLift L = lift_of(P);
    if (c.region == RegionClass::Endomorphism) {
        RotationInterval iv = rotation_interval(L, 512, 20000);
        c.rho_lo = iv.lo;
        c.rho_hi = iv.hi;
        for (int q = 1; q <= q_max && !c.lock; ++q) {
            long long plo = (long long)std::ceil(iv.lo * q - 1e-9);
            long long phi = (long long)std::floor(iv.hi * q + 1e-9);
            for (long long pp = plo; pp <= phi; ++pp) {
                if (std::gcd(std::abs(pp), (long long)q) != 1) continue;
                c.lock = std::make_pair(((pp % q) + q) % q, q);
                break;
            }
        }
        if (c.lock) {
            Adjacency adj = is_adjacent(P, c.lock->first, c.lock->second);
            if (adj != Adjacency::Inconclusive) c.adjacent = (adj == Adjacency::Yes);
        }
    } else {
        RotationEstimate est = rotation_number(L, 0.17, 20000, q_max);
        c.rho_lo = c.rho_hi = est.raw;
        if (est.lock) c.lock = std::make_pair(est.lock->num, (int)est.lock->den);
    }
    return c;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * (double(i) / (n - 1));
    return v;
}

ScanGrid make_grid(int d, double r_lo, double r_hi, int n_r, double alpha_lo,
                   double alpha_hi, int n_alpha) {
    if (d < 1) fail("InvalidArgument", "need d >= 1");
    if (n_r < 1 || n_alpha < 1) fail("InvalidArgument", "empty scan grid");
    ScanGrid g;
    g.d = d;
    g.r_values = linspace(r_lo, r_hi, n_r);
    g.alpha_values = linspace(alpha_lo, alpha_hi, n_alpha);
    g.cells.resize(std::size_t(n_r) * n_alpha);
    return g;
}

} // namespace

ScanGrid scan_tongues(int d, double r_lo, double r_hi, int n_r, double alpha_lo,
                      double alpha_hi, int n_alpha, int q_max, int threads) {
    ScanGrid g = make_grid(d, r_lo, r_hi, n_r, alpha_lo, alpha_hi, n_alpha);
    const long long total = (long long)n_r * n_alpha;
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1)
    for (long long idx = 0; idx < total; ++idx) {
        int ir = int(idx / n_alpha), ia = int(idx % n_alpha);
        g.cells[idx] = compute_cell(d, g.r_values[ir], g.alpha_values[ia], q_max);
    }
    return g;
}

ScanGrid scan_tongues_serial(int d, double r_lo, double r_hi, int n_r, double alpha_lo,
                             double alpha_hi, int n_alpha, int q_max) {
    ScanGrid g = make_grid(d, r_lo, r_hi, n_r, alpha_lo, alpha_hi, n_alpha);
    const long long total = (long long)n_r * n_alpha;
    for (long long idx = 0; idx < total; ++idx) {
        int ir = int(idx / n_alpha), ia = int(idx % n_alpha);
        g.cells[idx] = compute_cell(d, g.r_values[ir], g.alpha_values[ia], q_max);
    }
    return g;
}

void write_scan_csv(const ScanGrid& grid, const std::string& path) {
    std::ofstream f(path);
    if (!f) fail("IoError", "cannot open " + path);
    f << "r,alpha,region,rho_lo,rho_hi,lock_p,lock_q,adjacent\n";
    for (const ScanCell& c : grid.cells) {
        f << fmt17(c.r) << ',' << fmt17(c.alpha) << ',' << region_name(c.region) << ',';
        if (!std::isnan(c.rho_lo)) f << fmt17(c.rho_lo);
        f << ',';
        if (!std::isnan(c.rho_hi)) f << fmt17(c.rho_hi);
        f << ',';
        if (c.lock) f << c.lock->first;
        f << ',';
        if (c.lock) f << c.lock->second;
        f << ',';
        if (c.adjacent) f << (*c.adjacent ? '1' : '0');
        f << '\n';
    }
    if (!f) fail("IoError", "short write to " + path);
}

void write_scan_json(const ScanGrid& grid, const std::string& path) {
    JsonWriter j;
    j.begin_object();
    j.key("d");
    j.value_int(grid.d);
    j.key("r_values");
    j.begin_array();
    for (double r : grid.r_values) j.value_num(r);
    j.end_array();
    j.key("alpha_values");
    j.begin_array();
    for (double a : grid.alpha_values) j.value_num(a);
    j.end_array();
    j.key("cells");
    j.begin_array();
    for (const ScanCell& c : grid.cells) {
        j.begin_object();
        j.key("r");
        j.value_num(c.r);
        j.key("alpha");
        j.value_num(c.alpha);
        j.key("region");
        j.value_str(region_name(c.region));
        j.key("rho_lo");
        std::isnan(c.rho_lo) ? j.value_null() : j.value_num(c.rho_lo);
        j.key("rho_hi");
        std::isnan(c.rho_hi) ? j.value_null() : j.value_num(c.rho_hi);
        j.key("lock_p");
        c.lock ? j.value_int(c.lock->first) : j.value_null();
        j.key("lock_q");
        c.lock ? j.value_int(c.lock->second) : j.value_null();
        j.key("adjacent");
        c.adjacent ? j.value_bool(*c.adjacent) : j.value_null();
        j.end_object();
    }
    j.end_array();
    j.end_object();
    std::ofstream f(path);
    if (!f) fail("IoError", "cannot open " + path);
    f << j.str() << '\n';
    if (!f) fail("IoError", "short write to " + path);
}

} // namespace blaschke
