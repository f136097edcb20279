// Command-line front end: classify, critical, fixed, rotnum, tongues, julia,
// rays, biaccess, rotset, interval, words. Exit codes: 0 success, 2 usage,
// 3 numeric/model failure (one "error: Name: detail" line on stderr).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "blaschke/circle.hpp"
#include "blaschke/format.hpp"
#include "blaschke/map.hpp"
#include "blaschke/rational.hpp"
#include "blaschke/rays.hpp"
#include "blaschke/render.hpp"
#include "blaschke/rotation_sets.hpp"

namespace {

using namespace blaschke;

struct Usage {
    std::string msg;
};

[[noreturn]] void usage_fail(const std::string& m) { throw Usage{m}; }

cdouble parse_complex(const std::string& s, const char* flag) {
    std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        usage_fail(std::string(flag) + " expects RE,IM");
    try {
        std::size_t e1 = 0, e2 = 0;
        double re = std::stod(s.substr(0, comma), &e1);
        double im = std::stod(s.substr(comma + 1), &e2);
        if (e1 != comma || e2 != s.size() - comma - 1)
            usage_fail(std::string(flag) + " expects RE,IM");
        return {re, im};
    } catch (const std::logic_error&) {
        usage_fail(std::string(flag) + " expects RE,IM");
    }
}

Rational parse_rational(const std::string& s, const char* flag) {
    try {
        std::size_t slash = s.find('/');
        if (slash == std::string::npos) {
            std::size_t e = 0;
            long long n = std::stoll(s, &e);
            if (e != s.size()) usage_fail(std::string(flag) + " expects NUM or NUM/DEN");
            return Rational(n, 1);
        }
        std::size_t e1 = 0, e2 = 0;
        long long n = std::stoll(s.substr(0, slash), &e1);
        long long d = std::stoll(s.substr(slash + 1), &e2);
        if (e1 != slash || e2 != s.size() - slash - 1 || d <= 0)
            usage_fail(std::string(flag) + " expects NUM or NUM/DEN");
        return Rational(n, d);
    } catch (const std::logic_error&) {
        usage_fail(std::string(flag) + " expects NUM or NUM/DEN");
    }
}

std::vector<double> parse_doubles(const std::string& s, std::size_t n, const char* flag) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        try {
            std::size_t e = 0;
            out.push_back(std::stod(tok, &e));
            if (e != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            usage_fail(std::string(flag) + ": bad number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != n)
        usage_fail(std::string(flag) + " expects " + std::to_string(n) +
                   " comma-separated numbers");
    return out;
}

std::string cplx(const cdouble& z) {
    std::string s = fmt17(z.real());
    s += z.imag() < 0.0 ? "-" : "+";
    s += fmt17(std::fabs(z.imag()));
    s += "i";
    return s;
}

void jval_complex(JsonWriter& w, const cdouble& z) {
    w.begin_object();
    w.key("re");
    w.value_num(z.real());
    w.key("im");
    w.value_num(z.imag());
    w.end_object();
}

void jval_point(JsonWriter& w, const SpherePoint& pt) {
    if (pt.inf) w.value_str("inf");
    else jval_complex(w, pt.z);
}

const char* tag_name(FixedPointTag t) {
    switch (t) {
    case FixedPointTag::Zero: return "Zero";
    case FixedPointTag::Infinity: return "Infinity";
    case FixedPointTag::OnCircle: return "OnCircle";
    case FixedPointTag::OffCircle: return "OffCircle";
    }
    return "?";
}

const char* basin_name(Basin b) { return b == Basin::Zero ? "zero" : "infinity"; }

// shared map-parameter flags: either --a RE,IM or --r + --alpha
struct MapOpts {
    int d = 1;
    std::string a_str;
    double r = 0.0;
    double alpha = 0.0;
    CLI::Option* oa = nullptr;
    CLI::Option* orr = nullptr;
    CLI::Option* oal = nullptr;

    void add(CLI::App* sub) {
        sub->add_option("--d", d, "degree parameter d >= 1")
            ->required()
            ->check(CLI::PositiveNumber);
        oa = sub->add_option("--a", a_str, "complex parameter as RE,IM");
        orr = sub->add_option("--r", r, "|a| for polar input");
        oal = sub->add_option("--alpha", alpha, "arg(a)/2pi for polar input");
    }

    MapParams resolve() const {
        bool polar = orr->count() > 0 || oal->count() > 0;
        if (oa->count() > 0) {
            if (polar) usage_fail("give either --a or --r/--alpha, not both");
            return MapParams(d, parse_complex(a_str, "--a"));
        }
        if (orr->count() == 0 || oal->count() == 0)
            usage_fail("give --a RE,IM or both --r and --alpha");
        check_alpha_domain(d, alpha, "--alpha");
        return MapParams::from_polar(d, r, alpha);
    }

    static void check_alpha_domain(int d, double alpha, const char* flag) {
        double b = 1.0 / (4.0 * d);
        if (!(alpha >= -b && alpha <= b))
            usage_fail(std::string(flag) + " must lie in the fundamental domain [" +
                       fmt17(-b) + ", " + fmt17(b) + "]");
    }
};

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("IoError", "cannot open " + path);
    f.write(body.data(), std::streamsize(body.size()));
    if (!f) fail("IoError", "short write to " + path);
}

std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key=value option file; entries whose flag already appears on the command
// line are dropped, so explicit flags always win
void merge_config(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f) fail("IoError", "cannot open " + path);
    std::string line;
    while (std::getline(f, line)) {
        std::string t = trim_ws(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            usage_fail("--config: line without '=': " + t);
        std::string key = trim_ws(t.substr(0, eq));
        std::string val = trim_ws(t.substr(eq + 1));
        if (key.empty()) usage_fail("--config: empty key in: " + t);
        if (key == "config") continue;
        std::string flag = "--" + key;
        bool given = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        if (given) continue;
        if (val.empty()) args.push_back(flag);
        else args.push_back(flag + "=" + val);
    }
}

// ---------------------------------------------------------------- classify

void run_classify(const MapOpts& mo, bool json) {
    MapParams P = mo.resolve();
    RegionClass rc = classify_region(P);
    ConnectivityVerdict cv = connectivity_verdict(P);

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("classify");
        w.key("d");
        w.value_int(P.d);
        w.key("a");
        jval_complex(w, P.a);
        w.key("abs_a");
        w.value_num(P.r());
        w.key("alpha");
        w.value_num(P.alpha());
        w.key("map_degree");
        w.value_int(P.map_degree());
        w.key("region");
        w.value_str(region_name(rc));
        w.key("connectivity");
        w.begin_object();
        w.key("connected_unconditional");
        w.value_bool(cv.connected_unconditional);
        w.key("circle_rotation");
        if (cv.circle_rotation) w.value_num(*cv.circle_rotation);
        else w.value_null();
        w.key("lock");
        if (cv.lock) {
            w.begin_object();
            w.key("p");
            w.value_int(cv.lock->first);
            w.key("q");
            w.value_int(cv.lock->second);
            w.end_object();
        } else w.value_null();
        w.end_object();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("d: %d\n", P.d);
    std::printf("a: %s  (|a| = %s, alpha = %s)\n", cplx(P.a).c_str(), fmt17(P.r()).c_str(),
                fmt17(P.alpha()).c_str());
    std::printf("region: %s\n", region_name(rc));
    if (cv.connected_unconditional && cv.lock)
        std::printf("julia: connected (rotation lock %lld/%d)\n", cv.lock->first,
                    cv.lock->second);
    else if (cv.connected_unconditional)
        std::printf("julia: connected\n");
    else
        std::printf("julia: connected unless a Herman ring exists (measured rotation %s)\n",
                    fmt17(cv.circle_rotation ? *cv.circle_rotation : 0.0).c_str());
}

// ---------------------------------------------------------------- critical

void run_critical(const MapOpts& mo, bool json) {
    MapParams P = mo.resolve();
    CriticalSet cs = critical_set(P);
    std::vector<double> angles;
    if (P.r() > 1.0 + 1e-12) angles = critical_angles(lift_of(P));

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("critical");
        w.key("d");
        w.value_int(P.d);
        w.key("a");
        jval_complex(w, P.a);
        w.key("c_plus");
        jval_complex(w, cs.c_plus);
        w.key("c_minus");
        jval_complex(w, cs.c_minus);
        w.key("abs_c_plus");
        w.value_num(std::abs(cs.c_plus));
        w.key("abs_c_minus");
        w.value_num(std::abs(cs.c_minus));
        w.key("fixed_critical");
        w.begin_array();
        for (const CriticalPointRecord& rec : cs.fixed_critical) {
            w.begin_object();
            w.key("point");
            jval_point(w, rec.point);
            w.key("multiplicity");
            w.value_int(rec.multiplicity);
            w.end_object();
        }
        w.end_array();
        w.key("cocritical");
        if (cs.cocritical) {
            w.begin_array();
            jval_complex(w, cs.cocritical->first);
            jval_complex(w, cs.cocritical->second);
            w.end_array();
        } else w.value_null();
        w.key("circle_angles");
        w.begin_array();
        for (double x : angles) w.value_num(x);
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("c+: %s  (|c+| = %s)\n", cplx(cs.c_plus).c_str(),
                fmt17(std::abs(cs.c_plus)).c_str());
    std::printf("c-: %s  (|c-| = %s)\n", cplx(cs.c_minus).c_str(),
                fmt17(std::abs(cs.c_minus)).c_str());
    for (const CriticalPointRecord& rec : cs.fixed_critical)
        std::printf("fixed critical: %s  multiplicity %d\n",
                    rec.point.inf ? "inf" : cplx(rec.point.z).c_str(), rec.multiplicity);
    if (cs.cocritical)
        std::printf("cocritical: %s %s\n", cplx(cs.cocritical->first).c_str(),
                    cplx(cs.cocritical->second).c_str());
    if (!angles.empty()) {
        std::printf("circle angles:");
        for (double x : angles) std::printf(" %s", fmt17(x).c_str());
        std::printf("\n");
    }
}

// ------------------------------------------------------------------- fixed

void run_fixed(const MapOpts& mo, bool json) {
    MapParams P = mo.resolve();
    std::vector<FixedPointRecord> fps = fixed_points(P);

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("fixed");
        w.key("d");
        w.value_int(P.d);
        w.key("a");
        jval_complex(w, P.a);
        w.key("count");
        w.value_int((long long)fps.size());
        w.key("fixed_points");
        w.begin_array();
        for (const FixedPointRecord& f : fps) {
            w.begin_object();
            w.key("point");
            jval_point(w, f.point);
            w.key("multiplier");
            jval_complex(w, f.multiplier);
            w.key("abs_multiplier");
            w.value_num(std::abs(f.multiplier));
            w.key("residual");
            w.value_num(f.residual);
            w.key("tag");
            w.value_str(tag_name(f.tag));
            w.end_object();
        }
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("fixed points: %zu\n", fps.size());
    for (const FixedPointRecord& f : fps)
        std::printf("  %s  multiplier %s (|.| = %s)  residual %s  %s\n",
                    f.point.inf ? "inf" : cplx(f.point.z).c_str(),
                    cplx(f.multiplier).c_str(), fmt17(std::abs(f.multiplier)).c_str(),
                    fmt17(f.residual).c_str(), tag_name(f.tag));
}

// ------------------------------------------------------------------ rotnum

void run_rotnum(const MapOpts& mo, double x0, long long iters, int q_max, int grid,
                bool json) {
    MapParams P = mo.resolve();
    CircleLift L = lift_of(P);
    RotationEstimate est = rotation_number(L, x0, iters, q_max);
    std::optional<RotationInterval> iv;
    if (classify_region(P) == RegionClass::Endomorphism)
        iv = rotation_interval(L, grid, iters);

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("rotnum");
        w.key("d");
        w.value_int(P.d);
        w.key("r");
        w.value_num(P.r());
        w.key("alpha");
        w.value_num(P.alpha());
        w.key("value");
        w.value_num(est.value);
        w.key("raw");
        w.value_num(est.raw);
        w.key("error_bound");
        w.value_num(est.error_bound);
        w.key("lock");
        if (est.lock) w.value_str(est.lock->str());
        else w.value_null();
        w.key("interval");
        if (iv) {
            w.begin_object();
            w.key("lo");
            w.value_num(iv->lo);
            w.key("hi");
            w.value_num(iv->hi);
            w.end_object();
        } else w.value_null();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("rotation number: %s  (raw %s, error bound %s)\n", fmt17(est.value).c_str(),
                fmt17(est.raw).c_str(), fmt17(est.error_bound).c_str());
    if (est.lock) std::printf("lock: %s\n", est.lock->str().c_str());
    if (iv) std::printf("rotation interval: [%s, %s]\n", fmt17(iv->lo).c_str(),
                        fmt17(iv->hi).c_str());
}

// ----------------------------------------------------------------- tongues

void run_tongues(int d, double r_lo, double r_hi, int n_r, double a_lo, double a_hi,
                 int n_alpha, int q_max, const std::string& out,
                 const std::string& json_out, int threads, bool json) {
    MapOpts::check_alpha_domain(d, a_lo, "--amin");
    MapOpts::check_alpha_domain(d, a_hi, "--amax");
    ScanGrid grid = scan_tongues(d, r_lo, r_hi, n_r, a_lo, a_hi, n_alpha, q_max, threads);
    write_scan_csv(grid, out);
    if (!json_out.empty()) write_scan_json(grid, json_out);

    long long locked = 0, adjacent_yes = 0, undecided = 0;
    for (const ScanCell& c : grid.cells) {
        if (c.lock) ++locked;
        if (c.adjacent && *c.adjacent) ++adjacent_yes;
        if (c.lock && !c.adjacent && c.region == RegionClass::Endomorphism) ++undecided;
    }
    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("tongues");
        w.key("cells");
        w.value_int((long long)grid.cells.size());
        w.key("locked");
        w.value_int(locked);
        w.key("adjacent_yes");
        w.value_int(adjacent_yes);
        w.key("adjacency_undecided");
        w.value_int(undecided);
        w.key("outputs");
        w.begin_array();
        w.value_str(out);
        if (!json_out.empty()) w.value_str(json_out);
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("cells: %zu  locked: %lld  adjacent: %lld\n", grid.cells.size(), locked,
                adjacent_yes);
    if (undecided > 0)
        std::printf("warning: adjacency undecided on %lld locked cells\n", undecided);
    std::printf("wrote %s\n", out.c_str());
    if (!json_out.empty()) std::printf("wrote %s\n", json_out.c_str());
}

// ------------------------------------------------------------------- julia

void run_julia(const MapOpts& mo, const std::string& viewport, const std::string& res,
               int budget, const std::string& out, int threads, bool json) {
    MapParams P = mo.resolve();
    std::vector<double> vbox = parse_doubles(viewport, 4, "--viewport");
    Viewport vp;
    vp.x_min = vbox[0];
    vp.x_max = vbox[1];
    vp.y_min = vbox[2];
    vp.y_max = vbox[3];
    std::size_t xpos = res.find('x');
    if (xpos == std::string::npos) usage_fail("--res expects WxH");
    try {
        std::size_t e1 = 0, e2 = 0;
        vp.width = std::stoi(res.substr(0, xpos), &e1);
        vp.height = std::stoi(res.substr(xpos + 1), &e2);
        if (e1 != xpos || e2 != res.size() - xpos - 1) usage_fail("--res expects WxH");
    } catch (const std::logic_error&) {
        usage_fail("--res expects WxH");
    }
    if (vp.width < 1 || vp.height < 1) usage_fail("--res expects positive dimensions");
    if (!(vp.x_min < vp.x_max) || !(vp.y_min < vp.y_max))
        usage_fail("--viewport expects xmin<xmax and ymin<ymax");

    Raster raster = render_dynamical_plane(P, vp, budget, threads);
    write_ppm(raster, out);

    std::vector<long long> hist(3 + raster.cycles.size(), 0);
    for (std::uint8_t c : raster.classes)
        if (c < hist.size()) ++hist[c];
    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("julia");
        w.key("width");
        w.value_int(vp.width);
        w.key("height");
        w.value_int(vp.height);
        w.key("undecided");
        w.value_int(hist[kClassUndecided]);
        w.key("to_zero");
        w.value_int(hist[kClassToZero]);
        w.key("to_infinity");
        w.value_int(hist[kClassToInfinity]);
        w.key("cycles");
        w.begin_array();
        for (std::size_t k = 0; k < raster.cycles.size(); ++k) {
            w.begin_object();
            w.key("q");
            w.value_int(raster.cycles[k].q);
            w.key("multiplier");
            w.value_num(raster.cycles[k].multiplier);
            w.key("pixels");
            w.value_int(hist[kClassCycleBase + k]);
            w.end_object();
        }
        w.end_array();
        w.key("outputs");
        w.begin_array();
        w.value_str(out);
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("pixels: %d x %d  to-zero: %lld  to-infinity: %lld  undecided: %lld\n",
                vp.width, vp.height, hist[kClassToZero], hist[kClassToInfinity],
                hist[kClassUndecided]);
    for (std::size_t k = 0; k < raster.cycles.size(); ++k)
        std::printf("cycle %zu (q=%d, multiplier %s): %lld pixels\n", k,
                    raster.cycles[k].q, fmt17(raster.cycles[k].multiplier).c_str(),
                    hist[kClassCycleBase + k]);
    std::printf("wrote %s\n", out.c_str());
}

// -------------------------------------------------------------------- rays

void run_rays(const MapOpts& mo, const std::string& basin_str, const std::string& angle_str,
              int depth, double R0, const std::string& out, bool json) {
    MapParams P = mo.resolve();
    Basin basin;
    if (basin_str == "zero" || basin_str == "0") basin = Basin::Zero;
    else if (basin_str == "infinity" || basin_str == "inf") basin = Basin::Infinity;
    else usage_fail("--basin expects zero or infinity");
    Rational angle = parse_rational(angle_str, "--angle");

    BoettcherRay ray = trace_ray(P, basin, angle, depth, R0);

    std::string csv = "k,potential,re,im\n";
    for (std::size_t k = 0; k < ray.points.size(); ++k) {
        csv += std::to_string(k);
        csv += ',';
        csv += fmt17(ray.potentials[k]);
        csv += ',';
        csv += fmt17(ray.points[k].real());
        csv += ',';
        csv += fmt17(ray.points[k].imag());
        csv += '\n';
    }

    if (!out.empty()) write_text_file(out, csv);
    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("rays");
        w.key("basin");
        w.value_str(basin_name(basin));
        w.key("angle");
        w.value_str(ray.angle.str());
        w.key("status");
        w.value_str(ray_status_name(ray.status));
        w.key("samples");
        w.value_int((long long)ray.points.size());
        w.key("landing");
        if (ray.landing) jval_complex(w, *ray.landing);
        else w.value_null();
        if (out.empty()) {
            w.key("points");
            w.begin_array();
            for (std::size_t k = 0; k < ray.points.size(); ++k) {
                w.begin_object();
                w.key("k");
                w.value_int((long long)k);
                w.key("potential");
                w.value_num(ray.potentials[k]);
                w.key("re");
                w.value_num(ray.points[k].real());
                w.key("im");
                w.value_num(ray.points[k].imag());
                w.end_object();
            }
            w.end_array();
        } else {
            w.key("outputs");
            w.begin_array();
            w.value_str(out);
            w.end_array();
        }
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return;
    }
    std::printf("ray %s side %s: %s", ray.angle.str().c_str(), basin_name(basin),
                ray_status_name(ray.status));
    if (ray.landing) std::printf(" at %s", cplx(*ray.landing).c_str());
    std::printf(" (%zu samples)\n", ray.points.size());
    std::printf("wrote %s\n", out.c_str());
}

// ---------------------------------------------------------------- biaccess

void run_biaccess(int d, double r, const std::string& alpha_str, const std::string& a_str,
                  long long p, int q, int depth, const std::string& window, bool json) {
    MapParams P{};
    bool auto_alpha = false;
    double alpha_val = 0.0;
    if (!a_str.empty()) {
        if (!alpha_str.empty()) usage_fail("give either --a or --r/--alpha, not both");
        P = MapParams(d, parse_complex(a_str, "--a"));
        alpha_val = P.alpha();
    } else {
        if (alpha_str.empty()) usage_fail("give --a RE,IM or both --r and --alpha");
        if (alpha_str == "auto") {
            auto_alpha = true;
            double b = 1.0 / (4.0 * d);
            double lo = -b, hi = b;
            if (!window.empty()) {
                std::vector<double> wlim = parse_doubles(window, 2, "--window");
                lo = wlim[0];
                hi = wlim[1];
            }
            alpha_val = find_superattracting_alpha(d, r, p, q, lo, hi);
        } else {
            try {
                std::size_t e = 0;
                alpha_val = std::stod(alpha_str, &e);
                if (e != alpha_str.size()) throw std::invalid_argument(alpha_str);
            } catch (const std::logic_error&) {
                usage_fail("--alpha expects a number or auto");
            }
            MapOpts::check_alpha_domain(d, alpha_val, "--alpha");
        }
        P = MapParams::from_polar(d, r, alpha_val);
    }

    BiAccessReport rep = verify_biaccessible(P, p, q, depth);

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("biaccess");
        w.key("d");
        w.value_int(P.d);
        w.key("r");
        w.value_num(P.r());
        w.key("alpha");
        w.value_num(alpha_val);
        w.key("alpha_auto");
        w.value_bool(auto_alpha);
        w.key("p");
        w.value_int(rep.p);
        w.key("q");
        w.value_int(rep.q);
        w.key("verdict");
        w.value_str(biaccess_verdict_name(rep.verdict));
        w.key("verified");
        w.value_bool(rep.verdict == BiAccessVerdict::Verified);
        w.key("max_gap");
        w.value_num(rep.max_gap);
        w.key("cycle");
        w.begin_array();
        for (const cdouble& z : rep.cycle) jval_complex(w, z);
        w.end_array();
        w.key("rays");
        w.begin_array();
        for (const RayLanding& rl : rep.rays) {
            w.begin_object();
            w.key("angle");
            w.value_str(rl.angle.str());
            w.key("basin");
            w.value_str(basin_name(rl.basin));
            w.key("status");
            w.value_str(ray_status_name(rl.status));
            w.key("endpoint");
            jval_complex(w, rl.endpoint);
            w.key("gap");
            w.value_num(rl.gap);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    if (auto_alpha) std::printf("alpha: %s (auto)\n", fmt17(alpha_val).c_str());
    std::printf("verdict: %s  (p/q = %lld/%d, max gap %s)\n",
                biaccess_verdict_name(rep.verdict), rep.p, rep.q,
                fmt17(rep.max_gap).c_str());
    for (const cdouble& z : rep.cycle) std::printf("cycle point: %s\n", cplx(z).c_str());
    for (const RayLanding& rl : rep.rays)
        std::printf("ray %s side %s: %s  endpoint %s  gap %s\n", rl.angle.str().c_str(),
                    basin_name(rl.basin), ray_status_name(rl.status),
                    cplx(rl.endpoint).c_str(), fmt17(rl.gap).c_str());
}

// ------------------------------------------------------------------ rotset

std::string join_rationals(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += v[i].str();
    }
    return s;
}

void rotset_emit(const std::vector<MnCycle>& cycles, int n, int q, const std::string& out,
                 bool json) {
    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("rotset");
        w.key("n");
        w.value_int(n);
        w.key("q");
        w.value_int(q);
        w.key("cycles");
        w.begin_array();
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            const MnCycle& c = cycles[i];
            w.begin_object();
            w.key("id");
            w.value_int((long long)i);
            w.key("q");
            w.value_int(c.q);
            w.key("p");
            w.value_int(c.p);
            w.key("points");
            w.begin_array();
            for (const Rational& t : c.points) w.value_str(t.str());
            w.end_array();
            w.key("deployment");
            w.begin_array();
            for (const Rational& t : c.deployment) w.value_str(t.str());
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::string csv = "id,q,p,points,deployment\n";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const MnCycle& c = cycles[i];
        csv += std::to_string(i);
        csv += ',';
        csv += std::to_string(c.q);
        csv += ',';
        csv += std::to_string(c.p);
        csv += ',';
        csv += join_rationals(c.points);
        csv += ',';
        csv += join_rationals(c.deployment);
        csv += '\n';
    }
    if (out.empty()) std::fputs(csv.c_str(), stdout);
    else {
        write_text_file(out, csv);
        std::printf("wrote %s (%zu cycles)\n", out.c_str(), cycles.size());
    }
}

void run_rotset(int n, int q, CLI::Option* op, long long p, const std::string& deployment,
                const std::string& out, int threads, bool json) {
    if (op->count() == 0) {
        rotset_emit(enumerate_cycles(n, q, threads), n, q, out, json);
        return;
    }
    if (deployment.empty())
        usage_fail("--p needs --deployment m1,m2,... (sector counts summing to q)");
    if (std::gcd(p >= 0 ? p : -p, (long long)q) != 1)
        usage_fail("--p/--q must be in lowest terms");
    std::vector<double> raw = parse_doubles(deployment, std::size_t(n - 1), "--deployment");
    std::vector<Rational> dep;
    long long sum = 0;
    for (double v : raw) {
        long long m = std::llround(v);
        if (std::fabs(v - double(m)) > 0.0 || m < 0)
            usage_fail("--deployment expects nonnegative integers");
        sum += m;
        dep.push_back(Rational(m, q));
    }
    if (sum != q) usage_fail("--deployment entries must sum to q");
    std::optional<MnCycle> c = goldberg_realize(n, Rational(p, q), dep);
    std::vector<MnCycle> cycles;
    if (c) cycles.push_back(std::move(*c));
    rotset_emit(cycles, n, q, out, json);
}

// ---------------------------------------------------------------- interval

void run_interval(int d, long long p, int q) {
    ItineraryInterval iv = gen_interval(d, p, q);
    JsonWriter w;
    w.begin_object();
    w.key("a");
    w.value_str(iv.a.str());
    w.key("b");
    w.value_str(iv.b.str());
    w.key("t1");
    w.value_str(iv.t1.str());
    w.key("itinerary");
    w.begin_array();
    for (int s : iv.word) w.value_int(s);
    w.end_array();
    w.end_object();
    std::printf("%s\n", w.str().c_str());
}

// ------------------------------------------------------------------- words

Word parse_word(const std::string& s) {
    Word word;
    if (s.empty()) return word;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        Symbol sym;
        if (!tok.empty() && tok.back() == '_') {
            sym.underlined = true;
            tok.pop_back();
        }
        if (tok.empty()) usage_fail("--word: empty letter");
        try {
            std::size_t e = 0;
            sym.value = std::stoi(tok, &e);
            if (e != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            usage_fail("--word: bad letter '" + tok + "'");
        }
        word.push_back(sym);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return word;
}

void run_words(int d, const std::string& word_str, bool json) {
    Word word = parse_word(word_str);
    WordClass wc = word_classify(d, word);

    if (json) {
        JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value_str("words");
        w.key("d");
        w.value_int(d);
        w.key("word");
        w.begin_array();
        for (const Symbol& s : word)
            w.value_str(std::to_string(s.value) + (s.underlined ? "_" : ""));
        w.end_array();
        w.key("admissible");
        w.value_bool(wc.admissible);
        w.key("in_S");
        w.value_bool(wc.in_S);
        w.key("in_S0");
        w.value_bool(wc.in_S0);
        w.key("in_S2");
        w.value_bool(wc.in_S2);
        w.end_object();
        std::printf("%s\n", w.str().c_str());
        return;
    }
    std::printf("admissible: %s\n", wc.admissible ? "yes" : "no");
    std::printf("in_S: %s  in_S0: %s  in_S2: %s\n", wc.in_S ? "yes" : "no",
                wc.in_S0 ? "yes" : "no", wc.in_S2 ? "yes" : "no");
}

} // namespace

int main(int argc, char** argv) {
    auto t_start = std::chrono::steady_clock::now();

    CLI::App app{"dynamics of z^{d+1}((z-a)/(1-conj(a)z))^d on the Riemann sphere"};
    app.require_subcommand(1);

    bool json = false;
    int threads = 0;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", json, "machine-readable JSON on stdout");
        sub->add_option("--config", config_path, "key=value option file (flags win)");
        return sub;
    };

    // classify
    auto* c_classify = add_common(app.add_subcommand("classify", "region and connectivity"));
    MapOpts mo_classify;
    mo_classify.add(c_classify);
    c_classify->callback([&] { run_classify(mo_classify, json); });

    // critical
    auto* c_critical = add_common(app.add_subcommand("critical", "critical points and angles"));
    MapOpts mo_critical;
    mo_critical.add(c_critical);
    c_critical->callback([&] { run_critical(mo_critical, json); });

    // fixed
    auto* c_fixed = add_common(app.add_subcommand("fixed", "fixed-point census"));
    MapOpts mo_fixed;
    mo_fixed.add(c_fixed);
    c_fixed->callback([&] { run_fixed(mo_fixed, json); });

    // rotnum
    auto* c_rotnum = add_common(app.add_subcommand("rotnum", "circle rotation number / interval"));
    MapOpts mo_rotnum;
    mo_rotnum.add(c_rotnum);
    double rn_x0 = 0.17;
    long long rn_iters = 100000;
    int rn_qmax = 12, rn_grid = 4096;
    c_rotnum->add_option("--x0", rn_x0, "initial angle");
    c_rotnum->add_option("--iters", rn_iters, "iteration count")->check(CLI::PositiveNumber);
    c_rotnum->add_option("--qmax", rn_qmax, "largest lock denominator")
        ->check(CLI::PositiveNumber);
    c_rotnum->add_option("--grid", rn_grid, "envelope grid size")->check(CLI::PositiveNumber);
    c_rotnum->callback([&] { run_rotnum(mo_rotnum, rn_x0, rn_iters, rn_qmax, rn_grid, json); });

    // tongues
    auto* c_tongues = add_common(app.add_subcommand("tongues", "parameter scan over (r, alpha)"));
    int tg_d = 1, tg_nr = 64, tg_na = 64, tg_qmax = 12;
    double tg_rlo = 0.0, tg_rhi = 0.0, tg_alo = 0.0, tg_ahi = 0.0;
    std::string tg_out, tg_json_out;
    c_tongues->add_option("--d", tg_d, "degree parameter")->required()->check(CLI::PositiveNumber);
    c_tongues->add_option("--rmin", tg_rlo, "smallest |a|")->required();
    c_tongues->add_option("--rmax", tg_rhi, "largest |a|")->required();
    c_tongues->add_option("--nr", tg_nr, "radial samples")->check(CLI::PositiveNumber);
    c_tongues->add_option("--amin", tg_alo, "smallest alpha")->required();
    c_tongues->add_option("--amax", tg_ahi, "largest alpha")->required();
    c_tongues->add_option("--na", tg_na, "angular samples")->check(CLI::PositiveNumber);
    c_tongues->add_option("--qmax", tg_qmax, "largest lock denominator")
        ->check(CLI::PositiveNumber);
    c_tongues->add_option("--out", tg_out, "CSV output path")->required();
    c_tongues->add_option("--json-out", tg_json_out, "JSON output path");
    c_tongues->add_option("--threads", threads, "worker threads (0 = all)");
    c_tongues->callback([&] {
        run_tongues(tg_d, tg_rlo, tg_rhi, tg_nr, tg_alo, tg_ahi, tg_na, tg_qmax, tg_out,
                    tg_json_out, threads, json);
    });

    // julia
    auto* c_julia = add_common(app.add_subcommand("julia", "dynamical-plane raster"));
    MapOpts mo_julia;
    mo_julia.add(c_julia);
    std::string jl_viewport = "-2,2,-2,2", jl_res = "512x512", jl_out;
    int jl_budget = 400;
    c_julia->add_option("--viewport", jl_viewport, "xmin,xmax,ymin,ymax");
    c_julia->add_option("--res", jl_res, "WxH pixels");
    c_julia->add_option("--budget", jl_budget, "iteration budget per pixel")
        ->check(CLI::PositiveNumber);
    c_julia->add_option("--out", jl_out, "P6 output path")->required();
    c_julia->add_option("--threads", threads, "worker threads (0 = all)");
    c_julia->callback([&] {
        run_julia(mo_julia, jl_viewport, jl_res, jl_budget, jl_out, threads, json);
    });

    // rays
    auto* c_rays = add_common(app.add_subcommand("rays", "trace one external ray"));
    MapOpts mo_rays;
    mo_rays.add(c_rays);
    std::string ry_basin = "infinity", ry_angle, ry_out;
    int ry_depth = 80;
    double ry_R0 = 0.0;
    c_rays->add_option("--basin", ry_basin, "zero or infinity");
    c_rays->add_option("--angle", ry_angle, "external angle NUM/DEN")->required();
    c_rays->add_option("--depth", ry_depth, "pull-back depth")->check(CLI::PositiveNumber);
    c_rays->add_option("--R0", ry_R0, "starting potential radius (0 = auto)");
    c_rays->add_option("--out", ry_out, "CSV output path (default: stdout)");
    c_rays->callback(
        [&] { run_rays(mo_rays, ry_basin, ry_angle, ry_depth, ry_R0, ry_out, json); });

    // biaccess
    auto* c_biaccess = add_common(app.add_subcommand("biaccess", "two-sided ray landing check"));
    int ba_d = 1, ba_q = 1, ba_depth = 80;
    long long ba_p = 0;
    double ba_r = 0.0;
    std::string ba_alpha, ba_a, ba_window;
    c_biaccess->add_option("--d", ba_d, "degree parameter")->required()
        ->check(CLI::PositiveNumber);
    c_biaccess->add_option("--a", ba_a, "complex parameter as RE,IM");
    c_biaccess->add_option("--r", ba_r, "|a| for polar input");
    c_biaccess->add_option("--alpha", ba_alpha, "arg(a)/2pi, or auto");
    c_biaccess->add_option("--p", ba_p, "rotation numerator")->required();
    c_biaccess->add_option("--q", ba_q, "rotation denominator")->required()
        ->check(CLI::PositiveNumber);
    c_biaccess->add_option("--depth", ba_depth, "ray pull-back depth")
        ->check(CLI::PositiveNumber);
    c_biaccess->add_option("--window", ba_window, "lo,hi bracket for --alpha auto");
    c_biaccess->callback([&] {
        run_biaccess(ba_d, ba_r, ba_alpha, ba_a, ba_p, ba_q, ba_depth, ba_window, json);
    });

    // rotset
    auto* c_rotset = add_common(app.add_subcommand("rotset", "rotation cycles of t -> nt"));
    int rs_n = 2, rs_q = 1;
    long long rs_p = 0;
    std::string rs_dep, rs_out;
    c_rotset->add_option("--n", rs_n, "multiplier n >= 2")->required()
        ->check(CLI::Range(2, 1000000));
    c_rotset->add_option("--q", rs_q, "exact period")->required()->check(CLI::PositiveNumber);
    CLI::Option* rs_op = c_rotset->add_option("--p", rs_p, "rotation numerator (with --deployment: realize one cycle)");
    c_rotset->add_option("--deployment", rs_dep, "sector counts m1,...,m_{n-1} summing to q");
    c_rotset->add_option("--out", rs_out, "CSV output path (default: stdout)");
    c_rotset->add_option("--threads", threads, "worker threads (0 = all)");
    c_rotset->callback(
        [&] { run_rotset(rs_n, rs_q, rs_op, rs_p, rs_dep, rs_out, threads, json); });

    // interval
    auto* c_interval = add_common(app.add_subcommand("interval", "itinerary interval of a cycle"));
    int iv_d = 1, iv_q = 1;
    long long iv_p = 0;
    c_interval->add_option("--d", iv_d, "degree parameter")->required()
        ->check(CLI::PositiveNumber);
    c_interval->add_option("--p", iv_p, "rotation numerator")->required();
    c_interval->add_option("--q", iv_q, "rotation denominator")->required()
        ->check(CLI::PositiveNumber);
    c_interval->callback([&] { run_interval(iv_d, iv_p, iv_q); });

    // words
    auto* c_words = add_common(app.add_subcommand("words", "classify a symbol word"));
    int wd_d = 1;
    std::string wd_word;
    c_words->add_option("--d", wd_d, "degree parameter")->required()
        ->check(CLI::PositiveNumber);
    c_words->add_option("--word", wd_word, "letters like 0_,2,1 (underscore = underline)")
        ->required();
    c_words->callback([&] { run_words(wd_d, wd_word, json); });

    int rc = 0;
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        merge_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        rc = 2;
    } catch (const Usage& u) {
        std::fprintf(stderr, "usage error: %s\n", u.msg.c_str());
        rc = 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        rc = 3;
    }

    auto t_end = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t_end - t_start).count();
    std::fprintf(stderr, "wall: %.1f ms\n", ms);
    return rc;
}
