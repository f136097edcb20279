#include "test_util.hpp"
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef BLASCHKE_CLI_PATH
#error "BLASCHKE_CLI_PATH must point at the CLI binary"
#endif

struct RunResult {
    int rc = -1;
    std::string out;
    std::string err;
};

static std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

static RunResult run(const std::string& args) {
    std::string cmd = std::string("'") + BLASCHKE_CLI_PATH + "' " + args +
                      " >cli_stdout.tmp 2>cli_stderr.tmp";
    int st = std::system(cmd.c_str());
    RunResult r;
    r.rc = (st == -1) ? -1 : WEXITSTATUS(st);
    r.out = slurp("cli_stdout.tmp");
    r.err = slurp("cli_stderr.tmp");
    std::remove("cli_stdout.tmp");
    std::remove("cli_stderr.tmp");
    return r;
}

static bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

static void exit_codes_and_streams() {
    RunResult ok = run("classify --d 1 --a 4,0 --json");
    REQUIRE(ok.rc == 0, "well-formed invocation exits 0");
    REQUIRE(contains(ok.out, "\"region\":\"Diffeo\""), "region in JSON");
    REQUIRE(contains(ok.out, "\"map_degree\":3"), "degree 2d+1 in JSON");
    REQUIRE(contains(ok.out, "\"connected_unconditional\":true"), "connectivity field");
    REQUIRE(contains(ok.out, "\"lock\":{\"p\":0,\"q\":1}"), "rotation lock 0/1");
    REQUIRE(!contains(ok.out, "wall:"), "timing stays off stdout");
    REQUIRE(contains(ok.err, "wall:"), "timing reported on stderr");

    RunResult none = run("");
    REQUIRE(none.rc == 2, "missing subcommand exits 2");
    REQUIRE(contains(none.err, "usage error:"), "usage diagnostics prefix");

    RunResult bogus = run("classify --d 1 --a 4,0 --bogus");
    REQUIRE(bogus.rc == 2, "unknown flag exits 2");

    RunResult model = run("rotnum --d 1 --a 0.5,0");
    REQUIRE(model.rc == 3, "model failure exits 3");
    REQUIRE(contains(model.err, "error: NotACircleCover"), "named error on stderr");
    pass("exit codes 0/2/3 and stream discipline");
}

static void interval_and_words_bytes() {
    RunResult iv = run("interval --d 2 --p 1 --q 2 --json");
    REQUIRE(iv.rc == 0, "interval exits 0");
    REQUIRE(iv.out == "{\"a\":\"11/18\",\"b\":\"17/27\",\"t1\":\"5/8\",\"itinerary\":[0,1]}\n",
            "interval JSON bytes");

    RunResult wd = run("words --d 1 --word 0_,1 --json");
    REQUIRE(wd.rc == 0, "words exits 0");
    REQUIRE(wd.out ==
                "{\"command\":\"words\",\"d\":1,\"word\":[\"0_\",\"1\"],\"admissible\":true,"
                "\"in_S\":true,\"in_S0\":true,\"in_S2\":false}\n",
            "words JSON bytes");
    pass("interval and words byte-exact JSON");
}

static void rotset_csv() {
    RunResult rs = run("rotset --n 3 --q 2");
    REQUIRE(rs.rc == 0, "rotset exits 0");
    REQUIRE(rs.out ==
                "id,q,p,points,deployment\n"
                "0,2,1,1/8;3/8,1;0\n"
                "1,2,1,1/4;3/4,1/2;1/2\n"
                "2,2,1,5/8;7/8,0;1\n",
            "rotset CSV bytes");

    RunResult one = run("rotset --n 3 --q 2 --p 1 --deployment 0,2");
    REQUIRE(one.rc == 0 && contains(one.out, "5/8;7/8"), "deployment realization");

    RunResult thr = run("rotset --n 2 --q 10 --threads 4");
    RunResult ser = run("rotset --n 2 --q 10 --threads 1");
    REQUIRE(thr.rc == 0 && thr.out == ser.out, "enumeration independent of threads");
    pass("rotset CSV bytes, realization, thread independence");
}

static void rays_csv() {
    RunResult ry = run("rays --d 1 --a 4,0 --angle 0/1");
    REQUIRE(ry.rc == 0, "rays exits 0");
    REQUIRE(ry.out.compare(0, 17, "k,potential,re,im") == 0, "rays CSV header");
    std::size_t lines = 0;
    for (char c : ry.out)
        if (c == '\n') ++lines;
    REQUIRE(lines == 82u, "header plus 81 samples");
    std::size_t last = ry.out.rfind("\n80,");
    REQUIRE(last != std::string::npos, "final sample indexed 80");
    int k = 0;
    double pot = 0, re = 0, im = 0;
    REQUIRE(std::sscanf(ry.out.c_str() + last + 1, "%d,%lf,%lf,%lf", &k, &pot, &re, &im) == 4,
            "final row parses");
    REQUIRE_NEAR(re, -1.0, 1e-9, "deep end reaches the landing point");
    REQUIRE(pot < 1e-20, "potential collapsed");
    pass("rays CSV structure and landing row");
}

static void biaccess_auto() {
    RunResult ba = run("biaccess --d 2 --r 2 --alpha auto --p 1 --q 2 --json");
    REQUIRE(ba.rc == 0, "biaccess exits 0");
    REQUIRE(contains(ba.out, "\"alpha\":0.082282748238747844"), "auto-solved alpha");
    REQUIRE(contains(ba.out, "\"alpha_auto\":true"), "auto flag recorded");
    REQUIRE(contains(ba.out, "\"verdict\":\"Verified\""), "verdict Verified");
    REQUIRE(contains(ba.out, "\"angle\":\"5/8\",\"basin\":\"infinity\""), "5/8 from infinity");
    REQUIRE(contains(ba.out, "\"angle\":\"1/8\",\"basin\":\"zero\""), "1/8 from zero");

    RunResult bad = run("biaccess --d 1 --r 4 --alpha auto --p 0 --q 1 --json");
    REQUIRE(bad.rc == 3, "auto solve outside the band exits 3");
    REQUIRE(contains(bad.err, "error: RegionMismatch"), "named error");
    pass("biaccess auto-solve JSON and failure path");
}

static void config_merge() {
    {
        std::ofstream cfg("cli_cfg.tmp");
        cfg << "# defaults for the d=1 outer map\n";
        cfg << "d=1\n";
        cfg << "a=4,0\n";
        cfg << "json=\n";
    }
    RunResult base = run("classify --config cli_cfg.tmp");
    REQUIRE(base.rc == 0, "config-only invocation works");
    REQUIRE(contains(base.out, "\"d\":1") && contains(base.out, "\"region\":\"Diffeo\""),
            "values drawn from the file");

    RunResult over = run("classify --config cli_cfg.tmp --d 2");
    REQUIRE(over.rc == 0, "flag overrides file");
    REQUIRE(contains(over.out, "\"d\":2"), "command line wins");
    REQUIRE(contains(over.out, "\"region\":\"Endomorphism\""), "|a|=4 < 5 for d=2");
    std::remove("cli_cfg.tmp");
    pass("config file merge with command-line precedence");
}

static void render_determinism() {
    RunResult a = run("julia --d 1 --a 4,0 --res 128x96 --budget 300 --threads 1 --out j1.ppm");
    RunResult b = run("julia --d 1 --a 4,0 --res 128x96 --budget 300 --threads 4 --out j4.ppm");
    RunResult c = run("julia --d 1 --a 4,0 --res 128x96 --budget 300 --threads 8 --out j8.ppm");
    REQUIRE(a.rc == 0 && b.rc == 0 && c.rc == 0, "julia runs succeed");
    std::string p1 = slurp("j1.ppm"), p4 = slurp("j4.ppm"), p8 = slurp("j8.ppm");
    const std::string hdr = "P6\n128 96\n255\n";
    REQUIRE(p1.compare(0, hdr.size(), hdr) == 0, "P6 header for 128x96");
    REQUIRE(p1.size() == hdr.size() + 128u * 96u * 3u, "P6 size for 128x96");
    REQUIRE(p1 == p4 && p4 == p8, "raster bytes independent of worker count");
    std::remove("j1.ppm");
    std::remove("j4.ppm");
    std::remove("j8.ppm");

    RunResult t1 = run("tongues --d 1 --rmin 3.1 --rmax 4 --nr 12 --amin -0.05 --amax 0.05"
                       " --na 12 --qmax 8 --threads 1 --out t1.csv");
    RunResult t4 = run("tongues --d 1 --rmin 3.1 --rmax 4 --nr 12 --amin -0.05 --amax 0.05"
                       " --na 12 --qmax 8 --threads 4 --out t4.csv");
    REQUIRE(t1.rc == 0 && t4.rc == 0, "tongue scans succeed");
    std::string s1 = slurp("t1.csv"), s4 = slurp("t4.csv");
    REQUIRE(!s1.empty() && s1 == s4, "scan bytes independent of worker count");
    std::remove("t1.csv");
    std::remove("t4.csv");
    pass("julia and tongues output independent of thread count");
}

int main() {
    exit_codes_and_streams();
    interval_and_words_bytes();
    rotset_csv();
    rays_csv();
    biaccess_auto();
    config_merge();
    render_determinism();
    std::printf("cli: all sections passed\n");
    return 0;
}
