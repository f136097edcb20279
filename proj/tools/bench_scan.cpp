// Benchmark of the two parallel kernels (plane raster, parameter scan)
// against their serial reference implementations. Also cross-checks that the
// outputs agree byte for byte, which is what the renderer promises.
#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include "blaschke/map.hpp"
#include "blaschke/render.hpp"

using namespace blaschke;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-14s %10.1f ms %10.1f ms %8.2fx   %s\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int res = argc > 1 ? std::atoi(argv[1]) : 512;
    int grid = argc > 2 ? std::atoi(argv[2]) : 32;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-14s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    bool ok = true;
    {
        MapParams P{1, {4.0, 0.0}};
        Viewport vp;
        vp.width = res;
        vp.height = res;
        auto t0 = std::chrono::steady_clock::now();
        Raster serial = render_dynamical_plane_serial(P, vp, 400);
        double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        Raster parallel = render_dynamical_plane(P, vp, 400, 0);
        double tp = ms_since(t0);
        bool same = serial.classes == parallel.classes;
        ok = ok && same;
        report("raster", ts, tp, same);
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        ScanGrid serial = scan_tongues_serial(1, 3.1, 4.0, grid, -0.05, 0.05, grid, 12);
        double ts = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        ScanGrid parallel = scan_tongues(1, 3.1, 4.0, grid, -0.05, 0.05, grid, 12, 0);
        double tp = ms_since(t0);
        bool same = serial.cells.size() == parallel.cells.size();
        for (std::size_t i = 0; same && i < serial.cells.size(); ++i) {
            const ScanCell& a = serial.cells[i];
            const ScanCell& b = parallel.cells[i];
            same = a.r == b.r && a.alpha == b.alpha && a.region == b.region &&
                   a.rho_lo == b.rho_lo && a.rho_hi == b.rho_hi && a.lock == b.lock &&
                   a.adjacent == b.adjacent;
        }
        ok = ok && same;
        report("scan", ts, tp, same);
    }
    return ok ? 0 : 1;
}
