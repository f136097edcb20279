#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blaschke/circle.hpp"
#include "blaschke/map.hpp"

namespace blaschke {

struct Viewport {
    double x_min = -2.0, x_max = 2.0;
    double y_min = -2.0, y_max = 2.0;
    int width = 512, height = 512;

    // Center of pixel (i, j); row 0 is the top of the image (y = y_max side).
    cdouble pixel_center(int i, int j) const {
        double x = x_min + (x_max - x_min) * ((i + 0.5) / width);
        double y = y_max - (y_max - y_min) * ((j + 0.5) / height);
        return {x, y};
    }
};

// Pixel classes: 0 undecided, 1 attracted to 0, 2 attracted to infinity,
// 3+k attracted to the k-th non-repelling circle cycle.
constexpr std::uint8_t kClassUndecided = 0;
constexpr std::uint8_t kClassToZero = 1;
constexpr std::uint8_t kClassToInfinity = 2;
constexpr std::uint8_t kClassCycleBase = 3;

struct CycleRef {
    std::vector<cdouble> plane_points; // the cycle embedded on the unit circle
    int q = 1;
    double multiplier = 0.0;
};

// Non-repelling circle cycles up to period q_max, embedded in the plane.
// Empty for |a| <= 1 (no invariant-circle dynamics to track).
std::vector<CycleRef> circle_cycle_table(const MapParams& p, int q_max = 8);

struct Raster {
    Viewport vp;
    MapParams params;
    int budget = 400;
    double r_in = 1e-4;
    double R_out = 1e4;
    std::vector<std::uint8_t> classes; // width*height, row-major
    std::vector<CycleRef> cycles;
};

// Fate of one starting point under iteration: escape to 0 / infinity, capture
// by a tabulated circle cycle (confirmed by q consecutive close returns), or
// undecided at budget exhaustion.
std::uint8_t classify_point(const MapParams& p, cdouble z0, int budget, double r_in,
                            double R_out, const std::vector<CycleRef>& cycles);

Raster render_dynamical_plane(const MapParams& p, const Viewport& vp, int budget,
                              int threads = 0);
Raster render_dynamical_plane_serial(const MapParams& p, const Viewport& vp,
                                     int budget);

// Binary PPM (P6) with the fixed palette documented in the README.
void write_ppm(const Raster& raster, const std::string& path);

struct ScanCell {
    double r = 0.0;
    double alpha = 0.0;
    RegionClass region = RegionClass::Endomorphism;
    double rho_lo = 0.0, rho_hi = 0.0;
    std::optional<std::pair<long long, int>> lock;
    std::optional<bool> adjacent; // only evaluated for locked endomorphism cells
};

struct ScanGrid {
    int d = 1;
    std::vector<double> r_values;
    std::vector<double> alpha_values;
    std::vector<ScanCell> cells; // r-major: cells[ir * n_alpha + ia]
};

// Parameter scan over (r, alpha): rotation interval per cell, rational lock
// when the interval is a point or the estimate locks, tongue-membership test
// on locked endomorphism cells.
ScanGrid scan_tongues(int d, double r_lo, double r_hi, int n_r, double alpha_lo,
                      double alpha_hi, int n_alpha, int q_max, int threads = 0);
ScanGrid scan_tongues_serial(int d, double r_lo, double r_hi, int n_r, double alpha_lo,
                             double alpha_hi, int n_alpha, int q_max);

void write_scan_csv(const ScanGrid& grid, const std::string& path);
void write_scan_json(const ScanGrid& grid, const std::string& path);

} // namespace blaschke
