#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/rational.hpp"

namespace blaschke {

// A periodic orbit of t -> n t (mod 1) that is a rotation set: the map acts
// on the cyclically ordered points as a rigid rotation by p/q.
struct MnCycle {
    int n = 2;
    std::vector<Rational> points; // sorted increasingly in [0,1), k/(n^q - 1)
    long long p = 0;              // rotation p of the induced rigid rotation
    int q = 1;
    std::vector<Rational> deployment; // n-1 entries, fraction of orbit below i/(n-1)
};

// t -> n t mod 1.
Rational mn_apply_map(int n, const Rational& t);

// All rotation cycles of t -> nt of exact period q (q >= 1), deduplicated by
// orbit, sorted by smallest element. Exact integer arithmetic throughout;
// fails with BudgetExceeded when n^q - 1 would not fit the search budget.
std::vector<MnCycle> enumerate_cycles(int n, int q, int threads = 0);

struct CycleInvariants {
    bool is_rotation_set = false;
    Rational rho;                     // p/q in [0,1) when is_rotation_set
    std::vector<Rational> deployment; // when is_rotation_set
};

// Decide whether the forward orbit of t (which must be periodic under m_n)
// is a rotation set, and compute its invariants. Fails with NotPeriodic if t
// is not periodic under multiplication by n.
CycleInvariants cycle_invariants(int n, const Rational& t);

// The unique cycle with the given rotation number and deployment vector
// (d_1, ..., d_{n-1}); empty optional when none exists at this period.
std::optional<MnCycle> goldberg_realize(int n, const Rational& rho,
                                        const std::vector<Rational>& deployment);

// --- symbolic sector dynamics on I = [(d-1)/d, 1) under m_{d+1} ---

struct SectorPartition {
    Rational left;    // (d-1)/d
    Rational a_prime; // right endpoint of the middle sector
    Rational b_prime; // left endpoint of the middle sector
};

SectorPartition partition_points(int d);

// Locations (0 / 1) of m^k(t), k = 1..length, for t in the two outer sectors
// of I; fails with NotInLambda if an iterate enters the middle sector or
// leaves I.
std::vector<int> itinerary(int d, const Rational& t, int length);

struct ItineraryInterval {
    int d = 1;
    long long p = 0;
    int q = 1;
    Rational a, b;         // the closed-open interval [a, b)
    std::vector<int> word; // sector word of the base point, own sector first
    Rational t1;           // smallest cycle point in the lower sector
    bool isolated = false; // the cycle meets [a,b] only at t1, interior
};

// For the unique rotation cycle of m_{d+1} with rotation number p/q lying in
// I, build the interval of angles sharing its symbolic itinerary. Fails with
// VerificationFailure when the constructed interval misses its defining
// properties.
ItineraryInterval gen_interval(int d, long long p, int q);

// --- admissible words over the 2d+2 letter alphabet {0..d, 0_..d_} ---

struct Symbol {
    int value = 0;        // 0..d
    bool underlined = false;
};

using Word = std::vector<Symbol>;

struct WordClass {
    bool admissible = false;
    bool in_S = false;  // all letters in {d, 0_, d_}
    bool in_S0 = false; // all letters in {0_, d}
    bool in_S2 = false; // all letters in {d_, d}
};

// Admissibility: the last letter is not underlined; an underlined letter is
// followed by d; a non-underlined letter is followed by anything but d.
// Fails with SymbolOutOfRange for letters outside 0..d.
WordClass word_classify(int d, const Word& w);

// Left shift (drop the first letter); fails with LengthTooShort on length<2.
Word word_shift(const Word& w);

} // namespace blaschke
