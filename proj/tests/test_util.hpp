#pragma once
#include <cmath>
#include <cstdio>
#include <cstdlib>

// Hand-rolled checks: print [FAIL] with location and bail with exit(1) so
// ctest sees a nonzero status. Never compiled out.
#define REQUIRE(cond, msg)                                                     \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::fprintf(stderr, "[FAIL] %s:%d %s\n", __FILE__, __LINE__,      \
                         msg);                                                 \
            std::exit(1);                                                      \
        }                                                                      \
    } while (0)

#define REQUIRE_NEAR(expr, want, tol, msg)                                     \
    do {                                                                       \
        double rq_v = (expr), rq_w = (want);                                   \
        if (!(std::abs(rq_v - rq_w) <= (tol))) {                               \
            std::fprintf(stderr, "[FAIL] %s:%d %s: got %.17g want %.17g\n",    \
                         __FILE__, __LINE__, msg, rq_v, rq_w);                 \
            std::exit(1);                                                      \
        }                                                                      \
    } while (0)

static inline void pass(const char* label) { std::printf("[PASS] %s\n", label); }
