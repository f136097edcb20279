#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "blaschke/error.hpp"

namespace blaschke {

namespace detail {
inline long long narrow128(__int128 v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN) fail("RationalOverflow", ctx);
    return static_cast<long long>(v);
}
inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
}
} // namespace detail

// Exact fraction on int64 (always reduced, den > 0). Angles are used through
// mod1(); interval endpoints and deployment entries are plain values.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) fail("ZeroDenominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    Rational mod1() const {
        long long n = num % den;
        if (n < 0) n += den;
        Rational r;
        r.num = n;
        r.den = den;
        return r; // already reduced: gcd(n mod d, d) == gcd(n, d) up to sign
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline int cmp(const Rational& a, const Rational& b) {
    __int128 l = (__int128)a.num * b.den;
    __int128 r = (__int128)b.num * a.den;
    return l < r ? -1 : (l > r ? 1 : 0);
}
inline bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Rational& a, const Rational& b) { return cmp(a, b) != 0; }
inline bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
inline bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
inline bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

inline Rational rat_add(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
    __int128 d = (__int128)a.den * b.den;
    __int128 g = detail::gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num = detail::narrow128(n, "add");
    r.den = detail::narrow128(d, "add");
    return r;
}
inline Rational rat_sub(const Rational& a, const Rational& b) {
    Rational nb;
    nb.num = -b.num;
    nb.den = b.den;
    return rat_add(a, nb);
}
inline Rational rat_mul_int(const Rational& a, long long k) {
    __int128 n = (__int128)a.num * k;
    __int128 g = detail::gcd128(n, a.den);
    Rational r;
    r.num = detail::narrow128(g > 1 ? n / g : n, "mul");
    r.den = g > 1 ? a.den / (long long)g : a.den;
    return r;
}
inline Rational rat_div_int(const Rational& a, long long k) {
    if (k == 0) fail("ZeroDenominator");
    __int128 d = (__int128)a.den * k;
    __int128 g = detail::gcd128((__int128)a.num, d);
    Rational r;
    r.num = g > 1 ? a.num / (long long)g : a.num;
    r.den = detail::narrow128(g > 1 ? d / g : d, "div");
    if (r.den < 0) { r.num = -r.num; r.den = -r.den; }
    return r;
}

// t -> n*t mod 1, exact.
inline Rational mn_apply(int n, const Rational& t) {
    return rat_mul_int(t, n).mod1();
}

} // namespace blaschke
