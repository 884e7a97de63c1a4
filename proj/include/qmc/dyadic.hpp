#pragma once
// Exact dyadic numbers (mantissa * 2^exponent with a 128-bit mantissa).
// Used in the inner loops of base-2 exact computations where full rational
// arithmetic would be needlessly slow: every quantity handled there is a
// dyadic rational with a bounded denominator, so a normalized 128-bit
// mantissa is exact.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qmc/rational.hpp"

namespace qmc {

struct Dyadic {
    __int128 man = 0;  // value = man * 2^exp, normalized: man odd or zero
    int exp = 0;

    Dyadic() = default;
    Dyadic(long long v) : man(v), exp(0) { normalize(); }
    Dyadic(__int128 m, int e) : man(m), exp(e) { normalize(); }

    void normalize() {
        if (man == 0) { exp = 0; return; }
        while ((man & 1) == 0) { man >>= 1; ++exp; }
    }

    static int bit_length(__int128 v) {
        if (v < 0) v = -v;
        int n = 0;
        while (v) { v >>= 1; ++n; }
        return n;
    }

    bool is_zero() const { return man == 0; }

    Dyadic operator-() const { Dyadic r; r.man = -man; r.exp = exp; return r; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.man == 0) return b;
        if (b.man == 0) return a;
        int e = a.exp < b.exp ? a.exp : b.exp;
        int sa = a.exp - e, sb = b.exp - e;
        if (bit_length(a.man) + sa > 125 || bit_length(b.man) + sb > 125)
            throw std::overflow_error("dyadic add overflow");
        return Dyadic((a.man << sa) + (b.man << sb), e);
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.man == 0 || b.man == 0) return Dyadic();
        if (bit_length(a.man) + bit_length(b.man) > 125)
            throw std::overflow_error("dyadic mul overflow");
        Dyadic r;
        r.man = a.man * b.man;
        r.exp = a.exp + b.exp;
        return r;  // product of odd mantissas stays odd
    }

    Dyadic& operator+=(const Dyadic& o) { *this = *this + o; return *this; }
    Dyadic& operator-=(const Dyadic& o) { *this = *this - o; return *this; }
    Dyadic& operator*=(const Dyadic& o) { *this = *this * o; return *this; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.man == b.man && (a.man == 0 || a.exp == b.exp);
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

    Rational to_rational() const {
        BigInt m = 0;
        bool neg = man < 0;
        unsigned __int128 u = neg ? (unsigned __int128)(-man) : (unsigned __int128)man;
        m = (BigInt)(uint64_t)(u >> 64);
        m <<= 64;
        m += (BigInt)(uint64_t)u;
        if (neg) m = -m;
        Rational r(m);
        return r * pow2r(exp);
    }

    double to_double() const { return qmc::to_double(to_rational()); }
};

// value q * 2^e for small integers
inline Dyadic dyadic_scaled(long long q, int e) { return Dyadic((__int128)q, e); }

}  // namespace qmc
