#pragma once
// Exact rational arithmetic used by the rational-mode evaluators.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace qmc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e--) r *= base;
    return r;
}

inline Rational rpow(const Rational& base, int e) {
    Rational r = 1;
    if (e >= 0) { for (int i = 0; i < e; ++i) r *= base; }
    else        { for (int i = 0; i < -e; ++i) r /= base; }
    return r;
}

// 2^e as a rational, e may be negative
inline Rational pow2r(int e) { return rpow(Rational(2), e); }
inline Rational pow4r(int e) { return rpow(Rational(4), e); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt bigint_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
    BigInt m = (BigInt)(uint64_t)(u >> 64);
    m <<= 64;
    m += (BigInt)(uint64_t)u;
    return neg ? BigInt(-m) : m;
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qmc
