#include "qmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmc/parallel.hpp"
#include "qmc/rng.hpp"

namespace qmc {

namespace {

constexpr double kPi = std::numbers::pi;

double pow_int(double x, uint32_t e) {
    double r = 1.0;
    while (e--) r *= x;
    return r;
}

}  // namespace

// --------------------------------------------------- counting primitives --

uint64_t count_in_box(const PointSet& P, const std::vector<double>& lo,
                      const std::vector<double>& hi) {
    if (lo.size() != P.d || hi.size() != P.d)
        throw std::invalid_argument("box dimension mismatch");
    uint64_t a = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        bool in = true;
        for (uint32_t j = 0; j < P.d && in; ++j) {
            double x = P.coord(n, j);
            in = (x >= lo[j]) && (x < hi[j]);
        }
        a += in;
    }
    return a;
}

double local_discrepancy_anchored(const PointSet& P, const std::vector<double>& t) {
    if (t.size() != P.d) throw std::invalid_argument("dimension mismatch");
    uint64_t a = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        bool in = true;
        for (uint32_t j = 0; j < P.d && in; ++j) in = P.coord(n, j) < t[j];
        a += in;
    }
    double vol = 1.0;
    for (double v : t) vol *= v;
    return (double)a - (double)P.N * vol;
}

double local_discrepancy_box(const PointSet& P, const std::vector<double>& x,
                             const std::vector<double>& y) {
    if (x.size() != P.d || y.size() != P.d)
        throw std::invalid_argument("dimension mismatch");
    for (uint32_t j = 0; j < P.d; ++j)
        if (x[j] > y[j]) throw std::invalid_argument("box corners must be ordered");
    uint64_t a = count_in_box(P, x, y);
    double vol = 1.0;
    for (uint32_t j = 0; j < P.d; ++j) vol *= (y[j] - x[j]);
    return (double)a - (double)P.N * vol;
}

double local_discrepancy_periodic(const PointSet& P, const std::vector<double>& x,
                                  const std::vector<double>& y) {
    if (x.size() != P.d || y.size() != P.d)
        throw std::invalid_argument("dimension mismatch");
    uint64_t a = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        bool in = true;
        for (uint32_t j = 0; j < P.d && in; ++j) {
            double z = P.coord(n, j);
            in = (x[j] <= y[j]) ? (z >= x[j] && z < y[j]) : (z < y[j] || z >= x[j]);
        }
        a += in;
    }
    double vol = 1.0;
    for (uint32_t j = 0; j < P.d; ++j)
        vol *= (x[j] <= y[j]) ? (y[j] - x[j]) : (1.0 - x[j] + y[j]);
    return (double)a - (double)P.N * vol;
}

double corner_combination(const PointSet& P, const std::vector<double>& x,
                          const std::vector<double>& y) {
    if (x.size() != P.d || y.size() != P.d)
        throw std::invalid_argument("dimension mismatch");
    double g = 0.0;
    std::vector<double> w(P.d);
    for (uint32_t mask = 0; mask < (1u << P.d); ++mask) {
        int bits = 0;
        for (uint32_t j = 0; j < P.d; ++j) {
            bool use_x = (mask >> j) & 1;
            bits += use_x;
            w[j] = use_x ? x[j] : y[j];
        }
        double s = (bits % 2) ? -1.0 : 1.0;
        g += s * local_discrepancy_anchored(P, w);
    }
    return g;
}

// -------------------------------------------- exact rational evaluators --

namespace {

void require_exact_grid(const PointSet& P) {
    if (!P.exact || P.has_offsets())
        throw std::domain_error("exact evaluation needs an offset-free grid set");
    if (P.N > 4096)
        throw std::domain_error("exact evaluation capped at N <= 4096");
}

void guard_bits(double bits) {
    if (bits > 120.0)
        throw std::domain_error("exact-mode integer capacity exceeded");
}

int64_t grid_denominator(uint32_t b, uint32_t m) {
    long double v = std::pow((long double)b, (long double)m);
    if (v > 9.2e17L) throw std::domain_error("grid denominator exceeds 64 bits");
    int64_t B = 1;
    for (uint32_t i = 0; i < m; ++i) B *= b;
    return B;
}

}  // namespace

Rational star_l2_sq_exact(const PointSet& P) {
    require_exact_grid(P);
    const uint32_t d = P.d;
    const int64_t B = grid_denominator(P.b, P.m);
    const double l2B = P.m * std::log2((double)P.b);
    const double l2N = std::log2((double)P.N + 1);
    guard_bits(2 * l2N + d * l2B);
    guard_bits(l2N + 2 * d * l2B);

    __int128 S1 = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        const int64_t* qn = &P.num[n * d];
        for (uint64_t p = 0; p < P.N; ++p) {
            const int64_t* qp = &P.num[p * d];
            __int128 prod = 1;
            for (uint32_t j = 0; j < d; ++j)
                prod *= (__int128)(B - std::max(qn[j], qp[j]));
            S1 += prod;
        }
    }
    __int128 S2 = 0;
    const __int128 B2 = (__int128)B * B;
    for (uint64_t n = 0; n < P.N; ++n) {
        const int64_t* q = &P.num[n * d];
        __int128 prod = 1;
        for (uint32_t j = 0; j < d; ++j) prod *= (B2 - (__int128)q[j] * q[j]);
        S2 += prod;
    }
    BigInt Bd = ipow(BigInt(B), d);
    BigInt N(P.N);
    // cross term: -2N sum_n prod_j (1 - x_j^2)/2 = -N 2^{1-d} S2 / B^{2d}
    return Rational(bigint_from_i128(S1), Bd)
         - Rational(N * 2 * bigint_from_i128(S2), ipow(BigInt(2), d) * Bd * Bd)
         + Rational(N * N, ipow(BigInt(3), d));
}

Rational extreme_l2_sq_exact(const PointSet& P) {
    require_exact_grid(P);
    const uint32_t d = P.d;
    const int64_t B = grid_denominator(P.b, P.m);
    const double l2B = P.m * std::log2((double)P.b);
    const double l2N = std::log2((double)P.N + 1);
    guard_bits(2 * l2N + 2 * d * l2B);

    __int128 S1 = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        const int64_t* qn = &P.num[n * d];
        for (uint64_t p = 0; p < P.N; ++p) {
            const int64_t* qp = &P.num[p * d];
            __int128 prod = 1;
            for (uint32_t j = 0; j < d; ++j) {
                int64_t mn = std::min(qn[j], qp[j]);
                int64_t mx = std::max(qn[j], qp[j]);
                prod *= (__int128)mn * (B - mx);
            }
            S1 += prod;
        }
    }
    __int128 S2 = 0;
    for (uint64_t n = 0; n < P.N; ++n) {
        const int64_t* q = &P.num[n * d];
        __int128 prod = 1;
        for (uint32_t j = 0; j < d; ++j) prod *= (__int128)q[j] * (B - q[j]);
        S2 += prod;
    }
    BigInt B2d = ipow(BigInt(B) * BigInt(B), d);
    BigInt N(P.N);
    // cross term: -2N sum_n prod_j x_j(1 - x_j)/2 = -N 2^{1-d} S2 / B^{2d}
    return Rational(bigint_from_i128(S1), B2d)
         - Rational(N * 2 * bigint_from_i128(S2), ipow(BigInt(2), d) * B2d)
         + Rational(N * N, ipow(BigInt(12), d));
}

Rational periodic_l2_sq_exact_raw(const int64_t* num, uint64_t N, uint32_t d,
                                  uint32_t b, uint32_t m) {
    const int64_t B = grid_denominator(b, m);
    const double l2B = m * std::log2((double)b);
    guard_bits(2 * std::log2((double)N + 1) + 2 * d * l2B + 1);

    // per-coordinate kernel: 2q^2 - 2qB + B^2 over denominator B^2, scaled by
    // 3/2 this is 1 + 3*bernoulli2(q/B)
    std::vector<int64_t> kappa((size_t)B);
    for (int64_t q = 0; q < B; ++q) kappa[(size_t)q] = 2 * q * q - 2 * q * B + B * B;

    __int128 S = 0;
    for (uint64_t n = 0; n < N; ++n) {
        const int64_t* qn = &num[n * d];
        for (uint64_t p = 0; p < N; ++p) {
            const int64_t* qp = &num[p * d];
            __int128 prod = 1;
            for (uint32_t j = 0; j < d; ++j) {
                int64_t q = qn[j] - qp[j];
                if (q < 0) q = -q;
                prod *= (__int128)kappa[(size_t)q];
            }
            S += prod;
        }
    }
    BigInt N2 = BigInt(N) * BigInt(N);
    BigInt denom = ipow(BigInt(2) * BigInt(B) * BigInt(B), d);
    return Rational(bigint_from_i128(S), denom) - Rational(N2, ipow(BigInt(3), d));
}

Rational periodic_l2_sq_exact(const PointSet& P) {
    require_exact_grid(P);
    return periodic_l2_sq_exact_raw(P.num.data(), P.N, P.d, P.b, P.m);
}

Rational periodic_l2_sq_offset_avg_exact_raw(const int64_t* num, uint64_t N,
                                             uint32_t d, uint32_t b, uint32_t m) {
    const int64_t B = grid_denominator(b, m);
    const double l2B = m * std::log2((double)b);
    guard_bits(2 * std::log2((double)N + 1) + d * (2 * l2B + 2) + 1);

    // Expected per-coordinate factor E[1 + 3*bernoulli2(|z_n - z_p|)] over the
    // two independent offsets, as integer numerators over 2B^2:
    //   same index  (zero difference, shared offset): 3B^2
    //   distinct, equal grid coordinate:              3B^2 - 2B + 1
    //   distinct, grid difference q >= 1:             3*(2q^2 - 2qB + B^2) + 1
    std::vector<int64_t> fac((size_t)B);
    fac[0] = 3 * B * B - 2 * B + 1;
    for (int64_t q = 1; q < B; ++q)
        fac[(size_t)q] = 3 * (2 * q * q - 2 * q * B + B * B) + 1;
    __int128 same = 1;
    for (uint32_t j = 0; j < d; ++j) same *= (__int128)(3 * B * B);

    __int128 S = 0;
    for (uint64_t n = 0; n < N; ++n) {
        const int64_t* qn = &num[n * d];
        for (uint64_t p = 0; p < N; ++p) {
            if (p == n) { S += same; continue; }
            const int64_t* qp = &num[p * d];
            __int128 prod = 1;
            for (uint32_t j = 0; j < d; ++j) {
                int64_t q = qn[j] - qp[j];
                if (q < 0) q = -q;
                prod *= (__int128)fac[(size_t)q];
            }
            S += prod;
        }
    }
    BigInt N2 = BigInt(N) * BigInt(N);
    BigInt denom = ipow(BigInt(3), d) * ipow(BigInt(2) * BigInt(B) * BigInt(B), d);
    return Rational(bigint_from_i128(S), denom) - Rational(N2, ipow(BigInt(3), d));
}

Rational periodic_l2_sq_offset_avg_exact(const PointSet& P) {
    require_exact_grid(P);
    return periodic_l2_sq_offset_avg_exact_raw(P.num.data(), P.N, P.d, P.b, P.m);
}

// ---------------------------------------- floating pair-formula evaluators

double star_l2_sq(const PointSet& P, int threads) {
    const uint32_t d = P.d;
    const double* xs = P.xs.data();
    const uint64_t N = P.N;
    double pair = deterministic_pair_sum(N, threads, [&](uint64_t n) {
        const double* xn = xs + n * d;
        NeumaierSum row;
        for (uint64_t p = 0; p < N; ++p) {
            const double* xp = xs + p * d;
            double prod = 1.0;
            for (uint32_t j = 0; j < d; ++j) prod *= 1.0 - std::max(xn[j], xp[j]);
            row.add(prod);
        }
        return row.value();
    });
    NeumaierSum single;
    for (uint64_t n = 0; n < N; ++n) {
        const double* x = xs + n * d;
        double prod = 1.0;
        for (uint32_t j = 0; j < d; ++j) prod *= 1.0 - x[j] * x[j];
        single.add(prod);
    }
    return pair - 2.0 * (double)N * single.value() / pow_int(2.0, d)
         + (double)N * (double)N / pow_int(3.0, d);
}

double extreme_l2_sq(const PointSet& P, int threads) {
    const uint32_t d = P.d;
    const double* xs = P.xs.data();
    const uint64_t N = P.N;
    double pair = deterministic_pair_sum(N, threads, [&](uint64_t n) {
        const double* xn = xs + n * d;
        NeumaierSum row;
        for (uint64_t p = 0; p < N; ++p) {
            const double* xp = xs + p * d;
            double prod = 1.0;
            for (uint32_t j = 0; j < d; ++j) {
                double mn = std::min(xn[j], xp[j]);
                double mx = std::max(xn[j], xp[j]);
                prod *= mn * (1.0 - mx);
            }
            row.add(prod);
        }
        return row.value();
    });
    NeumaierSum single;
    for (uint64_t n = 0; n < N; ++n) {
        const double* x = xs + n * d;
        double prod = 1.0;
        for (uint32_t j = 0; j < d; ++j) prod *= x[j] * (1.0 - x[j]);
        single.add(prod);
    }
    return pair - 2.0 * (double)N * single.value() / pow_int(2.0, d)
         + (double)N * (double)N / pow_int(12.0, d);
}

double periodic_l2_sq(const PointSet& P, int threads) {
    const uint32_t d = P.d;
    const double* xs = P.xs.data();
    const uint64_t N = P.N;
    double pair = deterministic_pair_sum(N, threads, [&](uint64_t n) {
        const double* xn = xs + n * d;
        NeumaierSum row;
        for (uint64_t p = 0; p < N; ++p) {
            const double* xp = xs + p * d;
            double prod = 1.0;
            for (uint32_t j = 0; j < d; ++j)
                prod *= 1.0 + 3.0 * bernoulli2(std::fabs(xn[j] - xp[j]));
            row.add(prod);
        }
        return row.value();
    });
    double p3 = pow_int(3.0, d);
    return pair / p3 - (double)N * (double)N / p3;
}

double diaphony_sq(const PointSet& P, int threads) {
    const uint32_t d = P.d;
    const double* xs = P.xs.data();
    const uint64_t N = P.N;
    const double c = 2.0 * kPi * kPi;
    double pair = deterministic_pair_sum(N, threads, [&](uint64_t n) {
        const double* xn = xs + n * d;
        NeumaierSum row;
        for (uint64_t p = 0; p < N; ++p) {
            const double* xp = xs + p * d;
            double prod = 1.0;
            for (uint32_t j = 0; j < d; ++j)
                prod *= 1.0 + c * bernoulli2(std::fabs(xn[j] - xp[j]));
            row.add(prod - 1.0);
        }
        return row.value();
    });
    return pair / ((double)N * (double)N);
}

// ------------------------------------------------- independent oracles --

namespace {

std::vector<double> axis_breakpoints(const PointSet& P, uint32_t j) {
    std::vector<double> v;
    v.reserve(P.N + 2);
    v.push_back(0.0);
    v.push_back(1.0);
    for (uint64_t n = 0; n < P.N; ++n) v.push_back(P.coord(n, j));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> axis_ranks(const PointSet& P, uint32_t j, const std::vector<double>& bp) {
    std::vector<int> r(P.N);
    for (uint64_t n = 0; n < P.N; ++n) {
        auto it = std::lower_bound(bp.begin(), bp.end(), P.coord(n, j));
        r[n] = (int)(it - bp.begin());
    }
    return r;
}

// inclusive 2-D prefix table over rank pairs; Pm[(i+1)*(K2+1)+(k+1)] counts
// points with rank1 <= i and rank2 <= k
std::vector<int64_t> prefix2(const std::vector<int>& r1, const std::vector<int>& r2,
                             int K1, int K2) {
    std::vector<int64_t> Pm((size_t)(K1 + 1) * (K2 + 1), 0);
    for (size_t n = 0; n < r1.size(); ++n)
        Pm[(size_t)(r1[n] + 1) * (K2 + 1) + (r2[n] + 1)] += 1;
    for (int i = 1; i <= K1; ++i)
        for (int k = 1; k <= K2; ++k)
            Pm[(size_t)i * (K2 + 1) + k] += Pm[(size_t)(i - 1) * (K2 + 1) + k]
                                          + Pm[(size_t)i * (K2 + 1) + (k - 1)]
                                          - Pm[(size_t)(i - 1) * (K2 + 1) + (k - 1)];
    return Pm;
}

int64_t rect_count(const std::vector<int64_t>& Pm, int K2, int a, int b, int c, int d) {
    // count of rank pairs with rank1 in [a,b], rank2 in [c,d]
    if (a > b || c > d) return 0;
    auto at = [&](int i, int k) { return Pm[(size_t)(i + 1) * (K2 + 1) + (k + 1)]; };
    return at(b, d) - at(a - 1, d) - at(b, c - 1) + at(a - 1, c - 1);
}

// moments of a 1-D cell (lo, hi): i0 = width, i1 = int t dt, i2 = int t^2 dt
struct CellMoments { double lo, hi, w, i1, i2; };
CellMoments cell_moments(double lo, double hi) {
    CellMoments c;
    c.lo = lo; c.hi = hi; c.w = hi - lo;
    c.i1 = (hi * hi - lo * lo) / 2.0;
    c.i2 = (hi * hi * hi - lo * lo * lo) / 3.0;
    return c;
}

// membership ranks form [a1,b1] U [a2,b2]; J's are integrals of 1, lambda,
// lambda^2 over the (x,y) region
struct PairRegion {
    int a1, b1, a2, b2;
    double J0, J1, J2;
};

// ordered cell pairs x-cell <= y-cell with lambda = y - x (used by the
// two-sided box metric)
std::vector<PairRegion> box_regions(const std::vector<double>& bp) {
    const int K = (int)bp.size();
    std::vector<PairRegion> out;
    out.reserve((size_t)K * (K - 1) / 2 + K);
    for (int c1 = 0; c1 + 1 < K; ++c1) {
        CellMoments A = cell_moments(bp[c1], bp[c1 + 1]);
        for (int c2 = c1; c2 + 1 < K; ++c2) {
            PairRegion r;
            r.a2 = 0; r.b2 = -1;  // second interval empty
            if (c2 == c1) {
                double w = A.w;
                r.a1 = 1; r.b1 = 0;  // empty membership
                r.J0 = w * w / 2.0;
                r.J1 = w * w * w / 6.0;
                r.J2 = w * w * w * w / 12.0;
            } else {
                CellMoments Bc = cell_moments(bp[c2], bp[c2 + 1]);
                r.a1 = c1 + 1; r.b1 = c2;
                r.J0 = A.w * Bc.w;
                r.J1 = A.w * Bc.i1 - Bc.w * A.i1;
                r.J2 = A.w * Bc.i2 - 2.0 * A.i1 * Bc.i1 + Bc.w * A.i2;
            }
            out.push_back(r);
        }
    }
    return out;
}

// all ordered cell pairs with wrap-around lambda (used by the periodic
// metric); membership may be a complement, hence two intervals
std::vector<PairRegion> periodic_regions(const std::vector<double>& bp) {
    const int K = (int)bp.size();
    std::vector<PairRegion> out;
    out.reserve((size_t)(K - 1) * (K - 1) + K);
    for (int c1 = 0; c1 + 1 < K; ++c1) {
        CellMoments A = cell_moments(bp[c1], bp[c1 + 1]);
        for (int c2 = 0; c2 + 1 < K; ++c2) {
            CellMoments Bc = cell_moments(bp[c2], bp[c2 + 1]);
            if (c1 < c2) {
                PairRegion r;
                r.a1 = c1 + 1; r.b1 = c2; r.a2 = 0; r.b2 = -1;
                r.J0 = A.w * Bc.w;
                r.J1 = A.w * Bc.i1 - Bc.w * A.i1;
                r.J2 = A.w * Bc.i2 - 2.0 * A.i1 * Bc.i1 + Bc.w * A.i2;
                out.push_back(r);
            } else if (c1 > c2) {
                // x > y: interval wraps; membership is the complement of
                // ranks (c2, c1], lambda = 1 - x + y
                PairRegion r;
                r.a1 = 0; r.b1 = c2; r.a2 = c1 + 1; r.b2 = K - 1;
                double xy1 = Bc.w * A.i1 - A.w * Bc.i1;  // int (x - y)
                double xy2 = Bc.w * A.i2 - 2.0 * A.i1 * Bc.i1 + A.w * Bc.i2;
                r.J0 = A.w * Bc.w;
                r.J1 = A.w * Bc.w - xy1;
                r.J2 = A.w * Bc.w - 2.0 * xy1 + xy2;
                out.push_back(r);
            } else {
                double w = A.w;
                PairRegion lower;  // x < y inside one cell
                lower.a1 = 1; lower.b1 = 0; lower.a2 = 0; lower.b2 = -1;
                lower.J0 = w * w / 2.0;
                lower.J1 = w * w * w / 6.0;
                lower.J2 = w * w * w * w / 12.0;
                out.push_back(lower);
                PairRegion upper;  // x > y inside one cell: every point is in
                upper.a1 = 0; upper.b1 = K - 1; upper.a2 = 0; upper.b2 = -1;
                upper.J0 = w * w / 2.0;
                upper.J1 = w * w / 2.0 - w * w * w / 6.0;
                upper.J2 = w * w / 2.0 - w * w * w / 3.0 + w * w * w * w / 12.0;
                out.push_back(upper);
            }
        }
    }
    return out;
}

}  // namespace

double star_l2_sq_cellquad(const PointSet& P) {
    const double N = (double)P.N;
    if (P.d == 1) {
        auto bp = axis_breakpoints(P, 0);
        auto rk = axis_ranks(P, 0, bp);
        const int K = (int)bp.size();
        std::vector<int64_t> cnt(K, 0);
        for (int r : rk) cnt[r] += 1;
        std::vector<int64_t> pre(K, 0);
        int64_t run = 0;
        for (int i = 0; i < K; ++i) { run += cnt[i]; pre[i] = run; }
        NeumaierSum acc;
        for (int i = 0; i + 1 < K; ++i) {
            CellMoments c = cell_moments(bp[i], bp[i + 1]);
            double A = (double)pre[i];
            acc.add(A * A * c.w - 2.0 * A * N * c.i1 + N * N * c.i2);
        }
        return acc.value();
    }
    if (P.d != 2) throw std::invalid_argument("cell quadrature supports d <= 2");
    auto bp1 = axis_breakpoints(P, 0), bp2 = axis_breakpoints(P, 1);
    auto r1 = axis_ranks(P, 0, bp1), r2 = axis_ranks(P, 1, bp2);
    const int K1 = (int)bp1.size(), K2 = (int)bp2.size();
    auto Pm = prefix2(r1, r2, K1, K2);
    NeumaierSum acc;
    for (int i = 0; i + 1 < K1; ++i) {
        CellMoments c1 = cell_moments(bp1[i], bp1[i + 1]);
        for (int k = 0; k + 1 < K2; ++k) {
            CellMoments c2 = cell_moments(bp2[k], bp2[k + 1]);
            double A = (double)rect_count(Pm, K2, 0, i, 0, k);
            acc.add(A * A * c1.w * c2.w - 2.0 * A * N * c1.i1 * c2.i1
                    + N * N * c1.i2 * c2.i2);
        }
    }
    return acc.value();
}

namespace {

double two_sided_cellquad(const PointSet& P, bool periodic) {
    const double N = (double)P.N;
    if (P.d == 1) {
        auto bp = axis_breakpoints(P, 0);
        auto rk = axis_ranks(P, 0, bp);
        const int K = (int)bp.size();
        std::vector<int64_t> cnt(K, 0);
        for (int r : rk) cnt[r] += 1;
        std::vector<int64_t> pre(K + 1, 0);
        for (int i = 0; i < K; ++i) pre[i + 1] = pre[i] + cnt[i];
        auto count1 = [&](int a, int b) -> int64_t {
            if (a > b) return 0;
            return pre[b + 1] - pre[a];
        };
        auto regions = periodic ? periodic_regions(bp) : box_regions(bp);
        NeumaierSum acc;
        for (const auto& r : regions) {
            double A = (double)(count1(r.a1, r.b1) + count1(r.a2, r.b2));
            acc.add(A * A * r.J0 - 2.0 * A * N * r.J1 + N * N * r.J2);
        }
        return acc.value();
    }
    if (P.d != 2) throw std::invalid_argument("cell quadrature supports d <= 2");
    auto bp1 = axis_breakpoints(P, 0), bp2 = axis_breakpoints(P, 1);
    auto r1 = axis_ranks(P, 0, bp1), r2 = axis_ranks(P, 1, bp2);
    const int K1 = (int)bp1.size(), K2 = (int)bp2.size();
    auto Pm = prefix2(r1, r2, K1, K2);
    auto regs1 = periodic ? periodic_regions(bp1) : box_regions(bp1);
    auto regs2 = periodic ? periodic_regions(bp2) : box_regions(bp2);
    NeumaierSum acc;
    for (const auto& ra : regs1) {
        for (const auto& rb : regs2) {
            int64_t A = rect_count(Pm, K2, ra.a1, ra.b1, rb.a1, rb.b1)
                      + rect_count(Pm, K2, ra.a1, ra.b1, rb.a2, rb.b2)
                      + rect_count(Pm, K2, ra.a2, ra.b2, rb.a1, rb.b1)
                      + rect_count(Pm, K2, ra.a2, ra.b2, rb.a2, rb.b2);
            double Ad = (double)A;
            acc.add(Ad * Ad * ra.J0 * rb.J0 - 2.0 * Ad * N * ra.J1 * rb.J1
                    + N * N * ra.J2 * rb.J2);
        }
    }
    return acc.value();
}

}  // namespace

double extreme_l2_sq_cellquad(const PointSet& P) { return two_sided_cellquad(P, false); }
double periodic_l2_sq_cellquad(const PointSet& P) { return two_sided_cellquad(P, true); }

double diaphony_sq_truncated(const PointSet& P, int K, double* err_bound) {
    const uint32_t d = P.d;
    const uint64_t N = P.N;
    // truncated one-coordinate kernel sum_{|k|<=K} max(1,|k|)^-2 e(k t),
    // evaluated with the cosine recurrence
    auto TK = [&](double t) {
        double theta = 2.0 * kPi * t;
        double c1 = std::cos(theta);
        double prev = 1.0, cur = c1, s = 0.0;
        for (int k = 1; k <= K; ++k) {
            s += cur / ((double)k * k);
            double next = 2.0 * c1 * cur - prev;
            prev = cur;
            cur = next;
        }
        return 1.0 + 2.0 * s;
    };
    NeumaierSum acc;
    for (uint64_t n = 0; n < N; ++n) {
        for (uint64_t p = 0; p < N; ++p) {
            double prod = 1.0;
            for (uint32_t j = 0; j < d; ++j)
                prod *= TK(P.coord(n, j) - P.coord(p, j));
            acc.add(prod - 1.0);
        }
    }
    if (err_bound) {
        double full = std::pow(1.0 + kPi * kPi / 3.0, (double)(d - 1));
        *err_bound = 2.0 * d * full / (double)K;
    }
    return acc.value() / ((double)N * (double)N);
}

// ------------------------------------------------------- L_p estimation --

namespace {

const double kG2x[1] = {0.5773502691896257};
const double kG2w[1] = {1.0};
const double kG4x[2] = {0.3399810435848563, 0.8611363115940526};
const double kG4w[2] = {0.6521451548625461, 0.3478548451374538};
const double kG8x[4] = {0.1834346424956498, 0.5255324099163290,
                        0.7966664774136267, 0.9602898564975363};
const double kG8w[4] = {0.3626837833783620, 0.3137066458778873,
                        0.2223810344533745, 0.1012285362903763};

void gauss_nodes(int order, double lo, double hi, std::vector<double>& xs,
                 std::vector<double>& ws) {
    xs.clear(); ws.clear();
    double mid = (lo + hi) / 2.0, half = (hi - lo) / 2.0;
    const double* gx = order == 2 ? kG2x : order == 4 ? kG4x : kG8x;
    const double* gw = order == 2 ? kG2w : order == 4 ? kG4w : kG8w;
    int half_n = order / 2;
    for (int i = 0; i < half_n; ++i) {
        xs.push_back(mid - half * gx[i]); ws.push_back(half * gw[i]);
        xs.push_back(mid + half * gx[i]); ws.push_back(half * gw[i]);
    }
}

// thinned breakpoint list: keep endpoints, take every stride-th interior
std::vector<double> thin(const std::vector<double>& bp, int stride) {
    if (stride <= 1) return bp;
    std::vector<double> out;
    out.push_back(bp.front());
    for (size_t i = stride; i + 1 < bp.size(); i += stride) out.push_back(bp[i]);
    if (out.back() != bp.back()) out.push_back(bp.back());
    return out;
}

// symmetric quadrature rules on the unit triangle (barycentric orbits),
// algebraic degree 4 (6 points) and 8 (16 points); weights sum to 1
struct TriOrbit { double w, l1, l2, l3; bool all_perms; };
const TriOrbit kTri4[] = {
    {0.223381589678011, 0.108103018168070, 0.445948490915965, 0.445948490915965, true},
    {0.109951743655322, 0.816847572980459, 0.091576213509771, 0.091576213509771, true},
};
const TriOrbit kTri8[] = {
    {0.144315607677787, 1.0 / 3, 1.0 / 3, 1.0 / 3, false},
    {0.095091634413923, 0.081414823414554, 0.459292588292723, 0.459292588292723, true},
    {0.103217370534718, 0.658861384496480, 0.170569307751760, 0.170569307751760, true},
    {0.032458497623198, 0.898905543365938, 0.050547228317031, 0.050547228317031, true},
    {0.027230314174435, 0.008394777409958, 0.263112829634638, 0.728492392955404, true},
};

// one weighted node on a doubled coordinate (a = x-side, b = y-side)
struct PairNode { double a, b, w; };

void tri_rule_nodes(int degree, double ax1, double bx1, double ax2, double bx2,
                    double ax3, double bx3, double area,
                    std::vector<PairNode>& out) {
    const TriOrbit* orb = degree <= 4 ? kTri4 : kTri8;
    size_t norb = degree <= 4 ? 2 : 5;
    for (size_t i = 0; i < norb; ++i) {
        double l[3] = {orb[i].l1, orb[i].l2, orb[i].l3};
        // enumerate the distinct permutations of the orbit
        int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                           {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
        int nperm = orb[i].all_perms ? (l[1] == l[2] ? 3 : 6) : 1;
        for (int q = 0; q < nperm; ++q) {
            double l1 = l[perms[q][0]], l2 = l[perms[q][1]], l3 = l[perms[q][2]];
            out.push_back({l1 * ax1 + l2 * ax2 + l3 * ax3,
                           l1 * bx1 + l2 * bx2 + l3 * bx3,
                           orb[i].w * area});
        }
    }
}

// Weighted nodes covering the (x_j, y_j) square for one coordinate of a
// doubled-domain metric. Off-diagonal cell pairs are boxes with a fixed
// orientation; diagonal cells are split along x_j = y_j into two triangles so
// that every piece avoids the orientation boundary, where the wrapped-box
// integrand is discontinuous. On each piece the local discrepancy is a
// polynomial of degree 1 per coordinate pair, so modest rules are exact for
// small even p.
std::vector<PairNode> pair_nodes(const std::vector<double>& bp, int gauss_order,
                                 int tri_degree) {
    std::vector<PairNode> out;
    std::vector<double> xa, wa, xb, wb;
    const size_t K = bp.size() - 1;
    for (size_t i = 0; i < K; ++i) {
        for (size_t k = 0; k < K; ++k) {
            if (i == k) continue;
            gauss_nodes(gauss_order, bp[i], bp[i + 1], xa, wa);
            gauss_nodes(gauss_order, bp[k], bp[k + 1], xb, wb);
            for (size_t s = 0; s < xa.size(); ++s)
                for (size_t t = 0; t < xb.size(); ++t)
                    out.push_back({xa[s], xb[t], wa[s] * wb[t]});
        }
        double u = bp[i], v = bp[i + 1], area = (v - u) * (v - u) / 2.0;
        // lower triangle x >= y, upper triangle x <= y
        tri_rule_nodes(tri_degree, u, u, v, u, v, v, area, out);
        tri_rule_nodes(tri_degree, u, u, u, v, v, v, area, out);
    }
    return out;
}

uint64_t pair_cost(const std::vector<std::vector<double>>& bps, int gauss_order,
                   int tri_degree) {
    uint64_t total = 1;
    uint64_t tri_pts = tri_degree <= 4 ? 6 : 16;
    for (const auto& bp : bps) {
        uint64_t K = bp.size() - 1;
        uint64_t per = K * (K - 1) * (uint64_t)gauss_order * gauss_order +
                       K * 2 * tri_pts;
        total *= per;
    }
    return total;
}

struct GridPass {
    double integral = 0.0;
    uint64_t evals = 0;
};

// integral of |f|^p over [0,1]^dims via per-axis cell lists and tensor Gauss
template <class F>
GridPass tensor_gauss(const std::vector<std::vector<double>>& axes, int order,
                      double p, F&& f) {
    const size_t dims = axes.size();
    std::vector<std::vector<double>> nx(dims), nw(dims);
    std::vector<size_t> ncells(dims);
    for (size_t a = 0; a < dims; ++a) ncells[a] = axes[a].size() - 1;
    std::vector<size_t> cell(dims, 0);
    GridPass out;
    NeumaierSum acc;
    std::vector<double> pt(dims);
    bool done = false;
    while (!done) {
        for (size_t a = 0; a < dims; ++a)
            gauss_nodes(order, axes[a][cell[a]], axes[a][cell[a] + 1], nx[a], nw[a]);
        // tensor loop over nodes
        std::vector<size_t> idx(dims, 0);
        bool ndone = false;
        while (!ndone) {
            double w = 1.0;
            for (size_t a = 0; a < dims; ++a) { pt[a] = nx[a][idx[a]]; w *= nw[a][idx[a]]; }
            acc.add(w * std::pow(std::fabs(f(pt)), p));
            out.evals += 1;
            size_t a = 0;
            for (; a < dims; ++a) {
                if (++idx[a] < nx[a].size()) break;
                idx[a] = 0;
            }
            ndone = (a == dims);
        }
        size_t a = 0;
        for (; a < dims; ++a) {
            if (++cell[a] < ncells[a]) break;
            cell[a] = 0;
        }
        done = (a == dims);
    }
    out.integral = acc.value();
    return out;
}

uint64_t tensor_cost(const std::vector<std::vector<double>>& axes, int order) {
    uint64_t c = 1;
    for (const auto& ax : axes) c *= (uint64_t)(ax.size() - 1) * order;
    return c;
}

// integral of |f|^p over the doubled domain via tensor products of the
// per-coordinate pair-node lists
template <class F>
GridPass pair_tensor(const std::vector<std::vector<PairNode>>& lists, double p,
                     F&& f) {
    const size_t d = lists.size();
    std::vector<size_t> idx(d, 0);
    std::vector<double> xv(d), yv(d);
    GridPass out;
    NeumaierSum acc;
    bool done = false;
    while (!done) {
        double w = 1.0;
        for (size_t j = 0; j < d; ++j) {
            const PairNode& nd = lists[j][idx[j]];
            xv[j] = nd.a; yv[j] = nd.b; w *= nd.w;
        }
        acc.add(w * std::pow(std::fabs(f(xv, yv)), p));
        out.evals += 1;
        size_t j = 0;
        for (; j < d; ++j) {
            if (++idx[j] < lists[j].size()) break;
            idx[j] = 0;
        }
        done = (j == d);
    }
    out.integral = acc.value();
    return out;
}

LpEstimate lp_grid(const PointSet& P, LpMetric metric, double p, uint64_t budget,
                   double tol) {
    LpEstimate est;
    est.method = "grid";
    const uint32_t d = P.d;
    if (d > 2) throw std::invalid_argument("grid scheme supports d <= 2");

    if (metric == LpMetric::Star) {
        std::vector<std::vector<double>> axes;
        for (uint32_t j = 0; j < d; ++j) axes.push_back(axis_breakpoints(P, j));
        auto f = [&](const std::vector<double>& t) {
            return local_discrepancy_anchored(P, t);
        };
        int stride = 1;
        std::vector<std::vector<double>> use = axes;
        while (tensor_cost(use, 4) + tensor_cost(use, 8) > budget &&
               use[0].size() > 2) {
            stride *= 2;
            use.clear();
            for (const auto& ax : axes) use.push_back(thin(ax, stride));
        }
        bool two_pass = tensor_cost(use, 4) + tensor_cost(use, 8) <= budget;
        GridPass lo = tensor_gauss(use, 4, p, f);
        est.evals = lo.evals;
        double vlo = std::pow(std::max(lo.integral, 0.0), 1.0 / p);
        if (two_pass) {
            GridPass hi = tensor_gauss(use, 8, p, f);
            est.evals += hi.evals;
            est.value = std::pow(std::max(hi.integral, 0.0), 1.0 / p);
            est.error_estimate = std::fabs(est.value - vlo);
        } else {
            est.value = vlo;
            est.error_estimate = vlo;
        }
        est.budget_exhausted = est.error_estimate > tol;
        return est;
    }

    const bool wrapped = metric == LpMetric::Periodic;
    // two-sided boxes integrate over ordered corner pairs only: the full
    // doubled square double-counts each box 2^d times
    const double mass_scale = wrapped ? 1.0 : pow_int(0.5, d);
    std::vector<double> xv2(d), yv2(d);
    auto f = [&](const std::vector<double>& xv, const std::vector<double>& yv) {
        if (wrapped) return local_discrepancy_periodic(P, xv, yv);
        for (uint32_t j = 0; j < d; ++j) {
            xv2[j] = std::min(xv[j], yv[j]);
            yv2[j] = std::max(xv[j], yv[j]);
        }
        return local_discrepancy_box(P, xv2, yv2);
    };

    std::vector<std::vector<double>> axes;
    for (uint32_t j = 0; j < d; ++j) axes.push_back(axis_breakpoints(P, j));
    int stride = 1;
    std::vector<std::vector<double>> use = axes;
    while (pair_cost(use, 2, 4) + pair_cost(use, 4, 8) > budget &&
           use[0].size() > 2) {
        stride *= 2;
        use.clear();
        for (const auto& ax : axes) use.push_back(thin(ax, stride));
    }
    std::vector<std::vector<PairNode>> lo_lists, hi_lists;
    for (const auto& ax : use) lo_lists.push_back(pair_nodes(ax, 2, 4));
    GridPass lo = pair_tensor(lo_lists, p, f);
    est.evals = lo.evals;
    double vlo = std::pow(std::max(lo.integral, 0.0) * mass_scale, 1.0 / p);
    if (pair_cost(use, 2, 4) + pair_cost(use, 4, 8) <= budget) {
        for (const auto& ax : use) hi_lists.push_back(pair_nodes(ax, 4, 8));
        GridPass hi = pair_tensor(hi_lists, p, f);
        est.evals += hi.evals;
        est.value = std::pow(std::max(hi.integral, 0.0) * mass_scale, 1.0 / p);
        est.error_estimate = std::fabs(est.value - vlo);
    } else {
        // the refinement pass does not fit: report the coarse pass with a
        // conservative error bar
        est.value = vlo;
        est.error_estimate = vlo;
    }
    est.budget_exhausted = est.error_estimate > tol;
    return est;
}

LpEstimate lp_mc(const PointSet& P, LpMetric metric, double p, uint64_t samples,
                 uint64_t seed) {
    LpEstimate est;
    est.method = "monte-carlo";
    const uint32_t d = P.d;
    Rng rng(seed);
    std::vector<double> xv(d), yv(d);
    NeumaierSum sum, sumsq;
    double mass = (metric == LpMetric::Extreme) ? pow_int(0.5, d) : 1.0;
    for (uint64_t s = 0; s < samples; ++s) {
        double v = 0.0;
        switch (metric) {
            case LpMetric::Star:
                for (uint32_t j = 0; j < d; ++j) xv[j] = rng.uniform();
                v = local_discrepancy_anchored(P, xv);
                break;
            case LpMetric::Extreme: {
                for (uint32_t j = 0; j < d; ++j) {
                    double a = rng.uniform(), b = rng.uniform();
                    xv[j] = std::min(a, b);
                    yv[j] = std::max(a, b);
                }
                v = local_discrepancy_box(P, xv, yv);
                break;
            }
            case LpMetric::Periodic:
                for (uint32_t j = 0; j < d; ++j) { xv[j] = rng.uniform(); yv[j] = rng.uniform(); }
                v = local_discrepancy_periodic(P, xv, yv);
                break;
        }
        double w = std::pow(std::fabs(v), p);
        sum.add(w);
        sumsq.add(w * w);
    }
    double S = (double)samples;
    double mean = sum.value() / S;
    double var = std::max(0.0, (sumsq.value() - S * mean * mean) / (S - 1.0));
    double se_mean = std::sqrt(var / S);
    est.evals = samples;
    double ip = mass * mean;
    est.value = ip > 0 ? std::pow(ip, 1.0 / p) : 0.0;
    est.error_estimate = (mean > 0 && ip > 0)
        ? est.value * se_mean / (p * mean) : mass * se_mean;
    return est;
}

}  // namespace

LpEstimate estimate_lp(const PointSet& P, LpMetric metric, double p,
                       LpScheme scheme, uint64_t budget, double tol,
                       uint64_t seed, int /*threads*/) {
    if (p <= 0) throw std::invalid_argument("p must be positive");
    if (scheme == LpScheme::Grid) return lp_grid(P, metric, p, budget, tol);
    return lp_mc(P, metric, p, budget, seed);
}

}  // namespace qmc
