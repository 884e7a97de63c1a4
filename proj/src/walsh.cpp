#include "qmc/walsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmc/field.hpp"
#include "qmc/metrics.hpp"
#include "qmc/parallel.hpp"
#include "qmc/rng.hpp"

namespace qmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i e / b} for digit exponent e
std::complex<double> unit_root(uint32_t b, uint32_t e) {
    if (b == 2) return {e % 2 == 0 ? 1.0 : -1.0, 0.0};
    const double ang = kTwoPi * double(e % b) / double(b);
    return {std::cos(ang), std::sin(ang)};
}

uint64_t pow_u64_saturating(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

}  // namespace

// ------------------------------------------------------- Walsh functions --

uint32_t walsh_digit_length(uint32_t b, uint64_t k) {
    uint32_t a = 0;
    while (k > 0) {
        ++a;
        k /= b;
    }
    return a;
}

std::complex<double> wal1(uint32_t b, uint64_t k, double x, int digit_limit) {
    // digit kappa_i of k (weight b^i) pairs with digit xi_{i+1} of x
    // (weight b^{-(i+1)})
    uint32_t e = 0;
    double frac = x - std::floor(x);
    for (int i = 0; k > 0 && i < digit_limit; ++i) {
        const uint32_t kd = uint32_t(k % b);
        k /= b;
        frac *= b;
        const uint32_t xd = uint32_t(frac) % b;
        frac -= std::floor(frac);
        e = (e + kd * xd) % b;
    }
    return unit_root(b, e);
}

std::complex<double> wal1_grid(uint32_t b, uint64_t k, int64_t q, uint32_t m) {
    uint32_t e = 0;
    // digit of weight b^{-(i+1)} in q / b^m is (q / b^{m-1-i}) mod b
    std::vector<uint32_t> xd(m);
    int64_t qq = q;
    for (uint32_t i = 0; i < m; ++i) {  // fill from least significant upward
        xd[m - 1 - i] = uint32_t(qq % b);
        qq /= b;
    }
    for (uint32_t i = 0; k > 0; ++i) {
        const uint32_t kd = uint32_t(k % b);
        k /= b;
        if (i < m) e = (e + kd * xd[i]) % b;
        // digits of x beyond depth m are zero and contribute nothing
    }
    return unit_root(b, e);
}

std::complex<double> wal_point(const PointSet& P, uint64_t n,
                               const std::vector<uint64_t>& k) {
    if (k.size() != P.d) throw std::invalid_argument("wal_point: dimension mismatch");
    std::complex<double> prod{1.0, 0.0};
    for (uint32_t j = 0; j < P.d; ++j) {
        if (P.exact && !P.has_offsets())
            prod *= wal1_grid(P.b, k[j], P.numerator(n, j), P.m);
        else
            prod *= wal1(P.b, k[j], P.coord(n, j));
    }
    return prod;
}

std::complex<double> char_sum(const PointSet& P, const std::vector<uint64_t>& k) {
    std::complex<double> s{0.0, 0.0};
    for (uint64_t n = 0; n < P.N; ++n) s += wal_point(P, n, k);
    return s;
}

std::complex<double> char_sum(const GeneratorSet& g, const std::vector<uint64_t>& k) {
    return char_sum(generate(g), k);
}

bool dual_contains(const GeneratorSet& g, const std::vector<uint64_t>& k) {
    if (k.size() != g.d) throw std::invalid_argument("dual_contains: dimension mismatch");
    const uint32_t b = g.b, m = g.m;
    // rows of sum_j C_j^T kvec_j, where kvec_j holds the first m digits of k_j
    std::vector<uint32_t> acc(m, 0);
    for (uint32_t j = 0; j < g.d; ++j) {
        uint64_t kj = k[j];
        for (uint32_t i = 0; i < m && kj > 0; ++i) {
            const uint32_t kd = uint32_t(kj % b);
            kj /= b;
            if (kd == 0) continue;
            for (uint32_t r = 0; r < m; ++r)
                acc[r] = (acc[r] + kd * g.C[j].at(i, r)) % b;
        }
    }
    for (uint32_t r = 0; r < m; ++r)
        if (acc[r] != 0) return false;
    return true;
}

// ------------------------------------------------------------- dual net --

uint64_t DualBasis::count() const {
    return pow_u64_saturating(b, uint32_t(vecs.size()));
}

DualBasis dual_net_basis(const GeneratorSet& g) {
    const uint32_t b = g.b, m = g.m, d = g.d;
    const PrimeBase F(b);
    const uint32_t cols = d * m;

    // H row r, column j*m+i holds (C_j^T)(r, i) = C_j(i, r); the dual is the
    // kernel of H acting on the stacked digit vector
    std::vector<std::vector<uint32_t>> H(m, std::vector<uint32_t>(cols, 0));
    for (uint32_t j = 0; j < d; ++j)
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t r = 0; r < m; ++r)
                H[r][j * m + i] = g.C[j].at(i, r);

    // Gaussian elimination to reduced row-echelon form, tracking pivot columns
    std::vector<int32_t> pivot_of_row(m, -1);
    uint32_t row = 0;
    for (uint32_t col = 0; col < cols && row < m; ++col) {
        uint32_t sel = row;
        while (sel < m && H[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(H[sel], H[row]);
        const uint32_t piv_inv = F.inv[H[row][col]];
        for (uint32_t c = col; c < cols; ++c) H[row][c] = (H[row][c] * piv_inv) % b;
        for (uint32_t r2 = 0; r2 < m; ++r2) {
            if (r2 == row || H[r2][col] == 0) continue;
            const uint32_t f = H[r2][col];
            for (uint32_t c = col; c < cols; ++c)
                H[r2][c] = (H[r2][c] + (b - f % b) * H[row][c]) % b;
        }
        pivot_of_row[row] = int32_t(col);
        ++row;
    }

    std::vector<bool> is_pivot(cols, false);
    for (uint32_t r = 0; r < row; ++r) is_pivot[uint32_t(pivot_of_row[r])] = true;

    DualBasis basis;
    basis.b = b;
    basis.m = m;
    basis.d = d;
    for (uint32_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<uint32_t> v(cols, 0);
        v[fc] = 1;
        for (uint32_t r = 0; r < row; ++r) {
            const uint32_t pc = uint32_t(pivot_of_row[r]);
            // pivot entry is 1, so the pivot variable is -(coefficient at fc)
            v[pc] = (b - H[r][fc] % b) % b;
        }
        basis.vecs.push_back(std::move(v));
    }
    return basis;
}

void dual_enumerate(const GeneratorSet& g, uint64_t cap,
                    const std::function<void(const std::vector<int64_t>&)>& visit) {
    const DualBasis basis = dual_net_basis(g);
    const uint64_t total = basis.count();
    if (total > cap) throw EnumerationLimit(total);

    const uint32_t b = g.b, m = g.m, d = g.d;
    const uint32_t dim = uint32_t(basis.vecs.size());
    std::vector<uint32_t> cur(d * m, 0);   // current digit vector
    std::vector<uint32_t> odo(dim, 0);     // odometer coefficients
    std::vector<int64_t> kval(d, 0);

    std::vector<int64_t> pw(m);
    pw[0] = 1;
    for (uint32_t i = 1; i < m; ++i) pw[i] = pw[i - 1] * b;

    for (uint64_t idx = 0;; ++idx) {
        for (uint32_t j = 0; j < d; ++j) {
            int64_t kj = 0;
            for (uint32_t i = 0; i < m; ++i) kj += int64_t(cur[j * m + i]) * pw[i];
            kval[j] = kj;
        }
        visit(kval);
        if (idx + 1 == total) break;
        // advance: add basis vector at the carry position; b additions of the
        // same vector cancel, so wrapped positions return to their start
        uint32_t p = 0;
        while (true) {
            const std::vector<uint32_t>& v = basis.vecs[p];
            for (uint32_t c = 0; c < d * m; ++c) cur[c] = (cur[c] + v[c]) % b;
            if (++odo[p] == b) {
                odo[p] = 0;
                ++p;
            } else {
                break;
            }
        }
    }
}

// ------------------------------------------------------- kernel weights --

double rho_weight(uint32_t b, uint64_t k) {
    if (k == 0) return 1.0;
    const uint32_t a = walsh_digit_length(b, k);
    uint64_t lead_pow = 1;
    for (uint32_t i = 1; i < a; ++i) lead_pow *= b;
    const uint32_t kappa = uint32_t(k / lead_pow);
    const uint64_t krest = k % lead_pow;
    const double z = (krest == 0) ? 2.0 : 1.0;
    const double s = std::sin(std::numbers::pi * double(kappa) / double(b));
    const double scale = 3.0 / std::pow(double(b), 2.0 * a);
    return scale * (-1.0 / 3.0 + 1.0 / (z * s * s));
}

bool rho_exact_available(uint32_t b) { return b == 2 || b == 3; }

Rational rho_weight_exact(uint32_t b, uint64_t k) {
    if (!rho_exact_available(b))
        throw std::invalid_argument("rho_weight_exact: rational sin^2 only for b in {2, 3}");
    if (k == 0) return Rational(1);
    const uint32_t a = walsh_digit_length(b, k);
    uint64_t lead_pow = 1;
    for (uint32_t i = 1; i < a; ++i) lead_pow *= b;
    const uint64_t krest = k % lead_pow;
    // sin^2(kappa pi / 2) = 1; sin^2(kappa pi / 3) = 3/4 for kappa in {1, 2}
    const Rational sin_sq = (b == 2) ? Rational(1) : Rational(3, 4);
    const Rational z(krest == 0 ? 2 : 1);
    const Rational scale = Rational(3) / Rational(ipow(BigInt(b), 2 * a));
    return scale * (Rational(-1, 3) + Rational(1) / (z * sin_sq));
}

double rho_sum_depth(uint32_t b, uint32_t m) {
    uint64_t n = 1;
    for (uint32_t i = 0; i < m; ++i) n *= b;
    double s = 0.0;
    for (uint64_t k = 0; k < n; ++k) s += rho_weight(b, k);
    return s;
}

Rational rho_sum_depth_exact(uint32_t b, uint32_t m) {
    uint64_t n = 1;
    for (uint32_t i = 0; i < m; ++i) n *= b;
    Rational s(0);
    for (uint64_t k = 0; k < n; ++k) s += rho_weight_exact(b, k);
    return s;
}

std::complex<double> walsh_fourier_beta(uint32_t b, int64_t h, uint64_t k,
                                        uint64_t cell_budget) {
    const uint32_t a = walsh_digit_length(b, k);
    const uint64_t cells = pow_u64_saturating(b, a);
    if (cells > cell_budget) throw EnumerationLimit(cells);
    const double B = double(cells);

    std::complex<double> beta{0.0, 0.0};
    if (h == 0) {
        for (uint64_t c = 0; c < cells; ++c)
            beta += wal1_grid(b, k, int64_t(c), a);
        return beta / B;
    }
    // int_{c/B}^{(c+1)/B} e^{-2 pi i h x} dx = E_c (omega - 1) / (-2 pi i h),
    // omega = e^{-2 pi i h / B}, E_c = omega^c
    const double ang = -kTwoPi * double(h) / B;
    const std::complex<double> omega{std::cos(ang), std::sin(ang)};
    const std::complex<double> scale =
        (omega - std::complex<double>{1.0, 0.0}) /
        std::complex<double>{0.0, -kTwoPi * double(h)};
    std::complex<double> Ec{1.0, 0.0};
    for (uint64_t c = 0; c < cells; ++c) {
        beta += wal1_grid(b, k, int64_t(c), a) * Ec * scale;
        Ec *= omega;
    }
    return beta;
}

double rho_series(uint32_t b, uint64_t k, int64_t H) {
    const uint32_t a = walsh_digit_length(b, k);
    const uint64_t cells = pow_u64_saturating(b, a);
    const double B = double(cells);
    std::vector<std::complex<double>> w(cells);
    for (uint64_t c = 0; c < cells; ++c) w[c] = wal1_grid(b, k, int64_t(c), a);

    NeumaierSum sum;
    for (int64_t h = -H; h <= H; ++h) {
        std::complex<double> beta{0.0, 0.0};
        if (h == 0) {
            for (uint64_t c = 0; c < cells; ++c) beta += w[c];
            beta /= B;
        } else {
            const double ang = -kTwoPi * double(h) / B;
            const std::complex<double> omega{std::cos(ang), std::sin(ang)};
            const std::complex<double> scale =
                (omega - std::complex<double>{1.0, 0.0}) /
                std::complex<double>{0.0, -kTwoPi * double(h)};
            std::complex<double> Ec{1.0, 0.0};
            for (uint64_t c = 0; c < cells; ++c) {
                beta += w[c] * Ec * scale;
                Ec *= omega;
            }
        }
        const double weight =
            (h == 0) ? 1.0 : 3.0 / (2.0 * std::numbers::pi * std::numbers::pi *
                                    double(h) * double(h));
        sum.add(weight * std::norm(beta));
    }
    return sum.value();
}

std::complex<double> walsh_x_moment(uint32_t b, uint64_t k) {
    const uint32_t a = walsh_digit_length(b, k);
    const uint64_t cells = pow_u64_saturating(b, a);
    const double B = double(cells);
    std::complex<double> s{0.0, 0.0};
    for (uint64_t c = 0; c < cells; ++c) {
        const double lo = double(c) / B, hi = double(c + 1) / B;
        s += std::conj(wal1_grid(b, k, int64_t(c), a)) * (0.5 * (hi * hi - lo * lo));
    }
    return s;
}

double sin_inverse_square_sum(uint32_t b) {
    double s = 0.0;
    for (uint32_t kappa = 1; kappa < b; ++kappa) {
        const double v = std::sin(std::numbers::pi * double(kappa) / double(b));
        s += 1.0 / (v * v);
    }
    return s;
}

// ------------------------------------ expectation over depth-m shifts --

ExpectedPeriodic expected_periodic_l2_sq(const GeneratorSet& g, uint64_t cap) {
    const uint32_t b = g.b, m = g.m, d = g.d;
    if (d > 20) throw std::invalid_argument("expected_periodic_l2_sq: dimension too large");

    ExpectedPeriodic out;
    out.exact_available = rho_exact_available(b);
    out.support_sums.assign(size_t(1) << d, 0.0);
    std::vector<Rational> support_exact;
    if (out.exact_available) support_exact.assign(size_t(1) << d, Rational(0));

    uint64_t count = 0;
    dual_enumerate(g, cap, [&](const std::vector<int64_t>& k) {
        ++count;
        uint32_t mask = 0;
        for (uint32_t j = 0; j < d; ++j)
            if (k[j] != 0) mask |= (1u << j);
        if (mask == 0) return;  // zero frequency excluded from the sum
        double prod = 1.0;
        for (uint32_t j = 0; j < d; ++j)
            if (k[j] != 0) prod *= rho_weight(b, uint64_t(k[j]));
        out.support_sums[mask] += prod;
        if (out.exact_available) {
            Rational rp(1);
            for (uint32_t j = 0; j < d; ++j)
                if (k[j] != 0) rp *= rho_weight_exact(b, uint64_t(k[j]));
            support_exact[mask] += rp;
        }
    });
    out.dual_count = count;

    double total = 0.0;
    for (double v : out.support_sums) total += v;
    const double bm = std::pow(double(b), double(m));
    const double three_d = std::pow(3.0, double(d));
    out.dual_sum_form = bm * bm / three_d * total;

    const double Sm = rho_sum_depth(b, m);
    out.full_value = out.dual_sum_form +
                     bm / three_d * (std::pow(1.5, double(d)) - std::pow(Sm, double(d)));

    if (out.exact_available) {
        Rational rtotal(0);
        for (const Rational& v : support_exact) rtotal += v;
        const BigInt bmi = ipow(BigInt(b), m);
        const Rational bm2 = Rational(bmi * bmi);
        const Rational th_d = Rational(ipow(BigInt(3), d));
        out.dual_sum_exact = bm2 / th_d * rtotal;
        const Rational Smr = rho_sum_depth_exact(b, m);
        out.full_exact = out.dual_sum_exact +
                         Rational(bmi) / th_d * (rpow(Rational(3, 2), int(d)) - rpow(Smr, int(d)));
    }
    return out;
}

double shift_average_bound(uint32_t b, uint32_t m, uint32_t t, uint32_t d) {
    const double mt = double(m) - double(t);
    const double lead = std::pow(double(b), 2.0 * t);
    const double mid = (d >= 2) ? std::pow(mt, double(d) - 1.0) : 1.0;
    const double base = (1.0 + double(b) * double(b)) / 3.0;
    return lead * mid * std::pow(base, double(d));
}

double support_sum_bound(uint32_t b, uint32_t m, uint32_t t, uint32_t u_size) {
    const double mt = double(m) - double(t);
    const double lead = std::pow(double(b), 2.0 * double(t) - 2.0 * double(m));
    const double mid = (u_size >= 2) ? std::pow(mt, double(u_size) - 1.0) : 1.0;
    return lead * mid * std::pow(double(b), 2.0 * double(u_size));
}

// ------------------------------------------------------- shift averages --

Rational exhaustive_shift_average(const GeneratorSet& g, bool offset_averaged) {
    const uint32_t b = g.b, m = g.m, d = g.d;
    const uint64_t total = pow_u64_saturating(b, d * m);
    if (total > (uint64_t(1) << 22)) throw EnumerationLimit(total);

    const PointSet P = generate(g);
    const uint64_t N = P.N;

    std::vector<uint32_t> sigma(d * m, 0);
    std::vector<int64_t> shifted(N * d);

    Rational acc(0);
    for (uint64_t idx = 0;; ++idx) {
        for (uint64_t n = 0; n < N; ++n)
            for (uint32_t j = 0; j < d; ++j)
                shifted[n * d + j] =
                    shift_numerator(P.numerator(n, j), b, m, sigma.data() + j * m);
        acc += offset_averaged
                   ? periodic_l2_sq_offset_avg_exact_raw(shifted.data(), N, d, b, m)
                   : periodic_l2_sq_exact_raw(shifted.data(), N, d, b, m);
        if (idx + 1 == total) break;
        uint32_t p = 0;
        while (++sigma[p] == b) {
            sigma[p] = 0;
            ++p;
        }
    }
    return acc / Rational(BigInt(total));
}

ShiftMcResult shift_average_mc(const GeneratorSet& g, uint64_t samples, uint64_t seed) {
    const uint32_t b = g.b, m = g.m, d = g.d;
    const PointSet P = generate(g);
    const uint64_t N = P.N;
    const double cell = std::pow(double(b), -double(m));

    Rng rng(seed);
    std::vector<uint32_t> sigma(d * m);

    PointSet Q;
    Q.d = d;
    Q.N = N;
    Q.exact = false;
    Q.b = b;
    Q.m = m;
    Q.xs.assign(N * d, 0.0);

    // Welford running mean and variance of the per-shift values
    double mean = 0.0, m2 = 0.0;
    for (uint64_t s = 0; s < samples; ++s) {
        for (uint32_t i = 0; i < d * m; ++i) sigma[i] = uint32_t(rng.below(b));
        for (uint64_t n = 0; n < N; ++n)
            for (uint32_t j = 0; j < d; ++j) {
                const int64_t q =
                    shift_numerator(P.numerator(n, j), b, m, sigma.data() + j * m);
                Q.xs[n * d + j] = double(q) * cell + rng.uniform() * cell;
            }
        const double v = periodic_l2_sq(Q, 1);
        const double delta = v - mean;
        mean += delta / double(s + 1);
        m2 += delta * (v - mean);
    }

    ShiftMcResult r;
    r.mean = mean;
    r.samples = samples;
    r.seed = seed;
    if (samples >= 2)
        r.se = std::sqrt(m2 / double(samples - 1) / double(samples));
    return r;
}

}  // namespace qmc
