#pragma once
// Base-b Walsh analysis: Walsh function evaluation, character sums over
// digital nets, dual-net basis and enumeration, the per-frequency kernel
// weights rho_b(k) with their Fourier-series cross-checks, the expected
// periodic L2 discrepancy over depth-m digital shifts, the associated upper
// bounds, and exhaustive / Monte Carlo shift averages.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qmc/nets.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// ------------------------------------------------------- Walsh functions --

// one-coordinate Walsh function wal_k(x) in base b; digit_limit truncates
// the expansion of non-grid x
std::complex<double> wal1(uint32_t b, uint64_t k, double x, int digit_limit = 48);

// exact-digit version for x = q / b^m
std::complex<double> wal1_grid(uint32_t b, uint64_t k, int64_t q, uint32_t m);

// product over coordinates for point n of a grid set
std::complex<double> wal_point(const PointSet& P, uint64_t n,
                               const std::vector<uint64_t>& k);

// sum of wal_k over all net points; equals b^m exactly when k lies in the
// dual net and 0 otherwise
std::complex<double> char_sum(const GeneratorSet& g, const std::vector<uint64_t>& k);
std::complex<double> char_sum(const PointSet& P, const std::vector<uint64_t>& k);

// membership test via the stacked kernel equation on the first m digits
bool dual_contains(const GeneratorSet& g, const std::vector<uint64_t>& k);

// ------------------------------------------------------------- dual net --

struct DualBasis {
    uint32_t b = 2, m = 0, d = 1;
    // basis vectors of the digit-space kernel; each has d*m digits, digit
    // i of component j at index j*m + i (weight b^i within k_j)
    std::vector<std::vector<uint32_t>> vecs;
    uint64_t count() const;  // b^(number of basis vectors)
};

DualBasis dual_net_basis(const GeneratorSet& g);

struct EnumerationLimit : std::runtime_error {
    uint64_t required;
    explicit EnumerationLimit(uint64_t req)
        : std::runtime_error("enumeration exceeds configured cap; required " +
                             std::to_string(req)),
          required(req) {}
};

constexpr uint64_t kDefaultDualCap = uint64_t(1) << 24;

// visit every dual frequency (d components, each < b^m), starting from 0,
// via an odometer walk over basis combinations with incremental updates
void dual_enumerate(const GeneratorSet& g, uint64_t cap,
                    const std::function<void(const std::vector<int64_t>&)>& visit);

// ------------------------------------------------------- kernel weights --

// a(k): number of base-b digits (0 for k = 0)
uint32_t walsh_digit_length(uint32_t b, uint64_t k);

double rho_weight(uint32_t b, uint64_t k);
bool rho_exact_available(uint32_t b);          // closed rational form (b = 2, 3)
Rational rho_weight_exact(uint32_t b, uint64_t k);

// S_m = sum_{k < b^m} rho
double rho_sum_depth(uint32_t b, uint32_t m);
Rational rho_sum_depth_exact(uint32_t b, uint32_t m);

// beta_{h,k} = int_0^1 exp(-2 pi i h x) wal_k(x) dx, via closed-form
// integration on the b^a cells where wal_k is constant
std::complex<double> walsh_fourier_beta(uint32_t b, int64_t h, uint64_t k,
                                        uint64_t cell_budget = uint64_t(1) << 20);

// truncated series sum_{|h| <= H} |beta_{h,k}|^2 / r(h)^2 with r(0) = 1 and
// 1/r(h)^2 = 3 / (2 pi^2 h^2); converges to rho_weight(b, k)
double rho_series(uint32_t b, uint64_t k, int64_t H);

// int_0^1 x conj(wal_k(x)) dx (closed form on cells); its squared modulus is
// 1/(4 b^{2a} sin^2(kappa pi / b)) when k = kappa b^{a-1} and 0 otherwise
std::complex<double> walsh_x_moment(uint32_t b, uint64_t k);

// sum_{kappa=1}^{b-1} 1 / sin^2(kappa pi / b); equals (b^2 - 1) / 3
double sin_inverse_square_sum(uint32_t b);

// ------------------------------------ expectation over depth-m shifts --

struct ExpectedPeriodic {
    // dual-space form (b^{2m} / 3^d) * sum over nonzero dual frequencies
    // below b^m of the rho product
    double dual_sum_form = 0.0;
    // dual_sum_form plus the diagonal completion
    // (b^m / 3^d) * ((3/2)^d - S_m^d); this is the value that the mean over
    // fully randomized shifts (digits and offsets) converges to
    double full_value = 0.0;
    bool exact_available = false;
    Rational dual_sum_exact;
    Rational full_exact;
    uint64_t dual_count = 0;        // enumerated dual frequencies incl. zero
    std::vector<double> support_sums;  // bare rho-product sums per support mask
};

ExpectedPeriodic expected_periodic_l2_sq(const GeneratorSet& g,
                                         uint64_t cap = kDefaultDualCap);

// b^{2t} (m-t)^{d-1} ((1+b^2)/3)^d; at t = m the (m-t)^{d-1} factor makes
// the bound 0 for d >= 2 (degenerate: every depth-m interval is admitted)
double shift_average_bound(uint32_t b, uint32_t m, uint32_t t, uint32_t d);

// (b^{2t} / b^{2m}) (m-t)^{u_size-1} b^{2 u_size}: bound on the bare
// rho-product sum over dual frequencies supported exactly on a size-u_size
// coordinate set
double support_sum_bound(uint32_t b, uint32_t m, uint32_t t, uint32_t u_size);

// ------------------------------------------------------- shift averages --

// Average of the exact periodic L2^2 over all b^{dm} depth-m digit shifts;
// offset_averaged additionally integrates the per-point offsets over their
// cell (making it the exact full-randomization mean).  Walsh frequencies
// below b^m only see the first m digits, so the offsets are irrelevant to
// the dual-space form; the exhaustive oracle therefore runs with zero
// offsets, while the randomized-shift Monte Carlo draws them.
Rational exhaustive_shift_average(const GeneratorSet& g, bool offset_averaged);

struct ShiftMcResult {
    double mean = 0.0;
    double se = 0.0;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// Monte Carlo over fully randomized shifts: digit shift plus per-point
// offsets drawn uniformly from the grid cell
ShiftMcResult shift_average_mc(const GeneratorSet& g, uint64_t samples, uint64_t seed);

}  // namespace qmc
