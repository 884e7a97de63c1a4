// Acceptance suite. Each criterion is checked exactly as stated in the
// project contract and prints one PASS/FAIL line; supporting measurements are
// printed as indented notes. Exit code 0 iff every requested criterion
// passes. Criteria that compare against published closed forms apply them
// literally; where the computation contradicts a published reading, the
// corrected reading that does reproduce is printed alongside the failure.
//
// Usage: acceptance <criterion 1..11 | all>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qmc/field.hpp"
#include "qmc/haar.hpp"
#include "qmc/metrics.hpp"
#include "qmc/nets.hpp"
#include "qmc/rng.hpp"
#include "qmc/walsh.hpp"

using namespace qmc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::vector<std::string> notes;
};

double rel_err(double got, double want) {
    double den = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / den;
}

std::vector<std::vector<uint32_t>> a_vectors(uint32_t m, Rng& rng) {
    std::vector<std::vector<uint32_t>> out;
    const uint32_t len = m - 1;
    if (m <= 6) {
        for (uint32_t mask = 0; mask < (1u << len); ++mask) {
            std::vector<uint32_t> a(len);
            for (uint32_t k = 0; k < len; ++k) a[k] = (mask >> k) & 1;
            out.push_back(a);
        }
    } else {
        for (int r = 0; r < 20; ++r) {
            std::vector<uint32_t> a(len);
            for (uint32_t k = 0; k < len; ++k) a[k] = uint32_t(rng.below(2));
            out.push_back(a);
        }
    }
    return out;
}

// published closed form for the two-sided L2^2 of the last-column family,
// and the corrected reading (leading 1 instead of 2 inside the a_k factor)
Rational last_column_formula(uint32_t m, const std::vector<uint32_t>& a, bool corrected) {
    Rational v = Rational(int64_t(m), 64) + Rational(1, 72) -
                 Rational(1, 9) * pow4r(-int(m) - 2);
    Rational s(0);
    for (uint32_t k = 1; k < m; ++k)
        if (a[k - 1])
            s += Rational(corrected ? 1 : 2) - pow2r(2 * int(k) - 2 * int(m) + 2);
    return v + s / 192;
}

Rational theorem_value(uint32_t m) {
    return Rational(int64_t(m), 64) + Rational(1, 72) -
           Rational(1, 9) * pow4r(-int(m) - 2);
}

// resolved closed form for the symmetrized family
Rational symmetrized_formula(uint32_t m, const std::vector<uint32_t>& a) {
    Rational v = Rational(int64_t(m) + 1, 24) -
                 Rational(5, 9) * pow4r(-int(m) - 1);
    Rational s(0);
    for (uint32_t k = 1; k < m; ++k)
        if (a[k - 1]) s += pow2r(2 * int(k));
    return v - s * pow2r(-2 * int(m) - 3);
}

GeneratorSet mixed3d() {
    PrimeBase F2(2);
    return GeneratorSet(2, 3, {identity_matrix(F2, 3), reversal_matrix(F2, 3),
                               pascal_matrix(F2, 3)});
}

std::string rat(const Rational& r) { return to_string(r); }

// ------------------------------------------------------------ criterion 1

Outcome crit1() {
    Outcome o;
    auto t0 = Clock::now();
    Rng rng(1001);
    double worst_published = 0.0, worst_corrected = 0.0;
    uint64_t checked = 0;
    std::string first_fail;
    for (uint32_t m = 3; m <= 10; ++m) {
        for (const auto& a : a_vectors(m, rng)) {
            GeneratorSet g = family_last_column(m, a);
            PointSet P = generate(g);
            for (int s = 0; s < 10; ++s) {
                DigitalShift sh = random_shift(2, m, 2, P.N, 5000 + 97 * m + s, false);
                PointSet Q = apply_shift(P, sh);
                double v = to_double(extreme_l2_sq_exact(Q));
                double fp = to_double(last_column_formula(m, a, false));
                double fc = to_double(last_column_formula(m, a, true));
                worst_published = std::max(worst_published, rel_err(v, fp));
                worst_corrected = std::max(worst_corrected, rel_err(v, fc));
                if (rel_err(v, fp) > 1e-9 && first_fail.empty()) {
                    std::ostringstream ss;
                    ss << "first mismatch at m=" << m << " a=(";
                    for (size_t i = 0; i < a.size(); ++i)
                        ss << a[i] << (i + 1 < a.size() ? "," : "");
                    ss << "): computed " << v << ", published-form " << fp
                       << ", corrected-form " << fc;
                    first_fail = ss.str();
                }
                ++checked;
            }
        }
    }
    double el = seconds_since(t0);
    o.pass = worst_published <= 1e-9 && el <= 60.0;
    std::ostringstream n1;
    n1 << checked << " (m, a, shift) combinations in " << el
       << " s; max relative deviation from the published reading "
       << worst_published << ", from the corrected reading (a_k coefficient 1 "
          "- 2^(2k-2m+2) instead of 2 - ...) "
       << worst_corrected;
    o.notes.push_back(n1.str());
    if (!first_fail.empty()) o.notes.push_back(first_fail);
    return o;
}

// ------------------------------------------------------------ criterion 2

Outcome crit2() {
    Outcome o;
    Rng rng(2001);
    double worst = 0.0;
    for (uint32_t m = 3; m <= 10; ++m) {
        std::vector<uint32_t> a(m - 1);
        for (auto& x : a) x = uint32_t(rng.below(2));
        GeneratorSet g = family_last_column(m, a);
        PointSet P = generate(g);
        double base = 0.0;
        for (int s = 0; s < 10; ++s) {
            DigitalShift sh = random_shift(2, m, 2, P.N, 7000 + 11 * m + s, false);
            double v = to_double(extreme_l2_sq_exact(apply_shift(P, sh)));
            if (s == 0) base = v;
            else worst = std::max(worst, rel_err(v, base));
        }
    }
    o.pass = worst <= 1e-10;
    std::ostringstream ss;
    ss << "max relative spread of the two-sided L2^2 across digit shifts: " << worst;
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 3

Outcome crit3() {
    Outcome o;
    double worst = 0.0;
    bool exact_equal = true;
    for (uint32_t m = 2; m <= 10; ++m) {
        PointSet U = generate(family_triangular_ones(m));
        Rational v = extreme_l2_sq_exact(U);
        worst = std::max(worst, rel_err(to_double(v), to_double(theorem_value(m))));
        PointSet H = generate(family_hammersley(m));
        if (v != extreme_l2_sq_exact(H)) exact_equal = false;
    }
    o.pass = worst <= 1e-9 && exact_equal;
    std::ostringstream ss;
    ss << "max relative deviation from m/64 + 1/72 - 1/(9*4^(m+2)): " << worst
       << "; rational-mode equality with the a=0 family: "
       << (exact_equal ? "exact" : "VIOLATED");
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 4

Outcome crit4() {
    Outcome o;
    Rng rng(4001);
    double worst = 0.0;
    bool all_exact = true;
    for (uint32_t m = 2; m <= 8; ++m) {
        std::vector<std::vector<uint32_t>> as;
        if (m <= 5) as = a_vectors(m, rng);
        else {
            for (int r = 0; r < 10; ++r) {
                std::vector<uint32_t> a(m - 1);
                for (auto& x : a) x = uint32_t(rng.below(2));
                as.push_back(a);
            }
        }
        for (const auto& a : as) {
            PointSet S = symmetrize(generate(family_last_column(m, a)));
            Rational v = extreme_l2_sq_exact(S);
            Rational f = symmetrized_formula(m, a);
            if (v != f) all_exact = false;
            worst = std::max(worst, rel_err(to_double(v), to_double(f)));
        }
    }
    o.pass = worst <= 1e-9;
    std::ostringstream ss;
    ss << "resolved constant term: -(5/9) * 4^-(m+1) (the m-dependent "
          "exponent reading); max relative deviation " << worst
       << "; rational equality " << (all_exact ? "exact" : "approximate");
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 5

Outcome crit5() {
    Outcome o;
    o.pass = true;
    for (uint32_t m = 3; m <= 8; ++m) {
        RegionReport r = haar_region_sums(m);
        if (!r.total_matches_theorem) o.pass = false;
        std::ostringstream ss;
        ss << "m=" << m << ": total " << rat(r.total)
           << (r.total_matches_theorem ? " == " : " != ") << rat(r.theorem_value);
        for (int j = 1; j <= 8; ++j) {
            if (!r.matches_published[j]) {
                ss << "; erratum region " << j << " (computed " << rat(r.computed[j])
                   << ", published expression " << rat(r.published[j]);
                if (r.has_corrected[j] && r.matches_corrected[j])
                    ss << ", corrected reading matches";
                ss << ")";
            }
        }
        o.notes.push_back(ss.str());
    }
    return o;
}

// ------------------------------------------------------------ criterion 6

Outcome crit6() {
    Outcome o;
    o.pass = true;
    double worst = 0.0;
    auto check = [&](double got, double want, double tol) {
        worst = std::max(worst, std::abs(got - want));
        if (std::abs(got - want) > tol) o.pass = false;
    };

    // listed closed values
    {
        PointSet p1;
        p1.d = 1; p1.N = 1; p1.exact = false; p1.xs = {0.0};
        check(star_l2_sq(p1), 1.0 / 3, 1e-10);
        check(extreme_l2_sq(p1), 1.0 / 12, 1e-10);
        check(periodic_l2_sq(p1), 1.0 / 6, 1e-10);
        check(diaphony_sq(p1), std::numbers::pi * std::numbers::pi / 3, 1e-10);
        p1.xs = {0.5};
        check(star_l2_sq(p1), 1.0 / 12, 1e-10);
        PointSet p2;
        p2.d = 2; p2.N = 1; p2.exact = false; p2.xs = {0.0, 0.0};
        check(star_l2_sq(p2), 11.0 / 18, 1e-10);
        PointSet q;
        q.d = 1; q.N = 2; q.exact = false; q.xs = {0.25, 0.75};
        check(extreme_l2_sq(q), 1.0 / 12, 1e-10);
        q.xs = {0.1, 0.2};
        check(extreme_l2_sq(q), 73.0 / 300, 1e-10);
        q.xs = {0.0, 0.5};
        check(periodic_l2_sq(q), 1.0 / 6, 1e-10);
        for (uint32_t d = 1; d <= 3; ++d) {
            PointSet pd;
            pd.d = d; pd.N = 1; pd.exact = false;
            pd.xs.assign(d, 0.41);
            double want = std::pow(1 + std::numbers::pi * std::numbers::pi / 3,
                                   double(d)) - 1;
            check(diaphony_sq(pd), want, 1e-10);
        }
    }

    // 50 random sets: pair formulas vs independent oracles
    Rng rng(6001);
    for (int rep = 0; rep < 50; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(2));
        uint64_t N = 2 + rng.below(31);
        PointSet P;
        P.d = d; P.N = N;
        if (rep % 2 == 0) {
            P.exact = true; P.b = 2; P.m = 5;
            for (uint64_t i = 0; i < N * d; ++i)
                P.num.push_back(int64_t(rng.below(32)));
            P.xs.assign(N * d, 0.0);
            P.rebuild_float_cache();
            check(to_double(star_l2_sq_exact(P)), star_l2_sq_cellquad(P), 1e-10);
            check(to_double(extreme_l2_sq_exact(P)), extreme_l2_sq_cellquad(P), 1e-10);
            check(to_double(periodic_l2_sq_exact(P)), periodic_l2_sq_cellquad(P), 1e-10);
        } else {
            P.exact = false;
            for (uint64_t i = 0; i < N * d; ++i) P.xs.push_back(rng.uniform());
            check(star_l2_sq(P), star_l2_sq_cellquad(P), 1e-10);
            check(extreme_l2_sq(P), extreme_l2_sq_cellquad(P), 1e-10);
            check(periodic_l2_sq(P), periodic_l2_sq_cellquad(P), 1e-10);
        }
        double err = 0.0;
        double trunc = diaphony_sq_truncated(P, 2000, &err);
        if (std::abs(trunc - diaphony_sq(P)) > err + 1e-12) o.pass = false;
    }
    std::ostringstream ss;
    ss << "50 random sets (d <= 2, N <= 32) plus closed values; max absolute "
          "deviation between evaluators and oracles: " << worst;
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 7

Outcome crit7() {
    Outcome o;
    o.pass = true;
    Rng rng(7001);
    int viol = 0;
    for (int rep = 0; rep < 200; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(3));
        uint64_t N = 2 + rng.below(63);
        PointSet P;
        P.d = d; P.N = N; P.exact = false;
        for (uint64_t i = 0; i < N * d; ++i) P.xs.push_back(rng.uniform());
        double ex = extreme_l2_sq(P);
        if (!(ex <= star_l2_sq(P) * (1 + 1e-12) + 1e-15)) { o.pass = false; ++viol; }
        if (!(ex <= periodic_l2_sq(P) * (1 + 1e-12) + 1e-15)) { o.pass = false; ++viol; }
    }
    // L_p monotonicity of MC estimates
    int mono_viol = 0;
    for (int rep = 0; rep < 5; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(2));
        uint64_t N = 4 + rng.below(28);
        PointSet P;
        P.d = d; P.N = N; P.exact = false;
        for (uint64_t i = 0; i < N * d; ++i) P.xs.push_back(rng.uniform());
        for (LpMetric metric :
             {LpMetric::Star, LpMetric::Extreme, LpMetric::Periodic}) {
            LpEstimate p2 = estimate_lp(P, metric, 2, LpScheme::MonteCarlo,
                                        60000, 0, 100 + rep);
            LpEstimate p4 = estimate_lp(P, metric, 4, LpScheme::MonteCarlo,
                                        60000, 0, 200 + rep);
            if (!(p2.value <=
                  p4.value + 3 * (p2.error_estimate + p4.error_estimate))) {
                o.pass = false;
                ++mono_viol;
            }
        }
    }
    std::ostringstream ss;
    ss << "200 random sets: " << viol
       << " order violations; L_p monotonicity (p=2 vs p=4, 15 estimator "
          "pairs): " << mono_viol << " violations beyond 3 stderr";
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 8

Outcome crit8() {
    Outcome o;
    o.pass = true;
    double worst_series = 0.0;
    for (uint32_t b : {2u, 3u, 5u}) {
        for (uint64_t k = 0; k < 64; ++k) {
            double diff = std::abs(rho_series(b, k, 10000) - rho_weight(b, k));
            worst_series = std::max(worst_series, diff);
            if (diff > 1e-6) o.pass = false;
        }
    }
    double worst_sin = 0.0;
    for (uint32_t b : {2u, 3u, 5u, 7u}) {
        double want = (double(b) * b - 1) / 3;
        double diff = std::abs(sin_inverse_square_sum(b) - want);
        worst_sin = std::max(worst_sin, diff);
        if (diff > 1e-12) o.pass = false;
    }
    std::ostringstream ss;
    ss << "max |series - closed form| over b in {2,3,5}, k < 64: " << worst_series
       << "; max inverse-sin-square identity deviation: " << worst_sin;
    o.notes.push_back(ss.str());
    return o;
}

// ------------------------------------------------------------ criterion 9

Outcome crit9() {
    Outcome o;
    auto t0 = Clock::now();
    bool exact_gate = true, mc_gate = true, bound_gate = true;

    struct Net { const char* name; GeneratorSet g; };
    std::vector<Net> nets;
    nets.push_back({"b=2 d=2 m=4", family_hammersley(4)});
    nets.push_back({"b=3 d=2 m=3", family_faure(3, 2, 3)});
    nets.push_back({"b=2 d=3 m=3", mixed3d()});

    for (const auto& net : nets) {
        ExpectedPeriodic e = expected_periodic_l2_sq(net.g);
        Rational sigma_only = exhaustive_shift_average(net.g, false);
        Rational completed = exhaustive_shift_average(net.g, true);
        bool eq = e.exact_available && (e.dual_sum_exact == sigma_only);
        if (!eq) exact_gate = false;

        ShiftMcResult mc = shift_average_mc(net.g, 500, 424200 + net.g.d);
        bool mco = std::abs(mc.mean - e.dual_sum_form) <= 3 * mc.se;
        if (!mco) mc_gate = false;

        std::ostringstream ss;
        ss << net.name << ": dual-space form " << rat(e.dual_sum_exact) << " ("
           << e.dual_sum_form << "); exhaustive digit-shift average "
           << rat(sigma_only) << "; offset-completed average " << rat(completed)
           << " == dual form + diagonal completion (" << rat(e.full_exact)
           << "); mc over 500 randomized shifts " << mc.mean << " +- " << mc.se;
        o.notes.push_back(ss.str());
    }

    // bound gate over the corpus
    std::vector<GeneratorSet> corpus;
    for (uint32_t m = 2; m <= 8; ++m) corpus.push_back(family_hammersley(m));
    for (uint32_t m = 3; m <= 6; ++m) corpus.push_back(family_triangular_ones(m));
    corpus.push_back(family_last_column(4, {1, 0, 1}));
    corpus.push_back(family_last_column(5, {1, 1, 1, 1}));
    for (uint32_t m = 1; m <= 4; ++m) corpus.push_back(family_faure(3, 2, m));
    corpus.push_back(family_faure(5, 3, 2));
    corpus.push_back(mixed3d());
    double worst_margin = -1e300;
    for (const auto& g : corpus) {
        ExpectedPeriodic e = expected_periodic_l2_sq(g);
        double bound = shift_average_bound(g.b, g.m, g.t, g.d);
        worst_margin = std::max(worst_margin, e.dual_sum_form - bound);
        if (e.dual_sum_form > bound + 1e-12) bound_gate = false;
    }

    o.pass = exact_gate && mc_gate && bound_gate;
    std::ostringstream ss;
    ss << "gates: [dual form == digit-shift-only average exactly] "
       << (exact_gate ? "pass" : "FAIL")
       << "; [dual form within 3 stderr of randomized-shift mc] "
       << (mc_gate ? "pass" : "FAIL") << "; [dual form <= depth bound, "
       << corpus.size() << " nets, worst margin " << worst_margin << "] "
       << (bound_gate ? "pass" : "FAIL") << "; elapsed " << seconds_since(t0)
       << " s";
    o.notes.push_back(ss.str());
    if (!exact_gate || !mc_gate)
        o.notes.push_back(
            "the digit-shift-only average and the randomized-shift mean match "
            "the diagonal-completed expectation, not the bare dual-space form; "
            "see the offset-completed column above");
    return o;
}

// ----------------------------------------------------------- criterion 10

Outcome crit10() {
    Outcome o;
    o.pass = true;
    double worst_tail = 0.0;
    for (uint32_t m = 2; m <= 6; ++m) {
        std::vector<GeneratorSet> fams;
        fams.push_back(family_hammersley(m));
        fams.push_back(family_triangular_ones(m));
        std::vector<uint32_t> a(m - 1, 0);
        if (m >= 2) a[0] = 1;
        fams.push_back(family_last_column(m, a));
        for (const auto& g : fams) {
            PointSet P = generate(g);
            double full = to_double(extreme_l2_sq_exact(P));
            std::vector<double> s = haar_partial_sums(P, int(m) + 8);
            for (size_t i = 1; i < s.size(); ++i)
                if (s[i] < s[i - 1] - 1e-13) o.pass = false;
            for (double v : s)
                if (v > full * (1 + 1e-9) + 1e-15) o.pass = false;
            double tail_rel = rel_err(s.back(), full);
            worst_tail = std::max(worst_tail, tail_rel);
            if (tail_rel > 1e-3) o.pass = false;
        }
    }
    // empty-box coefficients, exact check over all translates of small levels
    bool empty_ok = true;
    PointSet H = generate(family_hammersley(3));
    for (int j1 = 0; j1 <= 2; ++j1)
        for (int j2 = 0; j2 <= 2; ++j2)
            for (int64_t m1 = 0; m1 < (1 << j1); ++m1)
                for (int64_t m2 = 0; m2 < (1 << j2); ++m2) {
                    // does the dyadic box contain any point?
                    bool empty = true;
                    for (uint64_t n = 0; n < H.N && empty; ++n) {
                        double x = H.coord(n, 0), y = H.coord(n, 1);
                        if (x >= std::ldexp(double(m1), -j1) &&
                            x < std::ldexp(double(m1 + 1), -j1) &&
                            y >= std::ldexp(double(m2), -j2) &&
                            y < std::ldexp(double(m2 + 1), -j2))
                            empty = false;
                    }
                    if (!empty) continue;
                    Rational want = Rational(-int64_t(H.N)) *
                                    pow2r(-2 * (j1 + j2) - 4);
                    if (haar_coeff_exact(H, {j1, j2}, {m1, m2}) != want)
                        empty_ok = false;
                }
    if (!empty_ok) o.pass = false;
    std::ostringstream ss;
    ss << "partial sums monotone and bounded for 3 families, m <= 6; worst "
          "relative gap at truncation depth m+8: " << worst_tail
       << "; empty-box coefficients equal -N*2^(-2|j|-4): "
       << (empty_ok ? "exact" : "VIOLATED");
    o.notes.push_back(ss.str());
    return o;
}

// ----------------------------------------------------------- criterion 11

Outcome crit11() {
    Outcome o;
    // growth of the two-sided L2^2 for the classical family
    double v14 = 0.0;
    for (uint32_t m = 4; m <= 14; ++m) {
        PointSet P = generate(family_hammersley(m));
        double v = (P.N <= 4096) ? to_double(extreme_l2_sq_exact(P))
                                 : extreme_l2_sq(P);
        if (m == 14) v14 = v;
    }
    double ratio = v14 * 64.0 / 14.0;
    bool growth_ok = ratio >= 0.9 && ratio <= 1.2;

    // timing at N = 16384
    PointSet big = generate(family_hammersley(14));
    auto t1 = Clock::now();
    double v1 = extreme_l2_sq(big, 1);
    double el1 = seconds_since(t1);
    auto t4 = Clock::now();
    double v4 = extreme_l2_sq(big, 4);
    double el4 = seconds_since(t4);
    bool time_ok = el1 <= 10.0;
    double speedup = el1 / el4;
    bool speed_ok = speedup >= 2.0;
    bool agree_ok = rel_err(v4, v1) <= 1e-12;

    // expectation growth for the prime-cubed family, d = 2: the shift-average
    // bound says E(m) <= ((1+b^2)/3)^d * m^(d-1), i.e. at most linear in m
    // here.  Check every tested depth against that line and report the
    // largest E(m)/m, which must stay below the constant (100/9 for b=3).
    double linear_c = shift_average_bound(3, 1, 0, 2);  // ((1+9)/3)^2 * 1
    double max_em = 0.0;
    bool linear_ok = true;
    for (uint32_t m = 1; m <= 6; ++m) {
        double em = expected_periodic_l2_sq(family_faure(3, 2, m)).dual_sum_form;
        max_em = std::max(max_em, em / m);
        if (em > linear_c * m + 1e-12) linear_ok = false;
    }

    o.pass = growth_ok && time_ok && speed_ok && agree_ok && linear_ok;
    std::ostringstream ss;
    ss << "L2^2 * 64/m at m=14: " << ratio << " (in [0.9, 1.2]: "
       << (growth_ok ? "yes" : "NO") << "); N=16384 single-thread " << el1
       << " s (<= 10 s: " << (time_ok ? "yes" : "NO") << "); 4-thread "
       << el4 << " s, speedup " << speedup << " (>= 2: "
       << (speed_ok ? "yes" : "NO")
       << "); thread-count agreement: " << (agree_ok ? "within 1e-12" : "VIOLATED")
       << "; expectation E(m)/m max over m=1..6: " << max_em
       << " (<= " << linear_c << ": " << (linear_ok ? "yes" : "NO") << ")";
    o.notes.push_back(ss.str());
    if (!speed_ok) {
        std::ostringstream hw;
        hw << "hardware_concurrency() reports "
           << std::thread::hardware_concurrency()
           << " available core(s); a >= 2x speedup on 4 threads is not "
              "attainable on this host. The 4-thread result is bitwise "
              "identical to the single-thread result by construction.";
        o.notes.push_back(hw.str());
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <1..11|all>\n";
        return 2;
    }
    std::vector<int> which;
    if (std::strcmp(argv[1], "all") == 0) {
        for (int k = 1; k <= 11; ++k) which.push_back(k);
    } else {
        int k = std::atoi(argv[1]);
        if (k < 1 || k > 11) {
            std::cerr << "criterion must be 1..11 or 'all'\n";
            return 2;
        }
        which.push_back(k);
    }

    Outcome (*fns[])() = {crit1, crit2, crit3, crit4,  crit5, crit6,
                          crit7, crit8, crit9, crit10, crit11};
    bool all_pass = true;
    for (int k : which) {
        Outcome o = fns[k - 1]();
        std::cout << "CRITERION " << k << ": " << (o.pass ? "PASS" : "FAIL")
                  << "\n";
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        if (!o.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
