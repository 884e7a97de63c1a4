#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmc/metrics.hpp"
#include "qmc/nets.hpp"
#include "qmc/rng.hpp"

using namespace qmc;

namespace {

PointSet grid_set(uint32_t b, uint32_t m, uint32_t d, std::vector<int64_t> nums) {
    PointSet P;
    P.d = d;
    P.N = nums.size() / d;
    P.exact = true;
    P.b = b;
    P.m = m;
    P.num = std::move(nums);
    P.xs.assign(P.num.size(), 0.0);
    P.rebuild_float_cache();
    return P;
}

PointSet float_set(uint32_t d, std::vector<double> xs) {
    PointSet P;
    P.d = d;
    P.N = xs.size() / d;
    P.exact = false;
    P.xs = std::move(xs);
    return P;
}

PointSet random_grid(Rng& rng, uint32_t b, uint32_t m, uint32_t d, uint64_t N) {
    int64_t top = 1;
    for (uint32_t i = 0; i < m; ++i) top *= b;
    std::vector<int64_t> nums;
    for (uint64_t i = 0; i < N * d; ++i) nums.push_back(int64_t(rng.below(uint64_t(top))));
    return grid_set(b, m, d, std::move(nums));
}

PointSet random_floats(Rng& rng, uint32_t d, uint64_t N) {
    std::vector<double> xs;
    for (uint64_t i = 0; i < N * d; ++i) xs.push_back(rng.uniform());
    return float_set(d, std::move(xs));
}

}  // namespace

TEST_CASE("counting primitives") {
    PointSet P = float_set(2, {0.25, 0.5, 0.75, 0.5});
    CHECK(count_in_box(P, {0.0, 0.0}, {0.5, 0.6}) == 1);   // half-open in x
    CHECK(count_in_box(P, {0.25, 0.5}, {0.76, 0.51}) == 2);
    CHECK(count_in_box(P, {0.0, 0.0}, {0.25, 1.0}) == 0);
    CHECK(local_discrepancy_anchored(P, {1.0, 1.0}) == doctest::Approx(0.0));
    CHECK(local_discrepancy_anchored(P, {0.5, 1.0}) ==
          doctest::Approx(1.0 - 2.0 * 0.5));
    CHECK(local_discrepancy_box(P, {0.2, 0.4}, {0.8, 0.8}) ==
          doctest::Approx(2.0 - 2.0 * 0.6 * 0.4));
    // wrapped interval: [0, 0.2) u [0.7, 1) in the first coordinate
    PointSet Q = float_set(1, {0.1, 0.5, 0.8});
    CHECK(local_discrepancy_periodic(Q, {0.7}, {0.2}) ==
          doctest::Approx(2.0 - 3.0 * 0.5));
    CHECK(local_discrepancy_periodic(Q, {0.2}, {0.7}) ==
          doctest::Approx(1.0 - 3.0 * 0.5));

    Rng rng(11);
    PointSet R = random_floats(rng, 2, 9);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x{rng.uniform(), rng.uniform()};
        std::vector<double> y{rng.uniform(), rng.uniform()};
        std::vector<double> lo{std::min(x[0], y[0]), std::min(x[1], y[1])};
        std::vector<double> hi{std::max(x[0], y[0]), std::max(x[1], y[1])};
        // for unordered corners the alternating sum equals the signed box
        // discrepancy, one sign flip per inverted coordinate
        double sign = (x[0] <= y[0] ? 1.0 : -1.0) * (x[1] <= y[1] ? 1.0 : -1.0);
        CHECK(corner_combination(R, x, y) ==
              doctest::Approx(sign * local_discrepancy_box(R, lo, hi))
                  .epsilon(1e-12));
    }
}

TEST_CASE("closed-form values, anchored metric") {
    CHECK(star_l2_sq_exact(grid_set(2, 1, 1, {0})) == Rational(1, 3));
    CHECK(star_l2_sq_exact(grid_set(2, 1, 1, {1})) == Rational(1, 12));
    CHECK(star_l2_sq_exact(grid_set(2, 1, 2, {0, 0})) == Rational(11, 18));
    CHECK(star_l2_sq(grid_set(2, 1, 1, {0})) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(star_l2_sq_cellquad(grid_set(2, 1, 2, {0, 0})) ==
          doctest::Approx(11.0 / 18).epsilon(1e-12));
}

TEST_CASE("closed-form values, two-sided and wrapped metrics") {
    CHECK(extreme_l2_sq_exact(grid_set(2, 1, 1, {0})) == Rational(1, 12));
    CHECK(extreme_l2_sq_exact(grid_set(2, 2, 1, {1, 3})) == Rational(1, 12));
    PointSet f = float_set(1, {0.1, 0.2});
    CHECK(extreme_l2_sq(f) == doctest::Approx(73.0 / 300).epsilon(1e-10));
    CHECK(extreme_l2_sq_cellquad(f) == doctest::Approx(73.0 / 300).epsilon(1e-10));

    CHECK(periodic_l2_sq_exact(grid_set(2, 1, 1, {0})) == Rational(1, 6));
    CHECK(periodic_l2_sq_exact(grid_set(2, 1, 1, {0, 1})) == Rational(1, 6));
    // wrapped metric ignores position: one point anywhere gives 1/6
    CHECK(periodic_l2_sq(float_set(1, {0.37})) == doctest::Approx(1.0 / 6).epsilon(1e-13));
}

TEST_CASE("diaphony closed forms and series oracle") {
    const double pi2_3 = std::numbers::pi * std::numbers::pi / 3.0;
    CHECK(diaphony_sq(float_set(1, {0.0})) == doctest::Approx(pi2_3).epsilon(1e-13));
    for (uint32_t d = 1; d <= 3; ++d) {
        std::vector<double> xs(d, 0.31);
        double want = std::pow(1.0 + pi2_3, double(d)) - 1.0;
        CHECK(diaphony_sq(float_set(d, xs)) == doctest::Approx(want).epsilon(1e-13));
    }

    Rng rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        PointSet P = random_floats(rng, 2, 6);
        double err = 0.0;
        double trunc = diaphony_sq_truncated(P, 2000, &err);
        CHECK(std::abs(trunc - diaphony_sq(P)) <= err + 1e-12);
    }
}

TEST_CASE("two-sided discrepancy of the classical 2-D family") {
    // exact values for depth 2..8; the all-ones triangular family gives the
    // same value at every depth
    const std::pair<int64_t, int64_t> frozen[] = {
        {103, 2304},     {559, 9216},      {2815, 36864},    {13567, 147456},
        {63487, 589824}, {290815, 2359296}, {1310719, 9437184},
    };
    for (uint32_t m = 2; m <= 8; ++m) {
        Rational want(frozen[m - 2].first, frozen[m - 2].second);
        PointSet H = generate(family_hammersley(m));
        CHECK(extreme_l2_sq_exact(H) == want);
        PointSet U = generate(family_triangular_ones(m));
        CHECK(extreme_l2_sq_exact(U) == want);
        CHECK(extreme_l2_sq(H) == doctest::Approx(to_double(want)).epsilon(1e-11));
    }
    // last-column family, m = 3, a = (1, 0)
    PointSet A = generate(family_last_column(3, {1, 0}));
    CHECK(extreme_l2_sq_exact(A) == Rational(595, 9216));
}

TEST_CASE("exact evaluators match the cell-decomposition oracle") {
    Rng rng(99);
    for (int rep = 0; rep < 8; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(2));
        PointSet P = random_grid(rng, 2, 4, d, 6 + rng.below(8));
        CHECK(to_double(star_l2_sq_exact(P)) ==
              doctest::Approx(star_l2_sq_cellquad(P)).epsilon(1e-11));
        CHECK(to_double(extreme_l2_sq_exact(P)) ==
              doctest::Approx(extreme_l2_sq_cellquad(P)).epsilon(1e-11));
        CHECK(to_double(periodic_l2_sq_exact(P)) ==
              doctest::Approx(periodic_l2_sq_cellquad(P)).epsilon(1e-11));
    }
    for (int rep = 0; rep < 8; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(2));
        PointSet P = random_floats(rng, d, 5 + rng.below(10));
        CHECK(star_l2_sq(P) == doctest::Approx(star_l2_sq_cellquad(P)).epsilon(1e-10));
        CHECK(extreme_l2_sq(P) ==
              doctest::Approx(extreme_l2_sq_cellquad(P)).epsilon(1e-10));
        CHECK(periodic_l2_sq(P) ==
              doctest::Approx(periodic_l2_sq_cellquad(P)).epsilon(1e-10));
    }
}

TEST_CASE("float evaluators agree with rational mode") {
    Rng rng(123);
    for (int rep = 0; rep < 6; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(3));
        PointSet P = random_grid(rng, 2, 5, d, 16 + rng.below(17));
        CHECK(star_l2_sq(P) ==
              doctest::Approx(to_double(star_l2_sq_exact(P))).epsilon(1e-10));
        CHECK(extreme_l2_sq(P) ==
              doctest::Approx(to_double(extreme_l2_sq_exact(P))).epsilon(1e-10));
        CHECK(periodic_l2_sq(P) ==
              doctest::Approx(to_double(periodic_l2_sq_exact(P))).epsilon(1e-10));
    }
    // base 3 grids as well
    for (int rep = 0; rep < 3; ++rep) {
        PointSet P = random_grid(rng, 3, 3, 2, 12);
        CHECK(periodic_l2_sq(P) ==
              doctest::Approx(to_double(periodic_l2_sq_exact(P))).epsilon(1e-10));
    }
}

TEST_CASE("rational mode rejects unsupported inputs") {
    PointSet F = float_set(1, {0.3});
    CHECK_THROWS_AS((void)star_l2_sq_exact(F), std::domain_error);
    PointSet G = grid_set(2, 2, 1, {1});
    G.offset.assign(1, 0.1);
    CHECK_THROWS_AS((void)periodic_l2_sq_exact(G), std::domain_error);
}

TEST_CASE("offset-averaged wrapped metric") {
    // one point: the wrapped metric is position-independent, so averaging
    // over the in-cell offset changes nothing
    CHECK(periodic_l2_sq_offset_avg_exact(grid_set(2, 1, 1, {0})) == Rational(1, 6));

    // Monte Carlo over offsets must reproduce the exact average
    PointSet P = generate(family_hammersley(2));
    Rational avg = periodic_l2_sq_offset_avg_exact(P);
    Rng rng(2024);
    double mean = 0.0, m2 = 0.0;
    const int S = 4000;
    for (int s = 0; s < S; ++s) {
        PointSet Q = P;
        Q.exact = false;
        for (auto& x : Q.xs) x += rng.uniform() * 0.25;
        double v = periodic_l2_sq(Q);
        double delta = v - mean;
        mean += delta / double(s + 1);
        m2 += delta * (v - mean);
    }
    double se = std::sqrt(m2 / double(S - 1) / double(S));
    CHECK(std::abs(mean - to_double(avg)) <= 4.0 * se);
}

TEST_CASE("metric inequalities on random sets") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        uint32_t d = 1 + uint32_t(rng.below(3));
        PointSet P = random_floats(rng, d, 4 + rng.below(20));
        double ex = extreme_l2_sq(P);
        CHECK(ex <= star_l2_sq(P) * (1 + 1e-12));
        CHECK(ex <= periodic_l2_sq(P) * (1 + 1e-12));
    }
}

TEST_CASE("results are bitwise identical across thread counts") {
    Rng rng(31);
    PointSet P = random_floats(rng, 3, 257);
    CHECK(star_l2_sq(P, 1) == star_l2_sq(P, 3));
    CHECK(extreme_l2_sq(P, 1) == extreme_l2_sq(P, 4));
    CHECK(periodic_l2_sq(P, 1) == periodic_l2_sq(P, 2));
    CHECK(diaphony_sq(P, 1) == diaphony_sq(P, 5));
}
