#pragma once
// L2-type discrepancy metrics: exact rational pair-formula evaluation for
// grid sets, compensated floating-point pair-formula evaluation for general
// sets, box-counting and local-discrepancy primitives, independent
// cell-decomposition quadrature oracles, and L_p estimation (grid quadrature
// and Monte Carlo).

#include <cstdint>
#include <string>
#include <vector>

#include "qmc/nets.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// second Bernoulli polynomial
inline double bernoulli2(double t) { return t * t - t + 1.0 / 6.0; }

// --------------------------------------------------- counting primitives --

// number of points in the half-open box [lo, hi)
uint64_t count_in_box(const PointSet& P, const std::vector<double>& lo,
                      const std::vector<double>& hi);

// A([0,t)) - N * prod(t): anchored local discrepancy
double local_discrepancy_anchored(const PointSet& P, const std::vector<double>& t);

// A([x,y)) - N * prod(y-x), requires x <= y componentwise
double local_discrepancy_box(const PointSet& P, const std::vector<double>& x,
                             const std::vector<double>& y);

// wrapped-interval local discrepancy: coordinate j uses [x_j, y_j) when
// x_j <= y_j and [0, y_j) u [x_j, 1) otherwise
double local_discrepancy_periodic(const PointSet& P, const std::vector<double>& x,
                                  const std::vector<double>& y);

// alternating corner combination of anchored values over all corner choices;
// equals local_discrepancy_box(min, max) up to sign pattern
double corner_combination(const PointSet& P, const std::vector<double>& x,
                          const std::vector<double>& y);

// -------------------------------------------- exact rational evaluators --

// All require an exact grid set with no offsets and N <= 4096 (and enough
// 128-bit headroom, checked); they throw std::domain_error otherwise.
Rational star_l2_sq_exact(const PointSet& P);
Rational extreme_l2_sq_exact(const PointSet& P);
Rational periodic_l2_sq_exact(const PointSet& P);

// expectation of periodic L2^2 over independent per-point-per-coordinate
// offsets uniform in [0, b^-m) added to the grid points
Rational periodic_l2_sq_offset_avg_exact(const PointSet& P);

// raw-array variants used by shift-enumeration loops
Rational periodic_l2_sq_exact_raw(const int64_t* num, uint64_t N, uint32_t d,
                                  uint32_t b, uint32_t m);
Rational periodic_l2_sq_offset_avg_exact_raw(const int64_t* num, uint64_t N,
                                             uint32_t d, uint32_t b, uint32_t m);

// ---------------------------------------- floating pair-formula evaluators

// Deterministic parallel evaluation (bitwise identical for any thread
// count). Values are squared L2 norms of the unnormalized discrepancy
// function; diaphony_sq is the classical normalized squared diaphony.
double star_l2_sq(const PointSet& P, int threads = 1);
double extreme_l2_sq(const PointSet& P, int threads = 1);
double periodic_l2_sq(const PointSet& P, int threads = 1);
double diaphony_sq(const PointSet& P, int threads = 1);

// ------------------------------------------------- independent oracles --

// Cell-decomposition quadrature of the defining integrals (d <= 2): the
// integration domain is split into cells on which the counting function is
// constant and each cell's polynomial integral is accumulated in closed
// form. Independent of the pair formulas.
double star_l2_sq_cellquad(const PointSet& P);
double extreme_l2_sq_cellquad(const PointSet& P);
double periodic_l2_sq_cellquad(const PointSet& P);

// Truncated frequency-sum diaphony: all indices |k_j| <= K. err_bound
// receives a proven bound on the truncation error of the squared value.
double diaphony_sq_truncated(const PointSet& P, int K, double* err_bound);

// ------------------------------------------------------- L_p estimation --

enum class LpMetric { Star, Extreme, Periodic };
enum class LpScheme { Grid, MonteCarlo };

struct LpEstimate {
    double value = 0.0;          // L_p value
    double error_estimate = 0.0; // stderr (MC, via delta method) or grid error
    uint64_t evals = 0;
    bool budget_exhausted = false;
    std::string method;
};

// budget = maximum number of integrand evaluations; tol = requested absolute
// accuracy for the grid scheme (budget_exhausted set if unmet).
LpEstimate estimate_lp(const PointSet& P, LpMetric metric, double p,
                       LpScheme scheme, uint64_t budget, double tol,
                       uint64_t seed, int threads = 1);

}  // namespace qmc
