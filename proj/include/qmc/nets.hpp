#pragma once
// Digital net construction over prime-base finite fields: generator-matrix
// sets with net-parameter verification, the concrete 2-D matrix families,
// point-set generation on the base-b grid, digital shifts, symmetrization,
// and point-set file I/O.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmc/field.hpp"
#include "qmc/rng.hpp"

namespace qmc {

// ---------------------------------------------------------------- nets ----

struct GeneratorSet {
    uint32_t b = 2;   // prime base
    uint32_t m = 1;   // digit depth; N = b^m points
    uint32_t d = 1;   // dimension
    std::vector<MatrixZb> C;  // d generator matrices, each m x m
    uint32_t t = 0;   // verified quality parameter (minimal t, see strict_t_value)

    GeneratorSet(uint32_t b_, uint32_t m_, std::vector<MatrixZb> mats);

    uint64_t point_count() const;
};

// True iff for every composition (l_1..l_d) of m-t into nonnegative parts the
// matrix formed by stacking the first l_j rows of each C_j has full row rank
// m-t over Z_b.
bool is_net_system(uint32_t b, uint32_t m, const std::vector<MatrixZb>& C, uint32_t t);
bool is_net_system(const GeneratorSet& g, uint32_t t);

// Minimal t for which is_net_system holds (always <= m).
uint32_t strict_t_value(uint32_t b, uint32_t m, const std::vector<MatrixZb>& C);

// ---------------------------------------------------------- matrix families

// First generator used by all 2-D families below: antidiagonal reversal.
// Second generator: identity except the last column equals (a_1..a_{m-1},1)^T.
// Base 2, d = 2. a has m-1 entries.
GeneratorSet family_last_column(uint32_t m, const std::vector<uint32_t>& a);

// Second generator: unit upper triangular, row i (1-based, i < m) equal to
// (0..0,1,c_i,...,c_i). Base 2, d = 2. c has m-1 entries.
GeneratorSet family_triangular(uint32_t m, const std::vector<uint32_t>& c);

// family_triangular with c = (1,...,1).
GeneratorSet family_triangular_ones(uint32_t m);

// family_last_column with a = 0: reversal + identity (the classical 2-D
// construction with radical-inverse first coordinate).
GeneratorSet family_hammersley(uint32_t m);

// C_j = P^(j-1) with P the upper-triangular Pascal matrix over Z_b.
// Requires prime b >= d.
GeneratorSet family_faure(uint32_t b, uint32_t d, uint32_t m);

// ------------------------------------------------------------- point sets

struct PointSet {
    uint32_t d = 1;
    uint64_t N = 0;
    bool exact = false;   // true: coordinates are num/b^m (+ optional offset)
    uint32_t b = 2;
    uint32_t m = 0;
    std::vector<int64_t> num;     // N*d grid numerators in [0, b^m), when exact
    std::vector<double> offset;   // N*d offsets in [0, b^-m); empty = all zero
    std::vector<double> xs;       // N*d floating-point coordinates (always set)

    double coord(uint64_t n, uint32_t j) const { return xs[n * d + j]; }
    int64_t numerator(uint64_t n, uint32_t j) const { return num[n * d + j]; }
    bool has_offsets() const { return !offset.empty(); }

    void rebuild_float_cache();
};

// Evaluate the digital net defined by gens into an exact grid point set.
PointSet generate(const GeneratorSet& gens);

// ------------------------------------------------------------ digital shift

struct DigitalShift {
    uint32_t b = 2, m = 0, d = 1;
    // d*m digits; sigma[j*m + i] is added (mod b) to the digit of weight
    // b^-(i+1) of coordinate j.
    std::vector<uint32_t> sigma;
    // optional per-point-per-coordinate offsets in [0, b^-m); size N*d
    std::vector<double> deltas;
    uint64_t seed = 0;
};

// Depth-m digitwise shift with uniform digits; if with_deltas, also draws a
// uniform offset in [0, b^-m) for each of the N*d coordinates.
DigitalShift random_shift(uint32_t b, uint32_t m, uint32_t d, uint64_t N,
                          uint64_t seed, bool with_deltas);

// Shift every digit of a grid numerator: q' has digits (q_i + sigma_i) mod b.
int64_t shift_numerator(int64_t q, uint32_t b, uint32_t m, const uint32_t* sigma);

// Apply a digital shift to an exact grid point set. Digit shifts keep the set
// exact; offsets make it non-grid (exact flag cleared, coordinates stored as
// floating point).
PointSet apply_shift(const PointSet& P, const DigitalShift& s);

// For a base-2 depth-m grid set in dimension 2, append the reflected copy
// (x, 1 - 2^-m - y) of every point. Result has 2^(m+1) points.
PointSet symmetrize(const PointSet& P);

// ---------------------------------------------------------------- file I/O

// Format: header line "# d=<d> N=<N> base=<b> m=<m> exact=<0|1>", then N
// lines of d whitespace-separated values: grid numerators when exact=1,
// otherwise decimals with 17 significant digits.
void write_point_set(const std::string& path, const PointSet& P);
PointSet read_point_set(const std::string& path);

}  // namespace qmc
