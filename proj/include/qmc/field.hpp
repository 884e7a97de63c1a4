#pragma once
// Arithmetic and linear algebra over the prime field Z_b.

#include <cstdint>
#include <vector>
#include <stdexcept>
#include <string>

namespace qmc {

// Prime modulus with a precomputed multiplicative inverse table.
struct PrimeBase {
    uint32_t b = 2;
    std::vector<uint32_t> inv;  // inv[x] for x in 1..b-1, inv[0] unused

    PrimeBase() : PrimeBase(2) {}
    explicit PrimeBase(uint32_t base);

    static bool is_prime(uint32_t n);
};

// Dense row-major matrix with entries in {0,..,b-1}.
struct MatrixZb {
    PrimeBase base;
    uint32_t rows = 0, cols = 0;
    std::vector<uint32_t> a;  // rows*cols entries

    MatrixZb() = default;
    MatrixZb(PrimeBase bs, uint32_t r, uint32_t c)
        : base(bs), rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint32_t& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
    uint32_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }

    bool operator==(const MatrixZb& o) const {
        return base.b == o.base.b && rows == o.rows && cols == o.cols && a == o.a;
    }
};

MatrixZb identity_matrix(PrimeBase b, uint32_t m);
MatrixZb reversal_matrix(PrimeBase b, uint32_t m);      // antidiagonal ones
MatrixZb pascal_matrix(PrimeBase b, uint32_t m);        // P[r][c] = binom(c,r) mod b (0-indexed)
MatrixZb mat_mul(const MatrixZb& A, const MatrixZb& B);
MatrixZb mat_pow(const MatrixZb& A, uint32_t e);

std::vector<uint32_t> mat_vec_mul(const MatrixZb& M, const std::vector<uint32_t>& v);

// Rank over Z_b by Gaussian elimination with modular inverse pivots.
uint32_t rank(MatrixZb M);

}  // namespace qmc
