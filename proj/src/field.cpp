#include "qmc/field.hpp"

namespace qmc {

bool PrimeBase::is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

PrimeBase::PrimeBase(uint32_t base) : b(base) {
    if (!is_prime(base))
        throw std::invalid_argument("base must be prime, got " + std::to_string(base));
    inv.assign(b, 0);
    for (uint32_t x = 1; x < b; ++x)
        for (uint32_t y = 1; y < b; ++y)
            if (x * y % b == 1) { inv[x] = y; break; }
}

MatrixZb identity_matrix(PrimeBase b, uint32_t m) {
    MatrixZb M(b, m, m);
    for (uint32_t i = 0; i < m; ++i) M.at(i, i) = 1;
    return M;
}

MatrixZb reversal_matrix(PrimeBase b, uint32_t m) {
    MatrixZb M(b, m, m);
    for (uint32_t i = 0; i < m; ++i) M.at(i, m - 1 - i) = 1;
    return M;
}

MatrixZb pascal_matrix(PrimeBase b, uint32_t m) {
    // binom(c, r) mod b via the additive Pascal recurrence
    MatrixZb M(b, m, m);
    for (uint32_t c = 0; c < m; ++c) M.at(0, c) = 1;
    for (uint32_t r = 1; r < m; ++r)
        for (uint32_t c = r; c < m; ++c)
            M.at(r, c) = (M.at(r - 1, c - 1) + M.at(r, c - 1)) % b.b;
    return M;
}

MatrixZb mat_mul(const MatrixZb& A, const MatrixZb& B) {
    if (A.cols != B.rows || A.base.b != B.base.b)
        throw std::invalid_argument("matrix product dimension/base mismatch");
    MatrixZb C(A.base, A.rows, B.cols);
    for (uint32_t i = 0; i < A.rows; ++i)
        for (uint32_t k = 0; k < A.cols; ++k) {
            uint32_t aik = A.at(i, k);
            if (!aik) continue;
            for (uint32_t j = 0; j < B.cols; ++j)
                C.at(i, j) = (C.at(i, j) + aik * B.at(k, j)) % A.base.b;
        }
    return C;
}

MatrixZb mat_pow(const MatrixZb& A, uint32_t e) {
    MatrixZb R = identity_matrix(A.base, A.rows);
    for (uint32_t i = 0; i < e; ++i) R = mat_mul(R, A);
    return R;
}

std::vector<uint32_t> mat_vec_mul(const MatrixZb& M, const std::vector<uint32_t>& v) {
    if (v.size() != M.cols)
        throw std::invalid_argument("mat_vec_mul: vector length != cols");
    std::vector<uint32_t> r(M.rows, 0);
    for (uint32_t i = 0; i < M.rows; ++i) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < M.cols; ++j) acc += uint64_t(M.at(i, j)) * v[j];
        r[i] = uint32_t(acc % M.base.b);
    }
    return r;
}

uint32_t rank(MatrixZb M) {
    const uint32_t b = M.base.b;
    uint32_t rk = 0;
    for (uint32_t col = 0; col < M.cols && rk < M.rows; ++col) {
        uint32_t piv = rk;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) continue;
        if (piv != rk)
            for (uint32_t j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(rk, j));
        uint32_t s = M.base.inv[M.at(rk, col)];
        for (uint32_t j = col; j < M.cols; ++j) M.at(rk, j) = M.at(rk, j) * s % b;
        for (uint32_t i = 0; i < M.rows; ++i) {
            if (i == rk) continue;
            uint32_t f = M.at(i, col);
            if (!f) continue;
            for (uint32_t j = col; j < M.cols; ++j)
                M.at(i, j) = (M.at(i, j) + (b - f) * M.at(rk, j)) % b;
        }
        ++rk;
    }
    return rk;
}

}  // namespace qmc
