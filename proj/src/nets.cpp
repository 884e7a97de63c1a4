#include "qmc/nets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmc {

// ---------------------------------------------------------------- nets ----

GeneratorSet::GeneratorSet(uint32_t b_, uint32_t m_, std::vector<MatrixZb> mats)
    : b(b_), m(m_), d((uint32_t)mats.size()), C(std::move(mats)) {
    if (d == 0) throw std::invalid_argument("generator set needs at least one matrix");
    if (m == 0) throw std::invalid_argument("digit depth must be positive");
    for (const auto& M : C) {
        if (M.base.b != b) throw std::invalid_argument("generator base mismatch");
        if (M.rows != m || M.cols != m)
            throw std::invalid_argument("generator matrices must be m x m");
    }
    t = strict_t_value(b, m, C);
}

uint64_t GeneratorSet::point_count() const {
    uint64_t n = 1;
    for (uint32_t i = 0; i < m; ++i) n *= b;
    return n;
}

namespace {

// Enumerate nonnegative compositions (l_1..l_d) of s and test full row rank
// of the stacked first-rows matrix for each.
bool check_compositions(uint32_t b, uint32_t m, const std::vector<MatrixZb>& C,
                        uint32_t s, std::vector<uint32_t>& l, uint32_t pos,
                        uint32_t remaining) {
    const uint32_t d = (uint32_t)C.size();
    if (pos == d - 1) {
        l[pos] = remaining;
        PrimeBase base(b);
        MatrixZb S(base, s, m);
        uint32_t row = 0;
        for (uint32_t j = 0; j < d; ++j)
            for (uint32_t r = 0; r < l[j]; ++r, ++row)
                for (uint32_t c = 0; c < m; ++c) S.at(row, c) = C[j].at(r, c);
        return rank(S) == s;
    }
    for (uint32_t v = 0; v <= remaining; ++v) {
        l[pos] = v;
        if (!check_compositions(b, m, C, s, l, pos + 1, remaining - v)) return false;
    }
    return true;
}

}  // namespace

bool is_net_system(uint32_t b, uint32_t m, const std::vector<MatrixZb>& C, uint32_t t) {
    if (t > m) throw std::invalid_argument("t exceeds m");
    uint32_t s = m - t;
    if (s == 0) return true;  // empty rank condition
    std::vector<uint32_t> l(C.size(), 0);
    return check_compositions(b, m, C, s, l, 0, s);
}

bool is_net_system(const GeneratorSet& g, uint32_t t) {
    return is_net_system(g.b, g.m, g.C, t);
}

uint32_t strict_t_value(uint32_t b, uint32_t m, const std::vector<MatrixZb>& C) {
    for (uint32_t t = 0; t <= m; ++t)
        if (is_net_system(b, m, C, t)) return t;
    return m;  // unreachable: t = m always passes
}

// ---------------------------------------------------------- matrix families

GeneratorSet family_last_column(uint32_t m, const std::vector<uint32_t>& a) {
    if (a.size() != m - 1) throw std::invalid_argument("a must have m-1 entries");
    PrimeBase b2(2);
    MatrixZb C1 = reversal_matrix(b2, m);
    MatrixZb C2 = identity_matrix(b2, m);
    for (uint32_t i = 0; i + 1 < m; ++i) C2.at(i, m - 1) = a[i] % 2;
    C2.at(m - 1, m - 1) = 1;
    return GeneratorSet(2, m, {C1, C2});
}

GeneratorSet family_triangular(uint32_t m, const std::vector<uint32_t>& c) {
    if (c.size() != m - 1) throw std::invalid_argument("c must have m-1 entries");
    PrimeBase b2(2);
    MatrixZb C1 = reversal_matrix(b2, m);
    MatrixZb C2(b2, m, m);
    for (uint32_t i = 0; i < m; ++i) {
        C2.at(i, i) = 1;
        if (i + 1 < m)
            for (uint32_t j = i + 1; j < m; ++j) C2.at(i, j) = c[i] % 2;
    }
    return GeneratorSet(2, m, {C1, C2});
}

GeneratorSet family_triangular_ones(uint32_t m) {
    return family_triangular(m, std::vector<uint32_t>(m - 1, 1));
}

GeneratorSet family_hammersley(uint32_t m) {
    return family_last_column(m, std::vector<uint32_t>(m - 1, 0));
}

GeneratorSet family_faure(uint32_t b, uint32_t d, uint32_t m) {
    if (b < d) throw std::invalid_argument("base must be >= dimension");
    PrimeBase base(b);
    MatrixZb P = pascal_matrix(base, m);
    std::vector<MatrixZb> C;
    C.reserve(d);
    MatrixZb cur = identity_matrix(base, m);
    for (uint32_t j = 0; j < d; ++j) {
        C.push_back(cur);
        if (j + 1 < d) cur = mat_mul(cur, P);
    }
    return GeneratorSet(b, m, std::move(C));
}

// ------------------------------------------------------------- point sets

void PointSet::rebuild_float_cache() {
    if (!exact) return;  // non-grid sets own xs directly
    xs.assign((size_t)N * d, 0.0);
    double scale = std::pow((double)b, -(double)m);
    for (size_t i = 0; i < xs.size(); ++i) {
        xs[i] = (double)num[i] * scale;
        if (!offset.empty()) xs[i] += offset[i];
    }
}

PointSet generate(const GeneratorSet& gens) {
    PointSet P;
    P.d = gens.d;
    P.b = gens.b;
    P.m = gens.m;
    P.N = gens.point_count();
    P.exact = true;
    P.num.assign((size_t)P.N * P.d, 0);

    const uint32_t b = gens.b, m = gens.m, d = gens.d;
    std::vector<uint32_t> digits(m, 0);
    std::vector<uint32_t> y(m);
    for (uint64_t n = 0; n < P.N; ++n) {
        uint64_t nn = n;
        for (uint32_t i = 0; i < m; ++i) { digits[i] = (uint32_t)(nn % b); nn /= b; }
        for (uint32_t j = 0; j < d; ++j) {
            for (uint32_t r = 0; r < m; ++r) {
                uint64_t s = 0;
                for (uint32_t i = 0; i < m; ++i)
                    s += (uint64_t)gens.C[j].at(r, i) * digits[i];
                y[r] = (uint32_t)(s % b);
            }
            int64_t q = 0;
            for (uint32_t r = 0; r < m; ++r) q = q * b + y[r];
            P.num[n * d + j] = q;
        }
    }

    P.rebuild_float_cache();
    return P;
}

// ------------------------------------------------------------ digital shift

DigitalShift random_shift(uint32_t b, uint32_t m, uint32_t d, uint64_t N,
                          uint64_t seed, bool with_deltas) {
    DigitalShift s;
    s.b = b; s.m = m; s.d = d; s.seed = seed;
    Rng rng(seed);
    s.sigma.resize((size_t)d * m);
    for (auto& v : s.sigma) v = (uint32_t)rng.below(b);
    if (with_deltas) {
        double cell = std::pow((double)b, -(double)m);
        s.deltas.resize((size_t)N * d);
        for (auto& v : s.deltas) v = rng.uniform() * cell;
    }
    return s;
}

int64_t shift_numerator(int64_t q, uint32_t b, uint32_t m, const uint32_t* sigma) {
    // digit of weight b^-(i+1) of q/b^m is (q / b^(m-1-i)) % b
    int64_t out = 0;
    int64_t pw = 1;
    for (uint32_t i = 1; i < m; ++i) pw *= b;  // b^(m-1)
    int64_t rem = q;
    for (uint32_t i = 0; i < m; ++i) {
        uint32_t digit = (uint32_t)(rem / pw);
        rem %= pw;
        uint32_t shifted = (digit + sigma[i]) % b;
        out = out * b + shifted;
        pw /= b;
    }
    return out;
}

PointSet apply_shift(const PointSet& P, const DigitalShift& s) {
    if (!P.exact) throw std::invalid_argument("digital shift needs an exact grid set");
    if (s.b != P.b || s.m != P.m || s.d != P.d)
        throw std::invalid_argument("shift parameters do not match point set");
    if (!s.deltas.empty() && s.deltas.size() != (size_t)P.N * P.d)
        throw std::invalid_argument("delta array size mismatch");

    PointSet Q = P;
    for (uint64_t n = 0; n < P.N; ++n)
        for (uint32_t j = 0; j < P.d; ++j)
            Q.num[n * P.d + j] =
                shift_numerator(P.num[n * P.d + j], P.b, P.m, &s.sigma[(size_t)j * P.m]);
    if (!s.deltas.empty()) {
        // per-point offsets leave the grid: mark non-exact, keep floats only
        Q.offset = s.deltas;
        Q.rebuild_float_cache();
        Q.exact = false;
        Q.num.clear();
        Q.offset.clear();
    } else {
        Q.offset.clear();
        Q.rebuild_float_cache();
    }
    return Q;
}

PointSet symmetrize(const PointSet& P) {
    if (P.d != 2) throw std::invalid_argument("symmetrize needs dimension 2");
    if (!P.exact || P.b != 2 || P.has_offsets())
        throw std::invalid_argument("symmetrize needs an exact base-2 grid set");
    PointSet Q;
    Q.d = 2; Q.b = 2; Q.m = P.m; Q.exact = true;
    Q.N = 2 * P.N;
    Q.num.resize((size_t)Q.N * 2);
    const int64_t top = ((int64_t)1 << P.m) - 1;
    for (uint64_t n = 0; n < P.N; ++n) {
        Q.num[n * 2 + 0] = P.num[n * 2 + 0];
        Q.num[n * 2 + 1] = P.num[n * 2 + 1];
        Q.num[(P.N + n) * 2 + 0] = P.num[n * 2 + 0];
        Q.num[(P.N + n) * 2 + 1] = top - P.num[n * 2 + 1];
    }
    Q.rebuild_float_cache();
    return Q;
}

// ---------------------------------------------------------------- file I/O

void write_point_set(const std::string& path, const PointSet& P) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "# d=" << P.d << " N=" << P.N << " base=" << P.b << " m=" << P.m
        << " exact=" << (P.exact ? 1 : 0) << "\n";
    char buf[64];
    for (uint64_t n = 0; n < P.N; ++n) {
        for (uint32_t j = 0; j < P.d; ++j) {
            if (j) out << ' ';
            if (P.exact) {
                out << P.num[n * P.d + j];
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", P.xs[n * P.d + j]);
                out << buf;
            }
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PointSet read_point_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string header;
    std::getline(in, header);
    PointSet P;
    unsigned d = 0, b = 0, m = 0, exact = 0;
    unsigned long long N = 0;
    if (std::sscanf(header.c_str(), "# d=%u N=%llu base=%u m=%u exact=%u",
                    &d, &N, &b, &m, &exact) != 5)
        throw std::runtime_error("bad point set header: " + header);
    P.d = d; P.N = N; P.b = b; P.m = m; P.exact = exact != 0;
    if (P.exact) {
        P.num.resize((size_t)P.N * P.d);
        for (auto& q : P.num)
            if (!(in >> q)) throw std::runtime_error("truncated point set file");
        P.rebuild_float_cache();
    } else {
        P.xs.resize((size_t)P.N * P.d);
        for (auto& x : P.xs)
            if (!(in >> x)) throw std::runtime_error("truncated point set file");
    }
    return P;
}

}  // namespace qmc
