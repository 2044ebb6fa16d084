#pragma once

// Integer-lattice linear algebra: row Hermite normal form, Smith invariant
// factors, lattice membership, quotient invariants, and kernels of maps
// Z^k -> prod Z/m_j. Dimensions here are desk-scale; the algorithms are the
// classical elimination forms with smallest-pivot selection.

#include <optional>

#include "intops.hpp"

namespace pstark {

using IntMat = std::vector<std::vector<BigInt>>;

namespace lattice {

inline long rows(const IntMat& m) { return static_cast<long>(m.size()); }
inline long cols(const IntMat& m) { return m.empty() ? 0 : static_cast<long>(m[0].size()); }

// row-style HNF echelon basis of the row span; returns only nonzero rows.
// Pivots are positive; entries above a pivot are reduced mod the pivot.
inline IntMat hnf_row_basis(IntMat m) {
    long R = rows(m), C = cols(m);
    long r = 0;
    for (long c = 0; c < C && r < R; ++c) {
        // eliminate below row r in column c by gcd row operations
        while (true) {
            long piv = -1;
            for (long i = r; i < R; ++i)
                if (m[i][c] != 0 && (piv < 0 || boost::multiprecision::abs(m[i][c]) <
                                                    boost::multiprecision::abs(m[piv][c])))
                    piv = i;
            if (piv < 0) break;
            std::swap(m[r], m[piv]);
            bool clean = true;
            for (long i = r + 1; i < R; ++i) {
                if (m[i][c] == 0) continue;
                BigInt qq = m[i][c] / m[r][c];
                for (long j = 0; j < C; ++j) m[i][j] -= qq * m[r][j];
                if (m[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (long j = 0; j < C; ++j) m[r][j] = -m[r][j];
        for (long i = 0; i < r; ++i) {
            BigInt qq = m[i][c] / m[r][c];
            if (m[i][c] - qq * m[r][c] < 0) qq -= 1;  // keep entries in [0, pivot)
            if (qq != 0)
                for (long j = 0; j < C; ++j) m[i][j] -= qq * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

// solve x * basis = v over Z for an echelon row basis; nullopt if v is not in the lattice
inline std::optional<std::vector<BigInt>> lattice_solve(const IntMat& basis,
                                                        std::vector<BigInt> v) {
    long R = rows(basis), C = cols(basis);
    std::vector<BigInt> x(R, 0);
    for (long i = 0; i < R; ++i) {
        long c = 0;
        while (c < C && basis[i][c] == 0) ++c;
        if (c == C) continue;
        if (v[c] % basis[i][c] != 0) {
            // fall through: maybe a later row has an earlier pivot (echelon: no)
            return std::nullopt;
        }
        BigInt qq = v[c] / basis[i][c];
        x[i] = qq;
        for (long j = 0; j < C; ++j) v[j] -= qq * basis[i][j];
    }
    for (const auto& e : v)
        if (e != 0) return std::nullopt;
    return x;
}

inline bool lattice_contains(const IntMat& basis, const std::vector<BigInt>& v) {
    return lattice_solve(basis, v).has_value();
}

// Smith normal form invariant factors d_1 | d_2 | ... (nonzero diagonal only)
inline std::vector<BigInt> snf_invariants(IntMat m) {
    long R = rows(m), C = cols(m);
    long t = 0;
    std::vector<BigInt> diag;
    while (t < R && t < C) {
        long pi = -1, pj = -1;
        for (long i = t; i < R; ++i)
            for (long j = t; j < C; ++j)
                if (m[i][j] != 0 &&
                    (pi < 0 || boost::multiprecision::abs(m[i][j]) < boost::multiprecision::abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        std::swap(m[t], m[pi]);
        for (long i = 0; i < R; ++i) std::swap(m[i][t], m[i][pj]);
        bool dirty = false;
        for (long i = t + 1; i < R; ++i) {
            if (m[i][t] == 0) continue;
            BigInt qq = m[i][t] / m[t][t];
            for (long j = t; j < C; ++j) m[i][j] -= qq * m[t][j];
            if (m[i][t] != 0) dirty = true;
        }
        for (long j = t + 1; j < C; ++j) {
            if (m[t][j] == 0) continue;
            BigInt qq = m[t][j] / m[t][t];
            for (long i = t; i < R; ++i) m[i][j] -= qq * m[i][t];
            if (m[t][j] != 0) dirty = true;
        }
        if (dirty) continue;
        // ensure divisibility of the remaining block
        bool fixed = true;
        for (long i = t + 1; i < R && fixed; ++i)
            for (long j = t + 1; j < C && fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (long jj = t; jj < C; ++jj) m[t][jj] += m[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;
        if (m[t][t] < 0) m[t][t] = -m[t][t];
        diag.push_back(m[t][t]);
        ++t;
    }
    return diag;
}

// invariant factors of L1 / L2 for lattices L2 c L1 of equal rank,
// given a row basis of L1 and generators of L2
inline std::vector<BigInt> quotient_invariants(const IntMat& l1_basis, const IntMat& l2_gens) {
    IntMat coords;
    for (const auto& g : l2_gens) {
        auto x = lattice_solve(l1_basis, g);
        if (!x) throw std::invalid_argument("quotient_invariants: L2 not inside L1");
        coords.push_back(*x);
    }
    auto inv = snf_invariants(coords);
    if (static_cast<long>(inv.size()) != rows(l1_basis))
        throw std::invalid_argument("quotient_invariants: quotient is infinite");
    std::vector<BigInt> out;
    for (const auto& d : inv)
        if (d != 1) out.push_back(d);
    return out;
}

// kernel lattice of x -> x*A mod (m_1, ..., m_t):  A is k x t
inline IntMat kernel_mod(const IntMat& A, const std::vector<BigInt>& moduli) {
    long k = rows(A), t = cols(A);
    if (t != static_cast<long>(moduli.size())) throw std::invalid_argument("kernel_mod: size mismatch");
    // rows of [A | I_k] and [diag(m) | 0]; HNF; rows with zero first block
    // project to the kernel
    IntMat big;
    for (long i = 0; i < k; ++i) {
        std::vector<BigInt> row(t + k, 0);
        for (long j = 0; j < t; ++j) row[j] = A[i][j];
        row[t + i] = 1;
        big.push_back(row);
    }
    for (long j = 0; j < t; ++j) {
        std::vector<BigInt> row(t + k, 0);
        row[j] = moduli[j];
        big.push_back(row);
    }
    auto h = hnf_row_basis(big);
    IntMat out;
    for (const auto& row : h) {
        bool zero_first = true;
        for (long j = 0; j < t; ++j)
            if (row[j] != 0) zero_first = false;
        if (!zero_first) continue;
        out.push_back(std::vector<BigInt>(row.begin() + t, row.end()));
    }
    return hnf_row_basis(out);
}

// sign of an integer determinant (row expansion after HNF-style elimination)
inline int det_sign(IntMat m) {
    long n = rows(m);
    if (n == 0) return 1;
    if (cols(m) != n) throw std::invalid_argument("det_sign: square matrix required");
    int sign = 1;
    for (long c = 0; c < n; ++c) {
        while (true) {
            long piv = -1;
            for (long i = c; i < n; ++i)
                if (m[i][c] != 0 && (piv < 0 || boost::multiprecision::abs(m[i][c]) <
                                                    boost::multiprecision::abs(m[piv][c])))
                    piv = i;
            if (piv < 0) return 0;
            if (piv != c) {
                std::swap(m[c], m[piv]);
                sign = -sign;
            }
            bool clean = true;
            for (long i = c + 1; i < n; ++i) {
                if (m[i][c] == 0) continue;
                BigInt qq = m[i][c] / m[c][c];
                for (long j = c; j < n; ++j) m[i][j] -= qq * m[c][j];
                if (m[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[c][c] < 0) sign = -sign;
    }
    return sign;
}

}  // namespace lattice

}  // namespace pstark
