#pragma once

// Exact calculus in Q[G] for finite abelian G: augmentation-ideal powers
// I^n, the graded quotients I^n/I^(n+1) via Smith normal form, and exact
// lattice membership tests.

#include <string>

#include "lattice.hpp"

namespace pstark {

// finite abelian group with explicit multiplication table; built either from
// cyclic invariant factors or as a quotient of (Z/N)^* by a subgroup
struct FiniteAbelianGroup {
    long n = 1;                          // order
    std::vector<std::vector<long>> mul;  // index table
    std::vector<long> inv;
    long id = 0;
    std::vector<std::string> labels;
    std::vector<long> factors;  // invariant factors d_1 | d_2 | ... (when known)

    static FiniteAbelianGroup from_factors(std::vector<long> ds) {
        // canonicalize to a divisibility chain
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < ds.size(); ++i)
                for (size_t j = i + 1; j < ds.size(); ++j)
                    if (ds[j] % ds[i] != 0) {
                        long g = std::gcd(ds[i], ds[j]);
                        long l = ds[i] / g * ds[j];
                        ds[i] = g;
                        ds[j] = l;
                        changed = true;
                    }
        }
        std::erase(ds, 1L);
        if (ds.empty()) ds = {1};
        FiniteAbelianGroup G;
        G.factors = ds;
        G.n = 1;
        for (long d : ds) G.n *= d;
        auto coords = [&](long idx) {
            std::vector<long> c(ds.size());
            for (size_t i = 0; i < ds.size(); ++i) {
                c[i] = idx % ds[i];
                idx /= ds[i];
            }
            return c;
        };
        auto index = [&](const std::vector<long>& c) {
            long idx = 0;
            for (size_t i = ds.size(); i-- > 0;) idx = idx * ds[i] + c[i];
            return idx;
        };
        G.mul.assign(G.n, std::vector<long>(G.n));
        G.inv.assign(G.n, 0);
        G.labels.resize(G.n);
        for (long i = 0; i < G.n; ++i) {
            auto ci = coords(i);
            std::string lab = "(";
            for (size_t k = 0; k < ci.size(); ++k) lab += std::to_string(ci[k]) + (k + 1 < ci.size() ? "," : "");
            G.labels[i] = lab + ")";
            std::vector<long> inv_c(ci.size());
            for (size_t k = 0; k < ci.size(); ++k) inv_c[k] = (ds[k] - ci[k]) % ds[k];
            G.inv[i] = index(inv_c);
            for (long j = 0; j < G.n; ++j) {
                auto cj = coords(j);
                std::vector<long> s(ci.size());
                for (size_t k = 0; k < ci.size(); ++k) s[k] = (ci[k] + cj[k]) % ds[k];
                G.mul[i][j] = index(s);
            }
        }
        return G;
    }
};

// element of Q[G]: exact rational coefficient per group index
struct GroupRingElement {
    const FiniteAbelianGroup* G = nullptr;
    std::vector<BigRat> c;

    explicit GroupRingElement(const FiniteAbelianGroup& g) : G(&g), c(g.n, BigRat(0)) {}

    static GroupRingElement basis(const FiniteAbelianGroup& g, long idx) {
        GroupRingElement x(g);
        x.c[idx] = 1;
        return x;
    }

    BigRat augmentation() const {
        BigRat s = 0;
        for (const auto& v : c) s += v;
        return s;
    }

    bool is_integral() const {
        for (const auto& v : c)
            if (denominator(v) != 1) return false;
        return true;
    }

    std::vector<BigInt> integer_coeffs() const {
        if (!is_integral()) throw std::domain_error("integer_coeffs: element is not integral");
        std::vector<BigInt> out;
        for (const auto& v : c) out.push_back(numerator(v));
        return out;
    }

    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }

    friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement x = a;
        for (long i = 0; i < a.G->n; ++i) x.c[i] += b.c[i];
        return x;
    }
    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement x = a;
        for (long i = 0; i < a.G->n; ++i) x.c[i] -= b.c[i];
        return x;
    }
    friend GroupRingElement operator*(const BigRat& s, const GroupRingElement& a) {
        GroupRingElement x = a;
        for (auto& v : x.c) v *= s;
        return x;
    }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement x(*a.G);
        for (long i = 0; i < a.G->n; ++i) {
            if (a.c[i] == 0) continue;
            for (long j = 0; j < a.G->n; ++j) {
                if (b.c[j] == 0) continue;
                x.c[a.G->mul[i][j]] += a.c[i] * b.c[j];
            }
        }
        return x;
    }
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return (a - b).is_zero();
    }
};

namespace detail {

inline void groupring_guardrail(const FiniteAbelianGroup& G, long n) {
    if (G.n > 100) throw std::domain_error("group ring: |G| beyond configured bound");
    if (n < 0 || n > 12) throw std::domain_error("group ring: ideal power beyond configured bound");
}

}  // namespace detail

// echelon row basis of the lattice I^n inside Z[G] (I^0 = Z[G])
inline IntMat ideal_power_basis(const FiniteAbelianGroup& G, long n) {
    detail::groupring_guardrail(G, n);
    IntMat basis;
    if (n == 0) {
        for (long i = 0; i < G.n; ++i) {
            std::vector<BigInt> row(G.n, 0);
            row[i] = 1;
            basis.push_back(row);
        }
        return basis;
    }
    // I^1: rows (g) - (1)
    for (long g = 0; g < G.n; ++g) {
        if (g == G.id) continue;
        std::vector<BigInt> row(G.n, 0);
        row[g] = 1;
        row[G.id] -= 1;
        basis.push_back(row);
    }
    basis = lattice::hnf_row_basis(basis);
    for (long k = 2; k <= n; ++k) {
        IntMat next;
        for (const auto& row : basis) {
            for (long g = 0; g < G.n; ++g) {
                if (g == G.id) continue;
                // row * ((g) - (1))
                std::vector<BigInt> prod(G.n, 0);
                for (long i = 0; i < G.n; ++i) {
                    if (row[i] == 0) continue;
                    prod[G.mul[i][g]] += row[i];
                    prod[i] -= row[i];
                }
                next.push_back(prod);
            }
        }
        basis = lattice::hnf_row_basis(next);
    }
    return basis;
}

// invariant factors of I^n / I^(n+1) (entries > 1, divisibility order)
inline std::vector<BigInt> ideal_power_structure(const FiniteAbelianGroup& G, long n) {
    if (n < 1) throw std::invalid_argument("ideal_power_structure: n >= 1 required");
    auto In = ideal_power_basis(G, n);
    auto In1 = ideal_power_basis(G, n + 1);
    return lattice::quotient_invariants(In, In1);
}

inline bool membership_in_ideal_power(const GroupRingElement& x, long n) {
    auto coeffs = x.integer_coeffs();
    auto basis = ideal_power_basis(*x.G, n);
    return lattice::lattice_contains(basis, coeffs);
}

}  // namespace pstark
