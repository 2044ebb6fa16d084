#pragma once

// Dirichlet characters of (Z/N)^* with exact cyclotomic values, generalized
// Bernoulli numbers, and the classical value L(chi, 0) = -B_{1,chi}.

#include <algorithm>
#include <map>
#include <vector>

#include "cyclotomic.hpp"

namespace pstark {

// (Z/N)^* as a product of cyclic factors (CRT decomposition, 2^e split off)
struct UnitGroup {
    long N = 1;
    std::vector<long> gens;
    std::vector<long> orders;
    std::map<long, std::vector<long>> dlog;  // residue -> exponent tuple

    long rank() const { return static_cast<long>(gens.size()); }
};

namespace detail {

inline long primitive_root_mod_ppow(long q, long e) {
    long qe = 1;
    for (long i = 0; i < e; ++i) qe *= q;
    long target = qe / q * (q - 1);
    long g1 = 0;
    for (long g = 2; g < q; ++g)
        if (mul_order_mod(g, q) == q - 1) { g1 = g; break; }
    if (q == 3 && e == 1) g1 = 2;
    if (g1 == 0) g1 = q == 2 ? 1 : 2;
    if (e == 1) return g1;
    if (mul_order_mod(g1, qe) == target) return g1;
    return g1 + q;  // standard fix-up; verified by caller
}

}  // namespace detail

inline const UnitGroup& unit_group(long N) {
    static std::map<long, UnitGroup> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    UnitGroup G;
    G.N = N;
    for (auto [q, e] : factorize(N)) {
        long qe = 1;
        for (long i = 0; i < e; ++i) qe *= q;
        long cof = N / qe;
        // CRT lift: x mod qe, 1 mod cof
        auto lift = [&](long x) {
            if (cof == 1) return ((x % qe) + qe) % qe;
            BigInt res = mod_reduce(BigInt(x), qe) * cof % N * invmod(cof, qe) % N +
                         BigInt(qe) * invmod(qe, cof) % N;
            return static_cast<long>(mod_reduce(res, N));
        };
        if (q == 2) {
            if (e == 1) continue;
            G.gens.push_back(lift(qe - 1));
            G.orders.push_back(2);
            if (e >= 3) {
                G.gens.push_back(lift(5));
                long o = qe / 4;
                G.orders.push_back(o);
            }
        } else {
            long g = detail::primitive_root_mod_ppow(q, e);
            long ord = qe / q * (q - 1);
            if (mul_order_mod(g, qe) != ord) throw std::logic_error("unit_group: bad primitive root");
            G.gens.push_back(lift(g));
            G.orders.push_back(ord);
        }
    }
    // discrete log table by full enumeration of exponent tuples
    std::vector<long> t(G.gens.size(), 0);
    while (true) {
        BigInt v = 1;
        for (size_t i = 0; i < G.gens.size(); ++i) v = v * powmod(G.gens[i], t[i], N) % N;
        G.dlog[static_cast<long>(mod_reduce(v, N))] = t;
        size_t i = 0;
        for (; i < t.size(); ++i) {
            if (++t[i] < G.orders[i]) break;
            t[i] = 0;
        }
        if (i == t.size()) break;
    }
    if (static_cast<long>(G.dlog.size()) != euler_phi(N))
        throw std::logic_error("unit_group: enumeration size mismatch");
    return cache.emplace(N, std::move(G)).first->second;
}

class DirichletCharacter {
public:
    // chi determined by exponents chi(gen_i) = zeta_L^(L/orders_i * t_i)
    DirichletCharacter(long N, std::vector<long> tuple) : N_(N), tuple_(std::move(tuple)) {
        const UnitGroup& G = unit_group(N);
        long L = 1;
        for (long o : G.orders) L = std::lcm(L, o);
        if (L == 0) L = 1;
        exps_.assign(N, -1);
        long ordall = 1;
        for (auto& [a, dl] : G.dlog) {
            long e = 0;
            for (size_t i = 0; i < dl.size(); ++i)
                e = (e + tuple_[i] * (L / G.orders[i]) % L * dl[i]) % L;
            exps_[a % N] = e;
            if (e) ordall = std::lcm(ordall, L / std::gcd(L, e));
        }
        if (N == 1) exps_.assign(1, 0);
        order_ = ordall;
        // renormalize exponents to the character order
        for (auto& e : exps_)
            if (e >= 0) e = e / (L / order_);
        conductor_ = compute_conductor();
        long em1 = value_exp(N_ == 1 ? 0 : N_ - 1);  // chi(-1) exponent, 0 or order/2
        odd_ = (order_ % 2 == 0 && em1 == order_ / 2);
    }

    long modulus() const { return N_; }
    long order() const { return order_; }
    long conductor() const { return conductor_; }
    bool odd() const { return odd_; }
    bool is_trivial() const { return order_ == 1; }

    // exponent e with chi(a) = zeta_order^e, or -1 if gcd(a, N) > 1
    long value_exp(long a) const {
        a = ((a % N_) + N_) % N_;
        if (N_ == 1) return 0;
        return exps_[a];
    }

    CyclotomicNumber value(long a) const {
        long e = value_exp(a);
        if (e < 0) return CyclotomicNumber::from_rational(BigRat(0), order_);
        return CyclotomicNumber::root_power(order_, e);
    }

    // value of the attached primitive character at a (0 if gcd(a, cond) > 1)
    CyclotomicNumber primitive_value(long a) const {
        long e = primitive_value_exp(a);
        if (e < 0) return CyclotomicNumber::from_rational(BigRat(0), order_);
        return CyclotomicNumber::root_power(order_, e);
    }

    long primitive_value_exp(long a) const {
        a = ((a % conductor_) + conductor_) % conductor_;
        if (conductor_ == 1) return 0;
        if (std::gcd(a, conductor_) != 1) return -1;
        // find b ≡ a mod cond with gcd(b, N) = 1
        for (long b = a; b <= a + 2 * N_ * conductor_; b += conductor_) {
            if (b % N_ != 0 && std::gcd(b % N_, N_) == 1) return value_exp(b % N_);
        }
        throw std::logic_error("primitive_value: no coprime lift found");
    }

    // inverse character
    DirichletCharacter inverse() const {
        const UnitGroup& G = unit_group(N_);
        std::vector<long> t = tuple_;
        for (size_t i = 0; i < t.size(); ++i) t[i] = (G.orders[i] - t[i]) % G.orders[i];
        return DirichletCharacter(N_, t);
    }

    bool operator==(const DirichletCharacter& o) const {
        return N_ == o.N_ && exps_ == o.exps_;
    }

private:
    long compute_conductor() const {
        for (long c = 1; c <= N_; ++c) {
            if (N_ % c) continue;
            bool ok = true;
            for (long a = 1; a <= N_ && ok; ++a) {
                if (std::gcd(a, N_) != 1) continue;
                if (a % c == 1 % c && value_exp(a) != 0) ok = false;
            }
            if (ok) return c;
        }
        return N_;
    }

    long N_;
    std::vector<long> tuple_;
    std::vector<long> exps_;
    long order_ = 1;
    long conductor_ = 1;
    bool odd_ = false;
};

inline std::vector<DirichletCharacter> enumerate_characters(long N) {
    const UnitGroup& G = unit_group(N);
    std::vector<DirichletCharacter> out;
    std::vector<long> t(G.gens.size(), 0);
    while (true) {
        out.emplace_back(N, t);
        size_t i = 0;
        for (; i < t.size(); ++i) {
            if (++t[i] < G.orders[i]) break;
            t[i] = 0;
        }
        if (i == t.size()) break;
        if (G.gens.empty()) break;
    }
    return out;
}

// B_{1,chi} = sum_{a=1}^{N} chi(a) (a/N), exact
inline CyclotomicNumber bernoulli_b1(const DirichletCharacter& chi) {
    long N = chi.modulus();
    CyclotomicNumber acc = CyclotomicNumber::from_rational(BigRat(0), chi.order());
    for (long a = 1; a <= N; ++a) {
        long e = chi.value_exp(a % N);
        if (e < 0) continue;
        acc = acc + BigRat(a, N) * CyclotomicNumber::root_power(chi.order(), e);
    }
    return acc;
}

// B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N), exact
inline CyclotomicNumber bernoulli_bk(const DirichletCharacter& chi, long k) {
    long N = chi.modulus();
    auto B = bernoulli_numbers(k);
    CyclotomicNumber acc = CyclotomicNumber::from_rational(BigRat(0), chi.order());
    for (long a = 1; a <= N; ++a) {
        long e = chi.value_exp(a % N);
        if (e < 0) continue;
        BigRat coeff = bernoulli_poly(k, BigRat(a, N), B);
        acc = acc + coeff * CyclotomicNumber::root_power(chi.order(), e);
    }
    BigRat scale = BigRat(ipow(BigInt(N), k - 1));
    return scale * acc;
}

// L(chi, 0) = -B_{1,chi} for odd chi; 0 for even nontrivial chi
inline CyclotomicNumber classical_l_at_zero(const DirichletCharacter& chi) {
    if (chi.is_trivial()) throw std::invalid_argument("classical_l_at_zero: nontrivial chi required");
    if (!chi.odd()) return CyclotomicNumber::from_rational(BigRat(0), chi.order());
    return BigRat(-1) * bernoulli_b1(chi);
}

}  // namespace pstark
