#pragma once

// Morita p-adic Gamma: Gamma_p(m) = (-1)^m * prod{0 < j < m, p !| j} for
// positive integers m, extended to Z_p by continuity. Two evaluation paths:
//  - direct product over a representative (the reference oracle, cost O(p^M'))
//  - truncated Mahler expansion (finite differences of Gamma_p at 0..K),
//    used when the representative is large; cross-checked against the
//    product path in the test suite.
//
// Continuity margin: a representative mod p^(M+1) (p >= 5) resp. p^(M+2)
// (p = 3) pins the value mod p^M; the independence-of-representative tests
// validate these margins.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "padic.hpp"

namespace pstark {

inline long gamma_margin(long p) { return p == 3 ? 2 : 1; }

// m(z): the unique integer 0 < m <= p congruent to z mod p
inline long reflection_m(const PadicNumber& z) {
    if (!z.is_zero() && z.valuation() < 0) throw std::domain_error("reflection_m: not in Z_p");
    long p = z.prime();
    BigInt r = z.is_zero() ? BigInt(0)
                           : mod_reduce(z.unit_digits() * ppow(p, z.valuation()), p);
    long m = static_cast<long>(r);
    return m == 0 ? p : m;
}

// direct product at a nonnegative integer representative, result mod p^M
inline BigInt gamma_p_product(const BigInt& m, long p, long M) {
    if (m < 0) throw std::invalid_argument("gamma_p_product: negative representative");
    BigInt mod = ppow(p, M);
    BigInt acc = 1;
    if (mod < (BigInt(1) << 62) && m < (BigInt(1) << 62)) {
        unsigned long long mm = static_cast<unsigned long long>(m);
        unsigned long long md = static_cast<unsigned long long>(mod);
        unsigned long long a = 1;
        for (unsigned long long j = 1; j < mm; ++j)
            if (j % p != 0) a = static_cast<unsigned long long>((unsigned __int128)a * j % md);
        acc = a;
    } else {
        for (BigInt j = 1; j < m; ++j)
            if (j % p != 0) acc = acc * j % mod;
    }
    if (m % 2 != 0) acc = mod_reduce(mod - acc, mod);
    return mod_reduce(acc, mod);
}

class GammaTable {
public:
    GammaTable(long p, long M) : p_(p), M_(M) {
        long K = (M + 2) * p * p / (p - 1) + 2 * p;
        while (true) {
            build(K);
            if (tail_certified()) break;
            K += 2 * p;
        }
    }

    long prime() const { return p_; }
    long target_prec() const { return M_; }

    // x in Z_p; output mod p^min(M, x.abs - margin)
    PadicNumber eval(const PadicNumber& x) const {
        if (!x.is_zero() && x.valuation() < 0) throw std::domain_error("gamma eval: not in Z_p");
        long margin = gamma_margin(p_);
        long out = std::min<long>(M_, x.abs_prec() - margin);
        if (out < 1) throw std::domain_error("gamma eval: insufficient input precision");
        BigInt bigmod = ppow(p_, W2_);
        BigInt r = x.is_zero() ? BigInt(0) : x.representative(std::min<long>(x.abs_prec(), W2_));
        BigInt acc = coeff_[0];
        BigInt num = 1;  // r (r-1) ... (r-k+1) mod p^W2
        BigInt kfact_unit = 1;
        long kfact_v = 0;
        BigInt modW = ppow(p_, W_);
        for (long k = 1; k < static_cast<long>(coeff_.size()); ++k) {
            num = num * mod_reduce(r - (k - 1), bigmod) % bigmod;
            long vk = (k % p_ == 0) ? vp(BigInt(k), p_) : 0;
            kfact_v += vk;
            kfact_unit = kfact_unit * (BigInt(k) / ppow(p_, vk)) % bigmod;
            // binom(r, k) = (num / p^kfact_v) * kfact_unit^{-1}, a p-adic integer
            BigInt nk = num / ppow(p_, kfact_v);
            BigInt binom = nk * invmod(kfact_unit, modW) % modW;
            acc = (acc + coeff_[k] * binom) % modW;
        }
        return PadicNumber::from_representative(p_, acc, out);
    }

private:
    void build(long K) {
        long vKfact = vp(factorial(K), p_);
        W_ = M_ + 2;
        W2_ = W_ + vKfact + 2;
        BigInt mod = ppow(p_, W_);
        // Gamma_p(0..K) by the functional equation
        std::vector<BigInt> g(K + 1);
        g[0] = 1;
        for (long n = 0; n < K; ++n) {
            BigInt f = (n % p_ == 0) ? BigInt(-1) : BigInt(-n);
            g[n + 1] = mod_reduce(g[n] * f, mod);
        }
        // forward differences: coeff_[k] = Delta^k Gamma_p(0)
        coeff_.assign(K + 1, 0);
        std::vector<BigInt> cur = g;
        for (long k = 0; k <= K; ++k) {
            coeff_[k] = cur[0];
            for (long i = 0; i + 1 < static_cast<long>(cur.size()); ++i)
                cur[i] = mod_reduce(cur[i + 1] - cur[i], mod);
            cur.pop_back();
        }
    }

    bool tail_certified() const {
        // trailing window of 2p coefficients must all have valuation > M
        long K = static_cast<long>(coeff_.size()) - 1;
        for (long k = std::max<long>(1, K - 2 * p_); k <= K; ++k) {
            if (coeff_[k] == 0) continue;
            if (vp(coeff_[k], p_) <= M_) return false;
        }
        return true;
    }

    long p_, M_, W_ = 0, W2_ = 0;
    std::vector<BigInt> coeff_;
};

namespace detail {

inline const GammaTable& gamma_table(long p, long M) {
    static std::mutex mu;
    static std::map<std::pair<long, long>, std::unique_ptr<GammaTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, M);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<GammaTable>(p, M)).first;
    return *it->second;
}

}  // namespace detail

// representative count above which the Mahler path takes over
inline constexpr long kGammaProductLimit = 2'000'000;

// Gamma_p(x) mod p^M for x in Z_p (valuation >= 0)
inline PadicNumber gamma_p(const PadicNumber& x, long M) {
    if (!x.is_zero() && x.valuation() < 0)
        throw std::domain_error("gamma_p: negative valuation input");
    long p = x.prime();
    if (p == 2) throw std::invalid_argument("gamma_p: odd p only");
    long margin = gamma_margin(p);
    long Mrep = std::min<long>(M + margin, x.abs_prec());
    long out = std::min<long>(M, Mrep - margin);
    if (out < 1) throw std::domain_error("gamma_p: insufficient input precision");
    BigInt rep = x.is_zero() ? BigInt(0) : x.representative(Mrep);
    if (rep <= kGammaProductLimit)
        return PadicNumber::from_representative(p, gamma_p_product(rep, p, Mrep), out);
    return detail::gamma_table(p, M).eval(x.truncate_abs(Mrep));
}

// Gamma_p at the image of a/N in Z_p; requires p !| N
inline PadicNumber gamma_p_rational(const BigInt& a, const BigInt& N, long p, long prec) {
    if (N % p == 0) throw std::invalid_argument("gamma_p_rational: denominator divisible by p");
    PadicNumber x = PadicNumber::from_rational(a, N, p, prec + gamma_margin(p));
    if (!x.is_zero() && x.valuation() < 0)
        throw std::domain_error("gamma_p_rational: not a p-adic integer");
    return gamma_p(x, prec);
}

}  // namespace pstark
