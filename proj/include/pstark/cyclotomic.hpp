#pragma once

// Exact arithmetic in Q(zeta_m): rational coefficient vectors in the power
// basis 1, zeta, ..., zeta^(phi(m)-1) reduced modulo the m-th cyclotomic
// polynomial. Everything here is exact; no precision is involved.

#include <map>
#include <vector>

#include "intops.hpp"

namespace pstark {

namespace detail {

// exact division of integer polynomials (quotient must be integral)
inline std::vector<BigInt> poly_divexact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    long dd = static_cast<long>(den.size()) - 1;
    for (long i = static_cast<long>(num.size()) - 1; i >= dd; --i) {
        if (num[i] == 0) continue;
        BigInt c = num[i] / den[dd];
        if (c * den[dd] != num[i]) throw std::logic_error("poly_divexact: not exact");
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("poly_divexact: nonzero remainder");
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    return q;
}

inline std::vector<BigInt> poly_mul_int(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace detail

// monic Phi_m as integer coefficient vector (index = power)
inline const std::vector<BigInt>& cyclotomic_polynomial(long m) {
    static std::map<long, std::vector<BigInt>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}
    std::vector<BigInt> num{1}, den{1};
    for (long d = 1; d <= m; ++d) {
        if (m % d) continue;
        long q = m / d, mu = 1;
        for (auto [pr, e] : factorize(q)) {
            if (e > 1) { mu = 0; break; }
            mu = -mu;
        }
        if (mu == 0) continue;
        std::vector<BigInt> xd(d + 1, 0);
        xd[0] = -1;
        xd[d] = 1;
        (mu == 1 ? num : den) = detail::poly_mul_int(mu == 1 ? num : den, xd);
    }
    auto phi = detail::poly_divexact(num, den);
    return cache.emplace(m, std::move(phi)).first->second;
}

class CyclotomicNumber {
public:
    CyclotomicNumber() : m_(1), c_(1, BigRat(0)) {}

    explicit CyclotomicNumber(long m) : m_(m), c_(degree(m), BigRat(0)) {}

    static long degree(long m) { return static_cast<long>(cyclotomic_polynomial(m).size()) - 1; }

    static CyclotomicNumber from_rational(const BigRat& r, long m = 1) {
        CyclotomicNumber x(m);
        x.c_[0] = r;
        return x;
    }

    // zeta_m^k
    static CyclotomicNumber root_power(long m, long k) {
        k = ((k % m) + m) % m;
        long d = degree(m);
        CyclotomicNumber x(m);
        if (k < d) {
            x.c_[k] = 1;
            return x;
        }
        // reduce x^k mod Phi_m by repeated substitution
        std::vector<BigRat> poly(k + 1, BigRat(0));
        poly[k] = 1;
        x.c_ = reduce(std::move(poly), m);
        return x;
    }

    long order() const { return m_; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    BigRat rational_part() const {
        if (!is_rational()) throw std::domain_error("rational_part: value is not rational");
        return c_[0];
    }

    // embed into Q(zeta_M) for m | M
    CyclotomicNumber promote(long M) const {
        if (M == m_) return *this;
        if (M % m_) throw std::invalid_argument("promote: order must be a multiple");
        long s = M / m_;
        std::vector<BigRat> poly(static_cast<size_t>(degree(m_) - 1) * s + 1, BigRat(0));
        if (c_.empty()) poly.assign(1, BigRat(0));
        for (size_t j = 0; j < c_.size(); ++j) poly[j * s] = c_[j];
        CyclotomicNumber x(M);
        x.c_ = reduce(std::move(poly), M);
        return x;
    }

    // Galois action zeta -> zeta^u, gcd(u, m) = 1
    CyclotomicNumber galois(long u) const {
        u = ((u % m_) + m_) % m_;
        if (std::gcd(u, m_) != 1) throw std::invalid_argument("galois: u not coprime to order");
        std::vector<BigRat> poly(static_cast<size_t>(m_), BigRat(0));
        for (size_t j = 0; j < c_.size(); ++j) poly[(j * u) % m_] += c_[j];
        CyclotomicNumber x(m_);
        x.c_ = reduce(std::move(poly), m_);
        return x;
    }

    CyclotomicNumber conj() const { return galois(m_ - 1); }

    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        auto [x, y] = common(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        auto [x, y] = common(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        auto [x, y] = common(a, b);
        std::vector<BigRat> poly(x.c_.size() + y.c_.size() - 1, BigRat(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) poly[i + j] += x.c_[i] * y.c_[j];
        }
        CyclotomicNumber z(x.m_);
        z.c_ = reduce(std::move(poly), x.m_);
        return z;
    }
    friend CyclotomicNumber operator*(const BigRat& s, const CyclotomicNumber& a) {
        CyclotomicNumber x = a;
        for (auto& v : x.c_) v *= s;
        return x;
    }
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return (a - b).is_zero();
    }

private:
    static std::vector<BigRat> reduce(std::vector<BigRat> poly, long m) {
        const auto& phi = cyclotomic_polynomial(m);
        long d = static_cast<long>(phi.size()) - 1;
        for (long i = static_cast<long>(poly.size()) - 1; i >= d; --i) {
            if (poly[i] == 0) continue;
            BigRat c = poly[i];
            for (long j = 0; j <= d; ++j) poly[i - d + j] -= c * BigRat(phi[j]);
        }
        poly.resize(d, BigRat(0));
        if (poly.empty()) poly.assign(1, BigRat(0));
        return poly;
    }

    static std::pair<CyclotomicNumber, CyclotomicNumber> common(const CyclotomicNumber& a,
                                                                const CyclotomicNumber& b) {
        long M = std::lcm(a.m_, b.m_);
        return {a.promote(M), b.promote(M)};
    }

    long m_;
    std::vector<BigRat> c_;
};

}  // namespace pstark
