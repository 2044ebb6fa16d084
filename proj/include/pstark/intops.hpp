#pragma once

// Exact integer/rational helpers shared across the library.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pstark {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, long e) {
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline BigInt ppow(long p, long e) { return ipow(BigInt(p), e); }

inline BigInt mod_reduce(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& m) {
    return mod_reduce(a * b, m);
}

inline BigInt powmod(BigInt base, BigInt e, const BigInt& m) {
    if (e < 0) throw std::invalid_argument("powmod: negative exponent");
    base = mod_reduce(base, m);
    BigInt r = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

// extended gcd: returns g, sets x,y with a*x + b*y = g
inline BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return (a < 0) ? BigInt(-a) : a;
    }
    BigInt x1, y1;
    BigInt g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline BigInt invmod(const BigInt& a, const BigInt& m) {
    BigInt x, y;
    BigInt g = ext_gcd(mod_reduce(a, m), m, x, y);
    if (g != 1) throw std::domain_error("invmod: not invertible");
    return mod_reduce(x, m);
}

inline long vp(BigInt n, long p) {
    if (n == 0) throw std::invalid_argument("vp: zero input");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long vp_rat(const BigRat& r, long p) {
    if (r == 0) throw std::invalid_argument("vp_rat: zero input");
    return vp(numerator(r), p) - vp(denominator(r), p);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// trial-division factorization, smallest first, with multiplicity
inline std::vector<std::pair<long, long>> factorize(long n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<long, long>> out;
    for (long d = 2; (BigInt)d * d <= n; ++d) {
        if (n % d) continue;
        long e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline long euler_phi(long n) {
    long r = 1;
    for (auto [q, e] : factorize(n)) {
        long qe = 1;
        for (long i = 0; i + 1 < e; ++i) qe *= q;
        r *= qe * (q - 1);
    }
    return r;
}

inline long mul_order_mod(long a, long m) {
    if (std::gcd(a % m + m, m) != 1) throw std::invalid_argument("mul_order_mod: not a unit");
    BigInt x = mod_reduce(a, m);
    long ord = 1;
    BigInt y = x;
    while (y != 1) {
        y = y * x % m;
        ++ord;
        if (ord > m) throw std::logic_error("mul_order_mod: order overflow");
    }
    return ord;
}

// Kronecker symbol (a|n), full generality for n != 0
inline int kronecker(BigInt a, BigInt n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    long v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2) {
        BigInt am8 = mod_reduce(a, 8);
        if (am8 == 3 || am8 == 5) sign = -sign;
    }
    a = mod_reduce(a, n);
    // Jacobi on odd positive n
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            BigInt nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a = a % n;
    }
    return (n == 1) ? sign : 0;
}

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Bernoulli numbers B_0..B_n, convention B_1 = -1/2 (t/(e^t - 1))
inline std::vector<BigRat> bernoulli_numbers(long n) {
    std::vector<BigRat> A(n + 1), B(n + 1);
    for (long m = 0; m <= n; ++m) {
        A[m] = BigRat(1, m + 1);
        for (long j = m; j >= 1; --j) A[j - 1] = BigRat(j) * (A[j - 1] - A[j]);
        B[m] = A[0];
    }
    if (n >= 1) B[1] = BigRat(-1, 2);
    return B;
}

// Bernoulli polynomial B_n(x), exact
inline BigRat bernoulli_poly(long n, const BigRat& x, const std::vector<BigRat>& B) {
    BigRat acc = 0, xp = 1;
    // B_n(x) = sum_j C(n,j) B_j x^(n-j); accumulate from j = n down so powers build up
    for (long j = n; j >= 0; --j) {
        acc += BigRat(binomial(n, j)) * B[j] * xp;
        xp *= x;
    }
    return acc;
}

inline BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const BigInt& n, BigInt& root) {
    if (n < 0) return false;
    root = isqrt_floor(n);
    return root * root == n;
}

}  // namespace pstark
