#pragma once

// Finite-precision arithmetic in Q_p with honest precision tracking.
//
// A nonzero value is stored as p^val * unit with 0 <= unit < p^rel, p !| unit;
// it is known modulo p^(val+rel) ("rel" digits of relative precision).
// Zero is a distinguished state: either exact (infinite valuation) or an
// O(p^A) cancellation remnant, which only certifies valuation >= A.
//
// Propagation rules:
//   add/sub : absolute precision min(abs_a, abs_b); cancellation raises the
//             valuation and shrinks relative precision accordingly.
//   mul/div : relative precision min(rel_a, rel_b).
// A result whose relative precision would drop to 0 degrades to the O(p^A)
// zero state; nothing is ever reported beyond what these rules allow.

#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>

#include "intops.hpp"

namespace pstark {

enum class ArithOp { add, sub, mul, div };

class PadicNumber {
public:
    static constexpr long kInfPrec = std::numeric_limits<long>::max() / 4;

    PadicNumber() = default;

    static PadicNumber zero(long p) { return zero_to(p, kInfPrec); }

    static PadicNumber zero_to(long p, long abs_prec) {
        check_prime(p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = true;
        x.abs_zero_ = abs_prec;
        return x;
    }

    // value known ≡ rep * p^shift mod p^(abs_prec), rep an integer
    static PadicNumber from_representative(long p, const BigInt& rep, long abs_prec, long shift = 0) {
        check_prime(p);
        if (abs_prec >= kInfPrec) throw std::invalid_argument("from_representative: absolute precision too large");
        BigInt r = mod_reduce(rep, ppow(p, std::max<long>(abs_prec - shift, 0)));
        if (abs_prec - shift <= 0 || r == 0) return zero_to(p, abs_prec);
        long v = vp(r, p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.val_ = shift + v;
        x.rel_ = abs_prec - x.val_;
        x.unit_ = mod_reduce(r / ppow(p, v), ppow(p, x.rel_));
        assert(x.rel_ >= 1);
        return x;
    }

    static PadicNumber from_integer(const BigInt& n, long p, long prec) {
        check_prec(prec);
        check_prime(p);
        if (n == 0) return zero(p);
        long v = vp(n, p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.val_ = v;
        x.rel_ = prec;
        x.unit_ = mod_reduce(n / ppow(p, v), ppow(p, prec));
        return x;
    }

    static PadicNumber from_rational(const BigInt& num, const BigInt& den, long p, long prec) {
        check_prec(prec);
        check_prime(p);
        if (den == 0) throw std::invalid_argument("from_rational: zero denominator");
        if (num == 0) return zero(p);
        long vn = vp(num, p), vd = vp(den, p);
        PadicNumber x;
        x.p_ = p;
        x.zero_ = false;
        x.val_ = vn - vd;
        x.rel_ = prec;
        BigInt m = ppow(p, prec);
        x.unit_ = mulmod(mod_reduce(num / ppow(p, vn), m), invmod(mod_reduce(den / ppow(p, vd), m), m), m);
        return x;
    }

    static PadicNumber from_rational(const BigRat& r, long p, long prec) {
        return from_rational(numerator(r), denominator(r), p, prec);
    }

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && abs_zero_ >= kInfPrec; }

    long valuation() const {
        if (zero_) throw std::domain_error("valuation: zero state has no finite valuation");
        return val_;
    }
    long rel_prec() const {
        if (zero_) throw std::domain_error("rel_prec: zero state");
        return rel_;
    }
    long abs_prec() const { return zero_ ? abs_zero_ : val_ + rel_; }
    const BigInt& unit_digits() const {
        if (zero_) throw std::domain_error("unit_digits: zero state");
        return unit_;
    }

    // is the value certified to be a p-adic unit (or more generally nonzero)?
    bool certified_nonzero() const { return !zero_; }

    // canonical integer representative of x / p^shift modulo p^(A - shift);
    // requires val_ >= shift (or zero state)
    BigInt representative(long abs, long shift = 0) const {
        if (zero_) {
            if (abs > abs_zero_) throw std::domain_error("representative: beyond known precision");
            return 0;
        }
        if (abs > abs_prec()) throw std::domain_error("representative: beyond known precision");
        if (val_ < shift) throw std::domain_error("representative: negative shifted valuation");
        if (abs <= shift) return 0;
        return mod_reduce(unit_ * ppow(p_, val_ - shift), ppow(p_, abs - shift));
    }

    PadicNumber truncate_abs(long abs) const {
        if (zero_) return zero_to(p_, std::min(abs_zero_, abs));
        if (abs >= abs_prec()) return *this;
        if (abs <= val_) return zero_to(p_, abs);
        PadicNumber x = *this;
        x.rel_ = abs - val_;
        x.unit_ = mod_reduce(unit_, ppow(p_, x.rel_));
        return x;
    }

    // multiply by p^k (exact)
    PadicNumber shift_val(long k) const {
        PadicNumber x = *this;
        if (x.zero_) {
            if (x.abs_zero_ < kInfPrec) x.abs_zero_ += k;
            return x;
        }
        x.val_ += k;
        return x;
    }

    PadicNumber neg() const {
        if (zero_) return *this;
        PadicNumber x = *this;
        x.unit_ = mod_reduce(-unit_, ppow(p_, rel_));
        return x;
    }

    PadicNumber add(const PadicNumber& o) const { return addsub(o, false); }
    PadicNumber sub(const PadicNumber& o) const { return addsub(o, true); }

    PadicNumber mul(const PadicNumber& o) const {
        match(o);
        if (is_exact_zero() || o.is_exact_zero()) return zero(p_);
        if (zero_ && o.zero_) return zero_to(p_, clamp_prec(abs_zero_ + o.abs_zero_));
        if (zero_) return zero_to(p_, clamp_prec(abs_zero_ + o.val_));
        if (o.zero_) return zero_to(p_, clamp_prec(o.abs_zero_ + val_));
        PadicNumber x;
        x.p_ = p_;
        x.zero_ = false;
        x.val_ = val_ + o.val_;
        x.rel_ = std::min(rel_, o.rel_);
        x.unit_ = mulmod(unit_, o.unit_, ppow(p_, x.rel_));
        return x;
    }

    PadicNumber inverse() const {
        if (zero_) throw std::domain_error("inverse: zero or possibly-zero operand");
        PadicNumber x;
        x.p_ = p_;
        x.zero_ = false;
        x.val_ = -val_;
        x.rel_ = rel_;
        x.unit_ = unit_inverse(unit_, p_, rel_);
        return x;
    }

    PadicNumber div(const PadicNumber& o) const {
        match(o);
        if (o.zero_) throw std::domain_error("div: zero or possibly-zero divisor");
        if (is_exact_zero()) return zero(p_);
        if (zero_) return zero_to(p_, clamp_prec(abs_zero_ - o.val_));
        return mul(o.inverse());
    }

    PadicNumber pow_int(long e) const {
        if (e == 0) return from_integer(1, p_, zero_ ? 1 : rel_);
        PadicNumber base = (e < 0) ? inverse() : *this;
        if (e < 0) e = -e;
        PadicNumber acc = base;
        --e;
        PadicNumber sq = base;
        while (e) {
            if (e & 1) acc = acc.mul(sq);
            // avoid squaring past the last needed bit
            e >>= 1;
            if (e) sq = sq.mul(sq);
        }
        return acc;
    }

    // largest A <= min(abs precisions) with *this ≡ o mod p^A
    long agreement_abs_prec(const PadicNumber& o) const {
        match(o);
        long A = std::min(abs_prec(), o.abs_prec());
        PadicNumber d = sub(o).truncate_abs(A);
        if (d.is_zero()) return A;
        return d.valuation();
    }

    bool congruent_mod(const PadicNumber& o, long abs) const {
        PadicNumber d = sub(o);
        if (d.abs_prec() < abs) throw std::domain_error("congruent_mod: insufficient precision to decide");
        d = d.truncate_abs(abs);
        return d.is_zero();
    }

    std::string to_string() const {
        if (is_exact_zero()) return "0";
        if (zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(abs_zero_) + ")";
        return unit_.str() + "*" + std::to_string(p_) + "^" + std::to_string(val_) +
               " + O(" + std::to_string(p_) + "^" + std::to_string(abs_prec()) + ")";
    }

    // Newton lift of the mod-p inverse; u must be a unit mod p
    static BigInt unit_inverse(const BigInt& u, long p, long rel) {
        BigInt y = powmod(u, p - 2, p);
        long have = 1;
        while (have < rel) {
            have = std::min(2 * have, rel);
            BigInt m = ppow(p, have);
            y = mod_reduce(y * (2 - u * y % m), m);
        }
        return y;
    }

private:
    static void check_prime(long p) {
        if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    }
    static void check_prec(long prec) {
        if (prec < 1) throw std::invalid_argument("precision must be positive");
    }
    static long clamp_prec(long a) { return std::min(a, kInfPrec); }

    void match(const PadicNumber& o) const {
        if (p_ != o.p_) throw std::invalid_argument("prime mismatch");
    }

    PadicNumber addsub(const PadicNumber& o, bool negate) const {
        match(o);
        if (is_exact_zero()) return negate ? o.neg() : o;
        if (o.is_exact_zero()) return *this;
        long A = std::min(abs_prec(), o.abs_prec());
        if (zero_ && o.zero_) return zero_to(p_, A);
        if (zero_) return (negate ? o.neg() : o).truncate_abs(A);
        if (o.zero_) return truncate_abs(A);
        long v0 = std::min(val_, o.val_);
        if (A - v0 <= 0) return zero_to(p_, A);
        BigInt m = ppow(p_, A - v0);
        BigInt r = mod_reduce(unit_ * ppow(p_, val_ - v0) +
                                  (negate ? -1 : 1) * o.unit_ * ppow(p_, o.val_ - v0),
                              m);
        return from_representative(p_, r, A - v0, 0).shift_val(v0);
    }

    long p_ = 0;
    bool zero_ = true;
    long abs_zero_ = kInfPrec;
    long val_ = 0;
    long rel_ = 0;
    BigInt unit_ = 0;
};

inline PadicNumber arith(const PadicNumber& a, const PadicNumber& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a.add(b);
        case ArithOp::sub: return a.sub(b);
        case ArithOp::mul: return a.mul(b);
        case ArithOp::div: return a.div(b);
    }
    throw std::logic_error("arith: bad op");
}

inline PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) { return a.add(b); }
inline PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a.sub(b); }
inline PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) { return a.mul(b); }
inline PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a.div(b); }
inline PadicNumber operator-(const PadicNumber& a) { return a.neg(); }

// omega(x): the (p-1)-st root of unity congruent to x mod p, via the
// x -> x^p fixed-point iteration (gains one digit per step).
inline PadicNumber teichmuller(const PadicNumber& x) {
    if (x.is_zero() || x.valuation() != 0)
        throw std::domain_error("teichmuller: input must be a p-adic unit");
    long p = x.prime(), R = x.rel_prec();
    BigInt m = ppow(p, R);
    BigInt y = mod_reduce(x.unit_digits(), m);
    for (long i = 0; i < R + 1; ++i) y = powmod(y, p, m);
    return PadicNumber::from_representative(p, y, R);
}

// Teichmuller lift of an integer residue
inline PadicNumber teichmuller_of_int(long a, long p, long prec) {
    return teichmuller(PadicNumber::from_integer(a, p, prec));
}

namespace detail {

// series bound: all k > T have v_p(z^k / k) >= target when v_p(z) >= 1
inline long log_series_bound(long p, long target) {
    long T = target;
    while (true) {
        bool ok = true;
        for (long k = T + 1; k <= 2 * T + 4; ++k) {
            long lg = 0, q = 1;
            while (q <= k) { q *= p; ++lg; }
            if (k - (lg - 1) < target) { ok = false; break; }
        }
        if (ok) return T;
        ++T;
    }
}

}  // namespace detail

// Iwasawa logarithm: log_p(p) = 0, roots of unity map to 0.
// Returns the convergent series log(<u>) where x = p^v * omega(u) * <u>.
inline PadicNumber iwasawa_log(const PadicNumber& x) {
    if (x.is_zero()) throw std::domain_error("iwasawa_log: zero input");
    long p = x.prime(), R = x.rel_prec();
    PadicNumber u = x.shift_val(-x.valuation());      // unit part
    PadicNumber t = u / teichmuller(u);               // <u> ≡ 1 mod p
    PadicNumber z = t - PadicNumber::from_integer(1, p, R);
    if (z.is_zero()) return PadicNumber::zero_to(p, R);
    long T = detail::log_series_bound(p, R + 1);
    PadicNumber acc = PadicNumber::zero_to(p, R);
    PadicNumber zk = PadicNumber::from_integer(1, p, R + T);
    for (long k = 1; k <= T; ++k) {
        zk = zk * z;
        long vk = (k % p == 0) ? vp(BigInt(k), p) : 0;
        PadicNumber term = zk / PadicNumber::from_integer(k, p, R + vk + 2);
        acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    return acc.truncate_abs(R);
}

// exp on its disc of convergence (v_p(z) >= 1, odd p)
inline PadicNumber exp_p(const PadicNumber& z) {
    long p = z.prime();
    if (p == 2) throw std::invalid_argument("exp_p: odd p only");
    if (z.is_zero()) {
        long A = z.abs_prec();
        PadicNumber one = PadicNumber::from_integer(1, p, std::min(A, PadicNumber::kInfPrec / 2));
        return one;
    }
    if (z.valuation() < 1) throw std::domain_error("exp_p: outside disc of convergence");
    long R = z.abs_prec();
    // v(z^k/k!) >= k - (k-1)/(p-1) >= R+1 for k > T
    long T = 2;
    while (T - (T - 1) / (p - 1) < R + 1) ++T;
    PadicNumber acc = PadicNumber::from_integer(1, p, R);
    PadicNumber zk = PadicNumber::from_integer(1, p, R + T);
    BigInt kfact = 1;
    for (long k = 1; k <= T; ++k) {
        zk = zk * z;
        kfact *= k;
        long vk = vp(kfact, p);
        PadicNumber term = zk / PadicNumber::from_integer(kfact, p, R + vk + 2);
        acc = acc + term;
    }
    return acc.truncate_abs(R);
}

// Hensel square root of a unit square mod p^prec (odd p); returns the root
// whose mod-p residue is smallest.
inline PadicNumber hensel_sqrt(const PadicNumber& a) {
    if (a.is_zero() || a.valuation() != 0) throw std::domain_error("hensel_sqrt: unit input required");
    long p = a.prime(), R = a.rel_prec();
    BigInt ap = mod_reduce(a.unit_digits(), p);
    long r0 = -1;
    for (long r = 1; r < p; ++r)
        if (mod_reduce(BigInt(r) * r, p) == ap) { r0 = r; break; }
    if (r0 < 0) throw std::domain_error("hensel_sqrt: not a quadratic residue");
    BigInt m = ppow(p, R);
    BigInt y = r0, inv2 = invmod(2, m);
    for (long i = 0; i < R + 2; ++i)
        y = mod_reduce((y + mod_reduce(a.unit_digits(), m) * invmod(y, m)) * inv2, m);
    return PadicNumber::from_representative(p, y, R);
}

}  // namespace pstark
