#pragma once

// The unramified extension Q_q / Q_p of degree f and the Eisenstein tower
// Q_q(pi) with pi^(p-1) = -p.
//
// Q_q elements are polynomials of degree < f over Q_p (PadicNumber
// coefficients, each tracking its own precision) modulo a fixed monic
// integral lift of a deterministic irreducible polynomial over F_p.
// Tower elements are coordinate vectors in the basis 1, pi, ..., pi^(p-2)
// over Q_q; the pi-adic valuation of a nonzero element is read off as
// min_j ((p-1) v_p(coord_j) + j).

#include <optional>

#include "padic.hpp"

namespace pstark {

// ---------- residue field F_q = F_p[x]/(modulus) ----------

using FqElem = std::vector<long>;  // coefficients mod p, size f

struct FqContext {
    long p, f;
    std::vector<long> modulus;  // monic, size f+1, coefficients in [0, p)

    long q_long() const {
        long q = 1;
        for (long i = 0; i < f; ++i) q *= p;
        return q;
    }
};

namespace fq {

inline FqElem zero(const FqContext& F) { return FqElem(F.f, 0); }

inline FqElem from_code(const FqContext& F, long code) {
    FqElem e(F.f, 0);
    for (long i = 0; i < F.f; ++i) {
        e[i] = code % F.p;
        code /= F.p;
    }
    return e;
}

inline long to_code(const FqContext& F, const FqElem& e) {
    long c = 0;
    for (long i = F.f - 1; i >= 0; --i) c = c * F.p + e[i];
    return c;
}

inline bool is_zero(const FqElem& a) {
    for (long c : a)
        if (c) return false;
    return true;
}

inline FqElem add(const FqContext& F, const FqElem& a, const FqElem& b) {
    FqElem c(F.f);
    for (long i = 0; i < F.f; ++i) c[i] = (a[i] + b[i]) % F.p;
    return c;
}

inline FqElem mul(const FqContext& F, const FqElem& a, const FqElem& b) {
    std::vector<long> prod(2 * F.f - 1, 0);
    for (long i = 0; i < F.f; ++i) {
        if (!a[i]) continue;
        for (long j = 0; j < F.f; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % F.p;
    }
    for (long d = 2 * F.f - 2; d >= F.f; --d) {
        long c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (long j = 0; j < F.f; ++j)
            prod[d - F.f + j] = ((prod[d - F.f + j] - c * F.modulus[j]) % F.p + F.p) % F.p;
    }
    prod.resize(F.f);
    return prod;
}

inline FqElem pow(const FqContext& F, FqElem a, BigInt e) {
    FqElem r = zero(F);
    r[0] = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = mul(F, r, a);
        a = mul(F, a, a);
        e >>= 1;
    }
    return r;
}

inline FqElem frobenius(const FqContext& F, const FqElem& a) { return pow(F, a, F.p); }

// Tr(x) = x + x^p + ... + x^(p^(f-1)) lands in F_p
inline long trace(const FqContext& F, const FqElem& a) {
    FqElem acc = zero(F), cur = a;
    for (long i = 0; i < F.f; ++i) {
        acc = add(F, acc, cur);
        if (i + 1 < F.f) cur = frobenius(F, cur);
    }
    for (long i = 1; i < F.f; ++i)
        if (acc[i]) throw std::logic_error("fq::trace: result not in the prime field");
    return acc[0];
}

// deterministic generator: the least element (by base-p code) of full order
inline FqElem generator(const FqContext& F, long order_bound = 1'000'000) {
    long q = F.q_long();
    if (q > order_bound) throw std::domain_error("fq::generator: q beyond configured bound");
    std::vector<long> prime_divs;
    for (auto [r, e] : factorize(q - 1)) prime_divs.push_back(r);
    for (long code = 1; code < q; ++code) {
        FqElem g = from_code(F, code);
        bool ok = true;
        for (long r : prime_divs) {
            FqElem t = pow(F, g, BigInt(q - 1) / r);
            if (is_zero(t)) throw std::logic_error("fq::generator: zero power");
            FqElem one = zero(F);
            one[0] = 1;
            if (t == one) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("fq::generator: none found");
}

}  // namespace fq

namespace detail {

// gcd-based irreducibility over F_p
inline std::vector<long> fp_poly_mod(std::vector<long> a, const std::vector<long>& m, long p) {
    long dm = static_cast<long>(m.size()) - 1;
    for (long i = static_cast<long>(a.size()) - 1; i >= dm; --i) {
        long c = a[i];
        if (!c) continue;
        // m is monic
        for (long j = 0; j <= dm; ++j)
            a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
    }
    a.resize(std::max<long>(dm, 1));
    return a;
}

inline std::vector<long> fp_poly_gcd(std::vector<long> a, std::vector<long> b, long p) {
    auto deg = [](const std::vector<long>& x) {
        for (long i = static_cast<long>(x.size()) - 1; i >= 0; --i)
            if (x[i]) return i;
        return -1L;
    };
    while (deg(b) >= 0) {
        // a mod b with b made monic
        long db = deg(b);
        long inv = static_cast<long>(invmod(b[db], p).convert_to<long>());
        std::vector<long> bm(b.begin(), b.begin() + db + 1);
        for (auto& c : bm) c = c * inv % p;
        long da = deg(a);
        while (da >= db) {
            long c = a[da];
            if (c) {
                for (long j = 0; j <= db; ++j)
                    a[da - db + j] = ((a[da - db + j] - c * bm[j]) % p + p) % p;
            }
            --da;
        }
        std::swap(a, b);
    }
    return a;
}

inline bool fp_poly_irreducible(const std::vector<long>& m, long p) {
    long f = static_cast<long>(m.size()) - 1;
    FqContext F{p, f, m};
    // x^(p^f) ≡ x mod m, and gcd(x^(p^(f/l)) - x, m) = 1 for prime l | f
    FqElem x = fq::zero(F);
    if (f == 1) return true;
    x[1] = 1;
    FqElem xq = fq::pow(F, x, ipow(BigInt(p), f));
    if (xq != x) return false;
    for (auto [l, e] : factorize(f)) {
        FqElem xr = fq::pow(F, x, ipow(BigInt(p), f / l));
        std::vector<long> diff(f, 0);
        for (long i = 0; i < f; ++i) diff[i] = ((xr[i] - x[i]) % p + p) % p;
        auto g = fp_poly_gcd(m, diff, p);
        long dg = -1;
        for (long i = static_cast<long>(g.size()) - 1; i >= 0; --i)
            if (g[i]) { dg = i; break; }
        if (dg != 0) return false;
    }
    return true;
}

}  // namespace detail

// ---------- unramified field Z_q ----------

class UnramifiedField;
using ZqElem = std::vector<PadicNumber>;  // size f, coefficient of x^i at index i

class UnramifiedField {
public:
    // deterministic modulus: least irreducible monic polynomial under the
    // base-p coefficient-code ordering (constant coefficient least
    // significant), lifted with coefficients in [0, p)
    UnramifiedField(long p, long f, long prec) : p_(p), f_(f), prec_(prec) {
        if (!is_prime(p)) throw std::invalid_argument("UnramifiedField: p not prime");
        if (f < 1) throw std::invalid_argument("UnramifiedField: f >= 1 required");
        if (prec < 1) throw std::invalid_argument("UnramifiedField: positive precision required");
        long q = 1;
        for (long i = 0; i < f; ++i) {
            q *= p;
            if (q > 1'000'000) throw std::domain_error("UnramifiedField: q beyond configured bound");
        }
        std::vector<long> m(f + 1, 0);
        m[f] = 1;
        for (long code = 0;; ++code) {
            if (code >= q) throw std::logic_error("UnramifiedField: no irreducible found");
            long c = code;
            for (long i = 0; i < f; ++i) {
                m[i] = c % p;
                c /= p;
            }
            if (detail::fp_poly_irreducible(m, p)) break;
        }
        modulus_ = m;
    }

    long p() const { return p_; }
    long f() const { return f_; }
    long prec() const { return prec_; }
    long q_long() const {
        long q = 1;
        for (long i = 0; i < f_; ++i) q *= p_;
        return q;
    }
    const std::vector<long>& modulus() const { return modulus_; }
    FqContext residue_context() const { return FqContext{p_, f_, modulus_}; }

    ZqElem zero() const { return ZqElem(f_, PadicNumber::zero(p_)); }

    ZqElem from_integer(const BigInt& n, std::optional<long> prec = std::nullopt) const {
        ZqElem e = zero();
        e[0] = PadicNumber::from_integer(n, p_, prec.value_or(prec_));
        return e;
    }

    ZqElem from_padic(const PadicNumber& x) const {
        ZqElem e = zero();
        e[0] = x;
        return e;
    }

    ZqElem lift_residue(const FqElem& r, std::optional<long> prec = std::nullopt) const {
        ZqElem e = zero();
        for (long i = 0; i < f_; ++i)
            e[i] = r[i] ? PadicNumber::from_integer(r[i], p_, prec.value_or(prec_))
                        : PadicNumber::zero(p_);
        return e;
    }

    // reduction mod p of an integral element
    FqElem residue(const ZqElem& a) const {
        FqElem r(f_, 0);
        for (long i = 0; i < f_; ++i) {
            if (a[i].is_zero()) continue;
            if (a[i].valuation() < 0) throw std::domain_error("residue: not integral");
            r[i] = static_cast<long>(a[i].representative(1).convert_to<long>());
        }
        return r;
    }

    ZqElem add(const ZqElem& a, const ZqElem& b) const {
        ZqElem c = zero();
        for (long i = 0; i < f_; ++i) c[i] = a[i] + b[i];
        return c;
    }
    ZqElem sub(const ZqElem& a, const ZqElem& b) const {
        ZqElem c = zero();
        for (long i = 0; i < f_; ++i) c[i] = a[i] - b[i];
        return c;
    }
    ZqElem neg(const ZqElem& a) const {
        ZqElem c = zero();
        for (long i = 0; i < f_; ++i) c[i] = -a[i];
        return c;
    }
    ZqElem scalar_mul(const PadicNumber& s, const ZqElem& a) const {
        ZqElem c = zero();
        for (long i = 0; i < f_; ++i) c[i] = s * a[i];
        return c;
    }

    ZqElem mul(const ZqElem& a, const ZqElem& b) const {
        std::vector<PadicNumber> prod(2 * f_ - 1, PadicNumber::zero(p_));
        for (long i = 0; i < f_; ++i) {
            if (a[i].is_exact_zero()) continue;
            for (long j = 0; j < f_; ++j) prod[i + j] = prod[i + j] + a[i] * b[j];
        }
        reduce(prod);
        prod.resize(f_, PadicNumber::zero(p_));
        return prod;
    }

    ZqElem pow(const ZqElem& a, BigInt e) const {
        ZqElem r = from_integer(1, working_rel(a));
        ZqElem base = a;
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return r;
    }

    // inverse of a unit (valuation-0 element) by Newton from the residue inverse
    ZqElem inverse(const ZqElem& a) const {
        long v = valuation(a);
        if (v != 0) throw std::domain_error("Zq inverse: unit required");
        FqContext F = residue_context();
        FqElem r = residue(a);
        FqElem rinv = fq::pow(F, r, BigInt(q_long()) - 2);
        long R = working_rel(a);
        ZqElem y = lift_residue(rinv, R);
        ZqElem two = from_integer(2, R);
        for (long have = 1; have < R; have *= 2) y = mul(y, sub(two, mul(a, y)));
        return y;
    }

    ZqElem div(const ZqElem& a, const ZqElem& b) const { return mul(a, inverse(b)); }

    bool is_zero(const ZqElem& a) const {
        for (const auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }

    // p-adic valuation: min over coefficients (element must be certified nonzero)
    long valuation(const ZqElem& a) const {
        bool any = false;
        long v = 0;
        for (const auto& c : a)
            if (!c.is_zero()) {
                v = any ? std::min(v, c.valuation()) : c.valuation();
                any = true;
            }
        if (!any) throw std::domain_error("Zq valuation: zero element");
        return v;
    }

    long min_abs_prec(const ZqElem& a) const {
        long m = PadicNumber::kInfPrec;
        for (const auto& c : a) m = std::min(m, c.abs_prec());
        return m;
    }

    ZqElem truncate_abs(const ZqElem& a, long abs) const {
        ZqElem c = zero();
        for (long i = 0; i < f_; ++i) c[i] = a[i].truncate_abs(abs);
        return c;
    }

    // Teichmuller lift: the (q-1)-st root of unity over a nonzero residue,
    // fixed point of y -> y^q
    ZqElem teichmuller_lift(const FqElem& r, std::optional<long> prec = std::nullopt) const {
        if (fq::is_zero(r)) throw std::domain_error("teichmuller_lift: zero residue");
        long R = prec.value_or(prec_);
        ZqElem y = lift_residue(r, R);
        for (long i = 0; i < R + 1; ++i) y = pow(y, q_long());
        return y;
    }

    // Iwasawa log of a nonzero element: log of the unit part, kills torsion
    ZqElem iwasawa_log(const ZqElem& x) const {
        long v = valuation(x);
        ZqElem u = zero();
        for (long i = 0; i < f_; ++i) u[i] = x[i].shift_val(-v);
        // t = u / omega(u) with omega the Teichmuller lift of the residue
        long R = working_rel(u);
        ZqElem t = mul(u, inverse(teichmuller_lift(residue(u), R)));
        ZqElem z = sub(t, from_integer(1, R));
        if (is_zero(z)) return zero();
        long T = detail::log_series_bound(p_, R + 1);
        ZqElem acc = zero();
        ZqElem zk = from_integer(1, R + T);
        for (long k = 1; k <= T; ++k) {
            zk = mul(zk, z);
            long vk = (k % p_ == 0) ? vp(BigInt(k), p_) : 0;
            PadicNumber kk = PadicNumber::from_integer(k, p_, R + vk + 2).inverse();
            ZqElem term = scalar_mul(kk, zk);
            acc = (k % 2 == 1) ? add(acc, term) : sub(acc, term);
        }
        return truncate_abs(acc, R);
    }

private:
    void reduce(std::vector<PadicNumber>& prod) const {
        for (long d = static_cast<long>(prod.size()) - 1; d >= f_; --d) {
            if (prod[d].is_exact_zero()) continue;
            for (long j = 0; j < f_; ++j) {
                if (!modulus_[j]) continue;
                prod[d - f_ + j] =
                    prod[d - f_ + j] - prod[d] * PadicNumber::from_integer(modulus_[j], p_, rel_of(prod[d]));
            }
            prod[d] = PadicNumber::zero(p_);
        }
    }

    static long rel_of(const PadicNumber& x) { return x.is_zero() ? 1 : x.rel_prec(); }

    long working_rel(const ZqElem& a) const {
        long r = 1;
        for (const auto& c : a)
            if (!c.is_zero()) r = std::max(r, c.rel_prec());
        return std::max(r, prec_);
    }

    long p_, f_, prec_;
    std::vector<long> modulus_;
};

// trace of a residue-field element to F_p (spec surface)
inline long trace_to_prime_field(const UnramifiedField& F, const FqElem& x) {
    return fq::trace(F.residue_context(), x);
}

inline UnramifiedField make_unramified(long p, long f, long prec) {
    return UnramifiedField(p, f, prec);
}

// ---------- Eisenstein tower Q_q(pi), pi^(p-1) = -p ----------

class EisensteinTower {
public:
    explicit EisensteinTower(const UnramifiedField& base) : F_(&base) {}

    const UnramifiedField& base() const { return *F_; }
    long p() const { return F_->p(); }
    long e() const { return F_->p() - 1; }  // ramification degree

    using Elem = std::vector<ZqElem>;  // size p-1, coordinate of pi^j at index j

    Elem zero() const { return Elem(e(), F_->zero()); }

    Elem from_zq(const ZqElem& a) const {
        Elem x = zero();
        x[0] = a;
        return x;
    }

    Elem pi() const {
        Elem x = zero();
        x[1 % e()] = F_->from_integer(1);
        if (e() == 1) throw std::logic_error("EisensteinTower: p = 2 not supported");
        return x;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem c = zero();
        for (long j = 0; j < e(); ++j) c[j] = F_->add(a[j], b[j]);
        return c;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c = zero();
        for (long j = 0; j < e(); ++j) c[j] = F_->sub(a[j], b[j]);
        return c;
    }
    Elem neg(const Elem& a) const {
        Elem c = zero();
        for (long j = 0; j < e(); ++j) c[j] = F_->neg(a[j]);
        return c;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        long m = e();
        std::vector<ZqElem> prod(2 * m - 1, F_->zero());
        for (long i = 0; i < m; ++i) {
            if (F_->is_zero(a[i])) continue;
            for (long j = 0; j < m; ++j) prod[i + j] = F_->add(prod[i + j], F_->mul(a[i], b[j]));
        }
        Elem c = zero();
        PadicNumber minus_p = PadicNumber::from_integer(-p(), p(), F_->prec() + 2);
        for (long d = 0; d < m; ++d) c[d] = prod[d];
        for (long d = m; d < 2 * m - 1; ++d)
            c[d - m] = F_->add(c[d - m], F_->scalar_mul(minus_p, prod[d]));  // pi^(p-1) = -p
        return c;
    }

    Elem scalar_mul(const PadicNumber& s, const Elem& a) const {
        Elem c = zero();
        for (long j = 0; j < e(); ++j) c[j] = F_->scalar_mul(s, a[j]);
        return c;
    }

    Elem pow(const Elem& a, BigInt exp) const {
        Elem r = from_zq(F_->from_integer(1));
        Elem base = a;
        while (exp > 0) {
            if ((exp & 1) != 0) r = mul(r, base);
            exp >>= 1;
            if (exp > 0) base = mul(base, base);
        }
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!F_->is_zero(c)) return false;
        return true;
    }

    // pi-adic valuation: min_j ((p-1) v_p(coord_j) + j).  Throws when the
    // precision of a cancelled coordinate is too low to certify the result.
    long pi_valuation(const Elem& a) const {
        long best = 0;
        bool any = false;
        for (long j = 0; j < e(); ++j) {
            if (F_->is_zero(a[j])) continue;
            long v = e() * F_->valuation(a[j]) + j;
            best = any ? std::min(best, v) : v;
            any = true;
        }
        if (!any) throw std::domain_error("pi_valuation: zero element");
        for (long j = 0; j < e(); ++j) {
            for (const auto& c : a[j]) {
                if (!c.is_zero() || c.is_exact_zero()) continue;
                if (e() * c.abs_prec() + j <= best)
                    throw std::domain_error("pi_valuation: precision too low to certify");
            }
        }
        return best;
    }

    // multiply by pi^t (t may be negative); exact coordinate shuffle
    Elem shift_pi(const Elem& a, long t) const {
        long m = e();
        Elem c = zero();
        for (long j = 0; j < m; ++j) {
            if (F_->is_zero(a[j])) continue;
            long s = j + t;
            long qq = s >= 0 ? s / m : -((-s + m - 1) / m);
            long r = s - qq * m;
            // pi^s = (-p)^qq * pi^r
            PadicNumber fac = PadicNumber::from_integer(1, p(), F_->prec() + 2);
            if (qq != 0) {
                fac = PadicNumber::from_integer(-p(), p(), F_->prec() + 2).pow_int(qq);
            }
            c[r] = F_->add(c[r], F_->scalar_mul(fac, a[j]));
        }
        return c;
    }

    // inverse of a pi-adic unit (pi_valuation 0) by Newton from the residue inverse
    Elem inverse(const Elem& a) const {
        if (pi_valuation(a) != 0) throw std::domain_error("tower inverse: pi-unit required");
        ZqElem c0inv = F_->inverse(a[0]);
        Elem y = from_zq(c0inv);
        Elem two = from_zq(F_->from_integer(2));
        long target = e() * (F_->prec() + 1);
        for (long have = 1; have < target; have *= 2) y = mul(y, sub(two, mul(a, y)));
        return y;
    }

    // zeta_p with zeta_p ≡ 1 + pi mod pi^2: Hensel on
    // H(u) = Phi_p(1 + pi u)/p = 1 - u^(p-1) + sum_{i=2}^{p-1} (C(p,i)/p) pi^(i-1) u^(i-1),
    // whose derivative at u ≡ 1 is the unit -(p-1).
    Elem zeta_p() const {
        long pp = p();
        long R = F_->prec();
        if (R < 2) throw std::domain_error("zeta_p: needs precision >= 2 to separate roots");
        std::vector<PadicNumber> coeff(pp, PadicNumber::zero(pp));  // coeff of u^k
        // H(u): constant 1; u^(p-1) coefficient -1 - handled separately with pi powers
        Elem u = from_zq(F_->from_integer(1));
        auto H = [&](const Elem& x) {
            Elem acc = from_zq(F_->from_integer(1));
            Elem xp = from_zq(F_->from_integer(1));
            for (long i = 2; i <= pp; ++i) {
                // term for u^(i-1): i < p: (C(p,i)/p) pi^(i-1); i = p: -u^(p-1)
                xp = mul(xp, x);
                if (i < pp) {
                    BigInt c = binomial(pp, i) / pp;
                    Elem t = scalar_mul(PadicNumber::from_integer(c, pp, R + 2), xp);
                    acc = add(acc, shift_pi(t, i - 1));
                } else {
                    acc = sub(acc, xp);
                }
            }
            return acc;
        };
        auto Hp = [&](const Elem& x) {
            Elem acc = zero();
            Elem xp = from_zq(F_->from_integer(1));
            for (long i = 2; i <= pp; ++i) {
                if (i > 2) xp = mul(xp, x);
                if (i < pp) {
                    BigInt c = binomial(pp, i) / pp * (i - 1);
                    Elem t = scalar_mul(PadicNumber::from_integer(c, pp, R + 2), xp);
                    acc = add(acc, shift_pi(t, i - 1));
                } else {
                    acc = sub(acc, scalar_mul(PadicNumber::from_integer(pp - 1, pp, R + 2), xp));
                }
            }
            return acc;
        };
        long target = e() * (R + 1);
        for (long have = 1; have < 2 * target; have *= 2) u = sub(u, mul(H(u), inverse(Hp(u))));
        return add(from_zq(F_->from_integer(1)), shift_pi(u, 1));  // 1 + pi*u
    }

private:
    const UnramifiedField* F_;
};

}  // namespace pstark
