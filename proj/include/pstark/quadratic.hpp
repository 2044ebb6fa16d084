#pragma once

// Rank-one Gross-Stark verification for imaginary quadratic fields:
// class numbers by reduced-form counting, Dirichlet's identity
// L(chi_d, 0) = 2h/w, split-prime generators alpha of q^h found by norm-form
// enumeration under a fixed embedding sqrt(d) -> r in Q_p, and the identity
//   L'_p(chi_d omega, 0) = (-2/w) log_p(alpha/conj) = (4/w) log_p(conj alpha).

#include "lfunction.hpp"

namespace pstark {

inline bool is_squarefree(long n) {
    n = std::abs(n);
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

inline bool is_fundamental_discriminant(long d) {
    if (d >= 0) return false;
    long r = ((d % 4) + 4) % 4;
    if (r == 1) return is_squarefree(d);
    if (r == 0) {
        long m = d / 4;
        long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && is_squarefree(m);
    }
    return false;
}

// reduced-form count: ax^2 + bxy + cy^2, b^2 - 4ac = d, |b| <= a <= c,
// b >= 0 when |b| = a or a = c
inline long class_number(long d, long bound = 10000) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument("class_number: d not fundamental");
    if (-d > bound) throw std::domain_error("class_number: |d| beyond configured bound");
    long h = 0;
    for (long b = (d % 2 == 0) ? 0 : 1; b * b <= -d / 3 + 1; b += 2) {
        if (3 * b * b > -d) break;
        BigInt n4 = BigInt(b) * b - d;
        if (n4 % 4 != 0) continue;
        long n = static_cast<long>(n4 / 4);
        for (long a = std::max<long>(b, 1); a * a <= n; ++a) {
            if (n % a) continue;
            long c = n / a;
            // reduced: |b| <= a <= c with b >= 0 on the boundary
            if (b == 0 || b == a || a == c)
                h += 1;
            else
                h += 2;  // forms with +b and -b
        }
    }
    return h;
}

inline long torsion_order(long d) { return d == -3 ? 6 : (d == -4 ? 4 : 2); }

inline int chi_d(long d, long n) { return kronecker(d, n); }

// the attached odd quadratic character of conductor |d| as a table character
inline DirichletCharacter kronecker_character(long d) {
    long D = -d;
    for (auto& chi : enumerate_characters(D)) {
        if (chi.order() != 2 || !chi.odd() || chi.conductor() != D) continue;
        bool match = true;
        for (long a = 1; a < D && match; ++a) {
            int kv = chi_d(d, a);
            long e = chi.value_exp(a);
            int tv = (e < 0) ? 0 : (e == 0 ? 1 : -1);
            if (kv != tv) match = false;
        }
        if (match) return chi;
    }
    throw std::logic_error("kronecker_character: not found");
}

// elements x + y rho of O_K with rho = (1+sqrt d)/2 (d ≡ 1 mod 4) or
// rho = sqrt(d/4) (d ≡ 0 mod 4)
struct QuadraticIntegerElement {
    long d;
    BigInt x, y;

    BigInt norm() const {
        if (((d % 4) + 4) % 4 == 1) return x * x + x * y + y * y * (1 - d) / 4;
        return x * x - (d / 4) * y * y;
    }

    QuadraticIntegerElement conj() const {
        // conj(rho) = 1 - rho (d ≡ 1 mod 4) or -rho
        if (((d % 4) + 4) % 4 == 1) return {d, x + y, -y};
        return {d, x, -y};
    }

    QuadraticIntegerElement mul(const QuadraticIntegerElement& o) const {
        if (((d % 4) + 4) % 4 == 1) {
            // rho^2 = rho + (d-1)/4
            BigInt m = BigInt(d - 1) / 4;
            return {d, x * o.x + y * o.y * m, x * o.y + y * o.x + y * o.y};
        }
        return {d, x * o.x + (d / 4) * y * o.y, x * o.y + y * o.x};
    }
};

// torsion units of O_K by norm-1 enumeration in a small box
inline std::vector<QuadraticIntegerElement> torsion_units(long d) {
    std::vector<QuadraticIntegerElement> out;
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            QuadraticIntegerElement u{d, x, y};
            if ((x || y) && u.norm() == 1) out.push_back(u);
        }
    return out;
}

struct DirichletClassNumberReport {
    long d = 0, h = 0, w = 0;
    BigRat minus_b1;         // -B_{1,chi_d}
    BigRat two_h_over_w;     // 2h/w
    bool b1_identity = false;
    bool bracket_identity = false;  // (sum_{chi=-1}<a> - sum_{chi=+1}<a>)/D = 2h/w
};

inline DirichletClassNumberReport dirichlet_check(long d) {
    DirichletClassNumberReport r;
    r.d = d;
    r.h = class_number(d);
    r.w = torsion_order(d);
    long D = -d;
    BigRat b1 = 0;
    BigInt minus_sum = 0, plus_sum = 0;
    for (long a = 1; a < D; ++a) {
        int v = chi_d(d, a);
        if (v == 0) continue;
        b1 += BigRat(v * a, D);
        (v == 1 ? plus_sum : minus_sum) += a;
    }
    r.minus_b1 = -b1;
    r.two_h_over_w = BigRat(2 * r.h, r.w);
    r.b1_identity = (r.minus_b1 == r.two_h_over_w);
    r.bracket_identity = (BigRat(minus_sum - plus_sum, D) == r.two_h_over_w);
    return r;
}

struct SplitGenerator {
    QuadraticIntegerElement alpha;
    PadicNumber root;        // r with r^2 = d, fixing K -> Q_p via q
    PadicNumber iota_alpha;  // valuation h
    PadicNumber iota_bar;    // a unit
    long h = 0;
};

namespace detail {

inline PadicNumber embed_quadratic(const QuadraticIntegerElement& z, const PadicNumber& root) {
    long p = root.prime();
    long prec = root.rel_prec();
    PadicNumber rho;
    if (((z.d % 4) + 4) % 4 == 1)
        rho = (PadicNumber::from_integer(1, p, prec) + root) / PadicNumber::from_integer(2, p, prec);
    else
        rho = root / PadicNumber::from_integer(2, p, prec);
    return PadicNumber::from_integer(z.x, p, prec) + PadicNumber::from_integer(z.y, p, prec) * rho;
}

}  // namespace detail

// Hensel-lift sqrt(d), search elements of norm p^h, return one generating q^h
// (iota(alpha) has valuation h; the conjugate embeds to a unit)
inline SplitGenerator split_prime_generator(long d, long p, long prec, bool swap_root = false) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument("split_prime_generator: bad d");
    if (p == 2 || !is_prime(p) || (-d) % p == 0)
        throw std::invalid_argument("split_prime_generator: odd p with p !| d required");
    if (chi_d(d, p) != 1) throw std::invalid_argument("split_prime_generator: p must split");
    SplitGenerator out;
    out.h = class_number(d);
    PadicNumber dp = PadicNumber::from_integer(d, p, prec);
    out.root = hensel_sqrt(dp);
    if (swap_root) out.root = -out.root;
    BigInt ph = ipow(BigInt(p), out.h);
    long dm4 = ((d % 4) + 4) % 4;
    BigInt Ybound = isqrt_floor((dm4 == 1 ? 4 * ph : ph) / (-BigInt(d) / (dm4 == 1 ? 1 : 4))) + 1;
    for (BigInt y = 0; y <= Ybound; ++y) {
        std::vector<QuadraticIntegerElement> candidates;
        if (dm4 == 1) {
            BigInt t2 = 4 * ph + d * y * y, t;
            if (t2 < 0 || !is_square(t2, t)) continue;
            for (BigInt tt : {t, BigInt(-t)})
                for (BigInt yy : {y, BigInt(-y)}) {
                    BigInt num = tt - yy;
                    if (num % 2 != 0) continue;
                    candidates.push_back({d, num / 2, yy});
                }
        } else {
            BigInt m = BigInt(d) / 4;
            BigInt x2 = ph + m * y * y, x;
            if (x2 < 0 || !is_square(x2, x)) continue;
            for (BigInt xx : {x, BigInt(-x)})
                for (BigInt yy : {y, BigInt(-y)}) candidates.push_back({d, xx, yy});
        }
        for (auto& cand : candidates) {
            if (cand.norm() != ph) continue;
            PadicNumber ia = detail::embed_quadratic(cand, out.root);
            PadicNumber ib = detail::embed_quadratic(cand.conj(), out.root);
            if (ia.is_zero() || ib.is_zero()) continue;
            if (ia.valuation() == out.h && ib.valuation() == 0) {
                out.alpha = cand;
                out.iota_alpha = ia;
                out.iota_bar = ib;
                return out;
            }
        }
    }
    throw std::logic_error("split_prime_generator: no generator found (bug: q^h is principal)");
}

// documented worst-case slack for log/series/division losses at precision M
inline long precision_slack(long p, long M) {
    long lg = 0, q = 1;
    while (q < M) {
        q *= p;
        ++lg;
    }
    return 2 + lg;
}

struct RankOneReport {
    long d = 0, p = 0, h = 0, w = 0, prec = 0;
    PadicNumber lhs;  // L'_p(chi_d omega, 0)
    PadicNumber rhs;  // (4/w) log_p(iota(conj alpha))
    long agreement_precision = 0;
    bool pass = false;
    bool unit_invariance = false;
    bool embedding_swap_consistent = false;
    PadicNumber regulator_rp;      // R_p(chi) = (1/h) log_p(alpha/conj)
    PadicNumber chiform_lhs;       // log_p(u_chi-norm)/ord_q(u_chi)
    PadicNumber chiform_rhs;       // -L'_p / L(chi, 0)
    long chiform_agreement = 0;
};

inline RankOneReport verify_rank_one(long d, long p, long prec) {
    RankOneReport rep;
    rep.d = d;
    rep.p = p;
    rep.h = class_number(d);
    rep.w = torsion_order(d);
    rep.prec = prec;
    auto chi = kronecker_character(d);
    if ((-d) % p == 0 || p == 2) throw std::invalid_argument("verify_rank_one: p !| 2d required");
    rep.lhs = lp_derivative_gamma(chi, p, prec).scalar();
    auto gen = split_prime_generator(d, p, prec);
    PadicNumber four_over_w = PadicNumber::from_rational(4, rep.w, p, prec);
    rep.rhs = four_over_w * iwasawa_log(gen.iota_bar);
    rep.agreement_precision = rep.lhs.agreement_abs_prec(rep.rhs);
    rep.pass = rep.agreement_precision >= prec - precision_slack(p, prec);

    // generator-unit invariance: alpha -> zeta alpha changes nothing
    rep.unit_invariance = true;
    for (const auto& u : torsion_units(d)) {
        auto alt = gen.alpha.mul(u);
        PadicNumber ib = detail::embed_quadratic(alt.conj(), gen.root);
        PadicNumber rhs_u = four_over_w * iwasawa_log(ib);
        if (rep.rhs.agreement_abs_prec(rhs_u) < rep.agreement_precision)
            rep.unit_invariance = false;
    }

    // embedding swap r -> -r exchanges q and qbar; the verified identity is
    // unchanged and log_p of the alpha-side flips sign
    auto gen2 = split_prime_generator(d, p, prec, /*swap_root=*/true);
    PadicNumber rhs2 = four_over_w * iwasawa_log(gen2.iota_bar);
    bool same = rep.lhs.agreement_abs_prec(rhs2) >= prec - precision_slack(p, prec);
    // under r -> -r, iota(alpha) becomes iota(conj alpha), so its log flips sign
    PadicNumber l1 = iwasawa_log(gen.iota_alpha);
    PadicNumber l2 = iwasawa_log(detail::embed_quadratic(gen.alpha, gen2.root));
    bool flip = l2.agreement_abs_prec(-l1) >= std::min(l1.abs_prec(), l2.abs_prec()) -
                                                  precision_slack(p, prec);
    rep.embedding_swap_consistent = same && flip;

    // both normalizations: R_p(chi) = (1/h) log_p(alpha/conj alpha) and the
    // chiform ratio log_p(u)/ord_q(u) = -L'_p / L(chi, 0) with u = alpha/conj
    PadicNumber log_ratio = iwasawa_log(gen.iota_alpha) - iwasawa_log(gen.iota_bar);
    rep.regulator_rp = log_ratio / PadicNumber::from_integer(rep.h, p, prec);
    rep.chiform_lhs = rep.regulator_rp;
    BigRat l0(2 * rep.h, rep.w);
    rep.chiform_rhs = -(rep.lhs / PadicNumber::from_rational(l0, p, prec));
    rep.chiform_agreement = rep.chiform_lhs.agreement_abs_prec(rep.chiform_rhs);
    return rep;
}

struct ValuationIdentityReport {
    long d = 0, p = 0;
    BigInt bracket_difference;  // sum_{chi=-1}<a> - sum_{chi=+1}<a>
    BigInt expected;            // 2 h D / w
    bool integer_identity = false;
    bool jacobi_checked = false;
    long jacobi_plus_ord = 0, jacobi_minus_ord = 0;
    bool jacobi_identity = false;
};

// ord_p of prod_{chi(a)=+1} J / prod_{chi(a)=-1} J over (Z/D)^*/<p> equals
// sum_{+}<a> - sum_{-}<a> = -2hD/w; also the exact integer identity
inline ValuationIdentityReport valuation_identity_check(long d, long p, long prec,
                                                        long q_bound = 20000) {
    ValuationIdentityReport rep;
    rep.d = d;
    rep.p = p;
    if (chi_d(d, p) != 1) throw std::invalid_argument("valuation_identity_check: p must split");
    long D = -d, h = class_number(d), w = torsion_order(d);
    BigInt plus = 0, minus = 0;
    for (long a = 1; a < D; ++a) {
        int v = chi_d(d, a);
        if (v == 1) plus += a;
        if (v == -1) minus += a;
    }
    rep.bracket_difference = minus - plus;
    rep.expected = BigInt(2) * h * D / w;
    rep.integer_identity = (rep.bracket_difference == rep.expected);

    long f = mul_order_mod(p % D, D);
    BigInt q = ipow(BigInt(p), f);
    if (q <= q_bound) {
        rep.jacobi_checked = true;
        for (long a : coset_reps_mod_p(D, p)) {
            GaussSumInstance inst(p, D, a, prec);
            long ord = jacobi_sum(inst).p_valuation;
            (chi_d(d, a) == 1 ? rep.jacobi_plus_ord : rep.jacobi_minus_ord) += ord;
        }
        rep.jacobi_identity =
            (BigInt(rep.jacobi_plus_ord) - rep.jacobi_minus_ord == -rep.expected);
    }
    return rep;
}

}  // namespace pstark
