#pragma once

// Kubota-Leopoldt values and derivatives at s = 0, by three routes:
//   1. the closed value formula  L_p(chi omega, 0) = -(1 - chi(p)) B_{1,chi}
//   2. the Ferrero-Greenberg Gamma_p sum for L'_p(chi omega, 0), with its
//      Jacobi-sum coset variant when chi(p) = 1
//   3. an independent finite-sum interpolation oracle for L_p(chi omega, s)
//      on Z_p (the standard F-truncated Bernoulli formula), used for value
//      and difference-quotient cross-checks and for the zeta residue.
//
// chi must be primitive with p !| N; values live in the designated embedding
// field Q_q of the character order (scalars when the order divides p - 1).

#include "dirichlet.hpp"
#include "embedding.hpp"
#include "gamma.hpp"
#include "gauss.hpp"

namespace pstark {

struct ZqValue {
    UnramifiedField field;
    ZqElem value;

    // scalar extraction: all non-constant coordinates must vanish
    PadicNumber scalar() const {
        for (long i = 1; i < field.f(); ++i)
            if (!value[i].is_zero())
                throw std::domain_error("ZqValue::scalar: value is not in Q_p");
        return value[0];
    }
};

namespace detail {

inline void require_lp_input(const DirichletCharacter& chi, long p) {
    if (chi.conductor() != chi.modulus())
        throw std::invalid_argument("lp: primitive character required");
    if (chi.modulus() % p == 0) throw std::invalid_argument("lp: p must not divide N");
    if (!chi.odd()) throw std::invalid_argument("lp: odd character required");
}

}  // namespace detail

// L_p(chi omega, 0) = -(1 - chi(p)) B_{1,chi}, exact cyclotomic arithmetic
// with the embedding applied at the outermost step
inline ZqValue lp_value_at_zero(const DirichletCharacter& chi, long p, long prec,
                                const PadicEmbedding* emb = nullptr) {
    detail::require_lp_input(chi, p);
    PadicEmbedding e = emb ? *emb : PadicEmbedding(p, chi.order(), prec);
    CyclotomicNumber one = CyclotomicNumber::from_rational(BigRat(1), chi.order());
    CyclotomicNumber exact = BigRat(-1) * ((one - chi.value(p)) * bernoulli_b1(chi));
    return ZqValue{e.field(), e.embed(exact)};
}

// L'_p(chi omega, 0) = sum_a chi(a) log_p Gamma_p(a/N) + (1 - chi(p)) B_1 log_p N
inline ZqValue lp_derivative_gamma(const DirichletCharacter& chi, long p, long prec,
                                   const PadicEmbedding* emb = nullptr) {
    detail::require_lp_input(chi, p);
    long N = chi.modulus();
    PadicEmbedding e = emb ? *emb : PadicEmbedding(p, chi.order(), prec);
    const UnramifiedField& F = e.field();
    ZqElem acc = F.zero();
    for (long a = 1; a <= N; ++a) {
        if (chi.value_exp(a % N) < 0) continue;
        PadicNumber lg = iwasawa_log(gamma_p_rational(a, N, p, prec));
        acc = F.add(acc, F.scalar_mul(lg, e.embed(chi.value(a))));
    }
    CyclotomicNumber one = CyclotomicNumber::from_rational(BigRat(1), chi.order());
    CyclotomicNumber tail = (one - chi.value(p)) * bernoulli_b1(chi);
    if (!tail.is_zero()) {
        PadicNumber logN = iwasawa_log(PadicNumber::from_integer(N, p, prec));
        acc = F.add(acc, F.scalar_mul(logN, e.embed(tail)));
    }
    return ZqValue{F, acc};
}

// coset representatives of (Z/N)^* / <p>, ascending
inline std::vector<long> coset_reps_mod_p(long N, long p) {
    std::vector<bool> seen(N, false);
    std::vector<long> reps;
    for (long a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1 || seen[a]) continue;
        reps.push_back(a);
        long x = a;
        do {
            seen[x] = true;
            x = static_cast<long>(mod_reduce(BigInt(x) * p, N));
        } while (x != a);
    }
    return reps;
}

// L'_p(chi omega, 0) = (1/N) sum_{a in (Z/N)^*/<p>} chi(a) log_p J(a, p),
// defined when chi(p) = 1
inline ZqValue lp_derivative_jacobi(const DirichletCharacter& chi, long p, long prec) {
    detail::require_lp_input(chi, p);
    long N = chi.modulus();
    if (chi.value_exp(p % N) != 0)
        throw std::invalid_argument("lp_derivative_jacobi: chi(p) = 1 required");
    long fN = mul_order_mod(p % N, N);
    UnramifiedField F(p, fN, prec);
    if ((F.q_long() - 1) % chi.order() != 0)
        throw std::domain_error("lp_derivative_jacobi: embedding order mismatch");
    ZqElem acc = F.zero();
    for (long a : coset_reps_mod_p(N, p)) {
        GaussSumInstance inst(p, N, a, prec);
        auto J = jacobi_sum(inst);
        ZqElem lg = F.iwasawa_log(J.value);
        acc = F.add(acc, F.mul(embed_into_field(chi.value(a), F), lg));
    }
    PadicNumber invN = PadicNumber::from_integer(N, p, prec).inverse();
    return ZqValue{F, F.scalar_mul(invN, acc)};
}

namespace detail {

// core of the interpolation formula: (1/(F(s-1))) * sum over a of
// theta(a) <a>^(1-s) sum_j C(1-s, j) (F/a)^j B_j, with theta supplied per a
template <typename ThetaFn>
ZqElem lp_interpolation_core(const UnramifiedField& K, ThetaFn theta, long Fmod, long p,
                             const PadicNumber& s, long W) {
    auto Bn = bernoulli_numbers(W + 4);
    PadicNumber one = PadicNumber::from_integer(1, p, W);
    PadicNumber oms = one - s;  // 1 - s
    ZqElem total = K.zero();
    for (long a = 1; a <= Fmod; ++a) {
        if (a % p == 0) continue;
        ZqElem th = theta(a);
        if (K.is_zero(th)) continue;
        PadicNumber la = iwasawa_log(PadicNumber::from_integer(a, p, W));
        PadicNumber aexp = exp_p(oms * la);  // <a>^(1-s)
        // j-sum with iteratively built C(1-s, j)
        PadicNumber jsum = PadicNumber::zero_to(p, W);
        PadicNumber binom = one;
        PadicNumber fa = PadicNumber::from_rational(Fmod, a, p, W);
        PadicNumber fapow = one;
        for (long j = 0; j <= W + 2; ++j) {
            if (j > 0) {
                binom = binom * (oms - PadicNumber::from_integer(j - 1, p, W)) /
                        PadicNumber::from_integer(j, p, W + 4);
                fapow = fapow * fa;
            }
            if (Bn[j] == 0) continue;
            jsum = jsum + binom * fapow * PadicNumber::from_rational(Bn[j], p, W + 2);
        }
        total = K.add(total, K.scalar_mul(aexp * jsum, th));
    }
    PadicNumber sm1 = s - one;
    PadicNumber scale = (PadicNumber::from_integer(Fmod, p, W) * sm1).inverse();
    return K.scalar_mul(scale, total);
}

}  // namespace detail

// independent oracle: L_p(chi omega, s) for s in Z_p (away from s = 1)
inline ZqValue lp_interpolation_oracle(const DirichletCharacter& chi, long p,
                                       const PadicNumber& s, long prec,
                                       const PadicEmbedding* emb = nullptr) {
    detail::require_lp_input(chi, p);
    long N = chi.modulus();
    PadicEmbedding e = emb ? *emb : PadicEmbedding(p, chi.order(), prec);
    const UnramifiedField& K = e.field();
    long W = prec;
    // theta(a) = chi(a) omega(a)
    auto theta = [&](long a) -> ZqElem {
        if (chi.value_exp(a % N) < 0) return K.zero();
        PadicNumber om = teichmuller_of_int(a, p, W);
        return K.scalar_mul(om, e.embed(chi.value(a)));
    };
    return ZqValue{K, detail::lp_interpolation_core(K, theta, N * p, p, s, W)};
}

// p-adic zeta (trivial branch): theta(a) = 1, F = p; simple pole at s = 1
inline PadicNumber zeta_p_oracle(long p, const PadicNumber& s, long prec) {
    UnramifiedField K(p, 1, prec);
    auto theta = [&](long) { return K.from_integer(1); };
    return detail::lp_interpolation_core(K, theta, p, p, s, prec)[0];
}

// residue of zeta_p at s = 1 as lim eps * zeta_p(1 + eps), evaluated at the
// two step sizes p^A and p^(A+1) with a Richardson-style consistency check
inline PadicNumber zeta_p_residue(long p, long A, long prec) {
    long W = prec + A + 2;
    auto estimate = [&](long k) {
        PadicNumber eps = PadicNumber::from_integer(1, p, W).shift_val(k);
        PadicNumber one = PadicNumber::from_integer(1, p, W);
        return eps * zeta_p_oracle(p, one + eps, W);
    };
    PadicNumber r1 = estimate(A), r2 = estimate(A + 1);
    if (r1.agreement_abs_prec(r2) < A - 1)
        throw std::logic_error("zeta_p_residue: step sizes disagree beyond tolerance");
    return r2.truncate_abs(A);
}

// difference quotient (L_p(chi omega, h) - L_p(chi omega, 0)) / h at h = p^A
inline ZqValue lp_derivative_quotient(const DirichletCharacter& chi, long p, long A, long prec,
                                      const PadicEmbedding* emb = nullptr) {
    long W = A + prec + 4;
    PadicEmbedding e = emb ? *emb : PadicEmbedding(p, chi.order(), W);
    PadicNumber h = PadicNumber::from_integer(1, p, W).shift_val(A);
    ZqValue at_h = lp_interpolation_oracle(chi, p, h, W, &e);
    ZqValue at_0 = lp_interpolation_oracle(chi, p, PadicNumber::zero(p), W, &e);
    const UnramifiedField& K = at_h.field;
    ZqElem diff = K.sub(at_h.value, at_0.value);
    ZqElem quot = K.scalar_mul(h.inverse(), diff);
    // truncate to the mathematically certified precision min(A, tracked)
    return ZqValue{K, K.truncate_abs(quot, A)};
}

// agreement precision between two values in the same field
inline long zq_agreement(const ZqValue& x, const ZqValue& y) {
    const UnramifiedField& K = x.field;
    ZqElem d = K.sub(x.value, y.value);
    long prec = std::min(K.min_abs_prec(x.value), K.min_abs_prec(y.value));
    if (K.is_zero(d)) return std::min(prec, K.min_abs_prec(d));
    return std::min(prec, K.valuation(d));
}

}  // namespace pstark
