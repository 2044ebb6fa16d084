#pragma once

// Gauss sums g(a,p) = -sum_{x in F_q^*} chi(x)^(-a) psi(Tr x) computed in the
// local tower Q_q(pi), Jacobi sums J = g^N, Stickelberger digit data, and the
// Gross-Koblitz comparison g / pi^(sum z_i) = prod_n Gamma_p(<p^n a>/N).
//
// The prime of Z[mu_N] is fixed implicitly by the Teichmuller embedding
// mu_N c Z_q; psi(1) = zeta_p with zeta_p ≡ 1 + pi mod pi^2.

#include "gamma.hpp"
#include "localfield.hpp"

namespace pstark {

struct GaussSumInstance {
    long p, N, f, a, prec;

    GaussSumInstance(long p_, long N_, long a_, long prec_) : p(p_), N(N_), a(((a_ % N_) + N_) % N_), prec(prec_) {
        if (!is_prime(p)) throw std::invalid_argument("GaussSumInstance: p not prime");
        if (p == 2) throw std::invalid_argument("GaussSumInstance: odd p required");
        if (N < 2) throw std::invalid_argument("GaussSumInstance: N >= 2 required");
        if (N % p == 0) throw std::invalid_argument("GaussSumInstance: p must not divide N");
        if (a == 0) throw std::invalid_argument("GaussSumInstance: a must be nonzero mod N");
        f = mul_order_mod(p % N, N);
        BigInt q = ipow(BigInt(p), f);
        if (mod_reduce(q, N) != 1 % N) throw std::logic_error("GaussSumInstance: q != 1 mod N");
        for (long d = 1; d < f; ++d)
            if (mod_reduce(ipow(BigInt(p), d), N) == 1) throw std::logic_error("GaussSumInstance: f not minimal");
    }

    long q_long() const {
        long q = 1;
        for (long i = 0; i < f; ++i) q *= p;
        return q;
    }

    // <p^n a>: the representative in (0, N) of p^n a
    long bracket(long n) const {
        BigInt r = mod_reduce(ipow(BigInt(p), n) * a, N);
        long v = static_cast<long>(r);
        return v == 0 ? N : v;
    }
};

struct StickelbergerData {
    std::vector<long> digits;  // z_0 .. z_{f-1}
    long digit_sum = 0;
    bool exponent_check = false;
};

// base-p expansion of (p^f - 1) <a> / N and the two-formula consistency check
inline StickelbergerData stickelberger_data(const GaussSumInstance& inst) {
    StickelbergerData out;
    BigInt val = (ipow(BigInt(inst.p), inst.f) - 1) * inst.bracket(0);
    if (val % inst.N != 0) throw std::logic_error("stickelberger_data: non-integral exponent");
    val /= inst.N;
    for (long i = 0; i < inst.f; ++i) {
        out.digits.push_back(static_cast<long>(val % inst.p));
        out.digit_sum += out.digits.back();
        val /= inst.p;
    }
    if (val != 0) throw std::logic_error("stickelberger_data: expansion overflow");
    long bsum = 0;
    for (long n = 0; n < inst.f; ++n) bsum += inst.bracket(n);
    out.exponent_check = (BigInt(out.digit_sum) * inst.N == BigInt(inst.p - 1) * bsum);
    return out;
}

namespace detail {

struct GaussWorkspace {
    UnramifiedField F;
    EisensteinTower T;
    FqContext ctx;
    FqElem gen;                                  // deterministic generator of F_q^*
    std::vector<long> trace_basis;               // Tr(theta^i)
    std::vector<std::vector<EisensteinTower::Elem>> term;  // term[j][t] = zetaN^j zeta_p^t

    GaussWorkspace(long p, long N, long f, long prec, long psi_scale)
        : F(p, f, prec), T(F), ctx(F.residue_context()), gen(fq::generator(ctx)) {
        long q = F.q_long();
        trace_basis.resize(f);
        for (long i = 0; i < f; ++i) {
            FqElem theta_i = fq::zero(ctx);
            theta_i[i] = 1;
            trace_basis[i] = fq::trace(ctx, theta_i);
        }
        auto zeta = T.zeta_p();
        if (psi_scale % p != 0 && psi_scale != 1) zeta = T.pow(zeta, ((psi_scale % p) + p) % p);
        // Teichmuller N-th root over gen^((q-1)/N)
        ZqElem zetaN = F.teichmuller_lift(fq::pow(ctx, gen, (q - 1) / N));
        std::vector<ZqElem> npow(N, F.from_integer(1));
        for (long j = 1; j < N; ++j) npow[j] = F.mul(npow[j - 1], zetaN);
        std::vector<EisensteinTower::Elem> ppow(p, T.from_zq(F.from_integer(1)));
        for (long t = 1; t < p; ++t) ppow[t] = T.mul(ppow[t - 1], zeta);
        term.assign(N, std::vector<EisensteinTower::Elem>(p, T.zero()));
        for (long j = 0; j < N; ++j)
            for (long t = 0; t < p; ++t) {
                auto x = ppow[t];
                for (auto& coord : x) coord = F.mul(npow[j], coord);
                term[j][t] = x;
            }
    }
};

}  // namespace detail

// chi(x): the Teichmuller N-th root congruent to x^((q-1)/N) mod the maximal ideal
inline ZqElem power_residue_character(const GaussSumInstance& inst, const UnramifiedField& F,
                                      const FqElem& x) {
    if (fq::is_zero(x)) throw std::domain_error("power_residue_character: x = 0");
    FqContext ctx = F.residue_context();
    return F.teichmuller_lift(fq::pow(ctx, x, (F.q_long() - 1) / inst.N));
}

struct GaussSumResult {
    EisensteinTower::Elem value;
    long pi_valuation = 0;
};

// psi_scale c gives the additive character psi_c(t) = zeta_p^(c t)
inline GaussSumResult gauss_sum_with(const GaussSumInstance& inst, long chi_exponent, bool conj_psi,
                                     long psi_scale = 1) {
    detail::GaussWorkspace W(inst.p, inst.N, inst.f, inst.prec, psi_scale);
    long q = inst.q_long();
    auto acc = W.T.zero();
    FqElem x = fq::from_code(W.ctx, 1);
    long iN = 0;
    long step = ((chi_exponent % inst.N) + inst.N) % inst.N;
    for (long i = 0; i < q - 1; ++i) {
        long t = 0;
        for (long k = 0; k < inst.f; ++k) t = (t + x[k] * W.trace_basis[k]) % inst.p;
        if (conj_psi) t = (inst.p - t) % inst.p;
        acc = W.T.add(acc, W.term[iN][t]);
        x = fq::mul(W.ctx, x, W.gen);
        iN = (iN + step) % inst.N;
    }
    GaussSumResult out;
    out.value = W.T.neg(acc);
    out.pi_valuation = W.T.pi_valuation(out.value);
    return out;
}

inline GaussSumResult gauss_sum(const GaussSumInstance& inst, long psi_scale = 1) {
    // chi(x)^(-a) with psi(Tr x)
    return gauss_sum_with(inst, -inst.a, false, psi_scale);
}

// the complex-conjugate sum: chi(x)^(+a) with psi(-Tr x)
inline GaussSumResult gauss_sum_conj(const GaussSumInstance& inst, long psi_scale = 1) {
    return gauss_sum_with(inst, inst.a, true, psi_scale);
}

struct JacobiSumResult {
    ZqElem value;   // J lies in Z_q
    long p_valuation = 0;
};

inline JacobiSumResult jacobi_sum(const GaussSumInstance& inst, long psi_scale = 1) {
    auto g = gauss_sum(inst, psi_scale);
    UnramifiedField F(inst.p, inst.f, inst.prec);
    EisensteinTower T(F);
    auto J = T.pow(g.value, inst.N);
    for (long j = 1; j < inst.p - 1; ++j)
        if (!F.is_zero(J[j]))
            throw std::logic_error("jacobi_sum: nonzero pi-coordinate, J is not in Z_q");
    JacobiSumResult out;
    out.value = J[0];
    long vpi = g.pi_valuation * inst.N;
    if (vpi % (inst.p - 1) != 0) throw std::logic_error("jacobi_sum: valuation not integral");
    out.p_valuation = vpi / (inst.p - 1);
    if (F.valuation(out.value) != out.p_valuation)
        throw std::logic_error("jacobi_sum: direct valuation mismatch");
    return out;
}

struct GrossKoblitzReport {
    long p = 0, N = 0, f = 0, a = 0;
    StickelbergerData stickelberger;
    PadicNumber lhs_unit, rhs_unit;
    long agreement_precision = 0;
    bool factorial_congruence_ok = false;
    bool pass = false;
};

inline GrossKoblitzReport gross_koblitz_verify(const GaussSumInstance& inst) {
    GrossKoblitzReport rep;
    rep.p = inst.p;
    rep.N = inst.N;
    rep.f = inst.f;
    rep.a = inst.a;
    rep.stickelberger = stickelberger_data(inst);

    UnramifiedField F(inst.p, inst.f, inst.prec);
    EisensteinTower T(F);
    auto g = gauss_sum(inst);
    if (g.pi_valuation != rep.stickelberger.digit_sum)
        throw std::logic_error("gross_koblitz: pi-valuation differs from digit sum");
    auto unit = T.shift_pi(g.value, -rep.stickelberger.digit_sum);
    // the unit must lie in Z_p: all higher pi-coordinates and all non-constant
    // polynomial coefficients vanish at working precision
    for (long j = 1; j < inst.p - 1; ++j)
        if (!F.is_zero(unit[j]))
            throw std::logic_error("gross_koblitz: unit has a nonzero pi-coordinate");
    for (long i = 1; i < inst.f; ++i)
        if (!unit[0][i].is_zero())
            throw std::logic_error("gross_koblitz: unit not in Z_p at stated precision");
    rep.lhs_unit = unit[0][0];

    rep.rhs_unit = PadicNumber::from_integer(1, inst.p, inst.prec);
    for (long n = 0; n < inst.f; ++n)
        rep.rhs_unit = rep.rhs_unit * gamma_p_rational(inst.bracket(n), inst.N, inst.p, inst.prec);

    rep.agreement_precision = rep.lhs_unit.agreement_abs_prec(rep.rhs_unit);

    BigInt zprod = 1;
    for (long z : rep.stickelberger.digits) zprod *= factorial(z);
    BigInt expect = invmod(zprod, inst.p);
    rep.factorial_congruence_ok = (rep.lhs_unit.representative(1) == expect);
    rep.pass = rep.factorial_congruence_ok &&
               rep.agreement_precision >= std::min(rep.lhs_unit.abs_prec(), rep.rhs_unit.abs_prec());
    return rep;
}

// default verification matrix of the module: (p, N) pairs covering f = 1, 2
inline std::vector<std::pair<long, long>> gauss_default_matrix() {
    return {{7, 3}, {5, 4}, {13, 3}, {5, 3}, {7, 4}, {11, 5}, {13, 7}};
}

}  // namespace pstark
