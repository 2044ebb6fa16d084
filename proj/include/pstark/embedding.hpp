#pragma once

// Designated embedding of exact cyclotomic values into the p-adic world:
// zeta_m maps to teich(g)^((q-1)/m) in Z_q, where q = p^f with f the order
// of p mod m and g is the least generator of F_q^* under the base-p code
// ordering. Composition with Frobenius raises the designated root to the
// p-th power, giving the other embeddings of the Galois orbit.

#include "cyclotomic.hpp"
#include "localfield.hpp"

namespace pstark {

class PadicEmbedding {
public:
    PadicEmbedding(long p, long m, long prec)
        : p_(p), m_(m), field_(p, m <= 2 ? 1 : mul_order_mod(p % m, m), prec) {
        if (m_ < 1) throw std::invalid_argument("PadicEmbedding: order >= 1 required");
        if (m_ % p == 0) throw std::invalid_argument("PadicEmbedding: p divides the root order");
        if ((field_.q_long() - 1) % m_ != 0) throw std::logic_error("PadicEmbedding: q != 1 mod m");
        auto ctx = field_.residue_context();
        auto g = fq::generator(ctx);
        zeta_ = field_.teichmuller_lift(fq::pow(ctx, g, (field_.q_long() - 1) / m_));
    }

    long p() const { return p_; }
    long order() const { return m_; }
    const UnramifiedField& field() const { return field_; }
    const ZqElem& zeta_image() const { return zeta_; }

    // embed a cyclotomic number whose order divides m
    ZqElem embed(const CyclotomicNumber& c) const {
        if (m_ % c.order() != 0)
            throw std::invalid_argument("PadicEmbedding: embedding order mismatch");
        CyclotomicNumber cc = c.promote(m_);
        ZqElem acc = field_.zero();
        ZqElem zp = field_.from_integer(1);
        for (size_t i = 0; i < cc.coeffs().size(); ++i) {
            const BigRat& r = cc.coeffs()[i];
            if (r != 0)
                acc = field_.add(acc, field_.scalar_mul(
                                          PadicNumber::from_rational(r, p_, field_.prec()), zp));
            if (i + 1 < cc.coeffs().size()) zp = field_.mul(zp, zeta_);
        }
        return acc;
    }

    // scalar embedding (requires f = 1)
    PadicNumber embed_padic(const CyclotomicNumber& c) const {
        if (field_.f() != 1)
            throw std::domain_error("PadicEmbedding: embedding order mismatch (f > 1)");
        return embed(c)[0];
    }

    PadicEmbedding compose_frobenius() const {
        PadicEmbedding e = *this;
        e.zeta_ = field_.pow(zeta_, p_);
        return e;
    }

private:
    long p_, m_;
    UnramifiedField field_;
    ZqElem zeta_;
};

// embed a cyclotomic number into a supplied field whose mu_(q-1) contains mu_m;
// the designated m-th root there is teich(g)^((q-1)/m) as above
inline ZqElem embed_into_field(const CyclotomicNumber& c, const UnramifiedField& F) {
    long m = c.order();
    if ((F.q_long() - 1) % m != 0)
        throw std::domain_error("embed_into_field: embedding order mismatch");
    auto ctx = F.residue_context();
    auto g = fq::generator(ctx);
    ZqElem zeta = F.teichmuller_lift(fq::pow(ctx, g, (F.q_long() - 1) / m));
    ZqElem acc = F.zero();
    ZqElem zp = F.from_integer(1);
    for (size_t i = 0; i < c.coeffs().size(); ++i) {
        if (c.coeffs()[i] != 0)
            acc = F.add(acc, F.scalar_mul(PadicNumber::from_rational(c.coeffs()[i], F.p(), F.prec()), zp));
        if (i + 1 < c.coeffs().size()) zp = F.mul(zp, zeta);
    }
    return acc;
}

}  // namespace pstark
