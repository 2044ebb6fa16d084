#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pstark/localfield.hpp"

using namespace pstark;

namespace {

// independent irreducibility oracle for degree <= 2: no roots in F_p
bool deg2_irreducible_scan(const std::vector<long>& m, long p) {
    for (long x = 0; x < p; ++x) {
        long v = ((x * x + m[1] * x + m[0]) % p + p) % p;
        if (v == 0) return false;
    }
    return true;
}

ZqElem random_zq(std::mt19937_64& rng, const UnramifiedField& F) {
    std::uniform_int_distribution<long> digit(0, F.p() - 1);
    ZqElem e = F.zero();
    for (long i = 0; i < F.f(); ++i) {
        BigInt u = 0;
        for (long k = 0; k < F.prec(); ++k) u = u * F.p() + digit(rng);
        e[i] = PadicNumber::from_representative(F.p(), u, F.prec());
    }
    return e;
}

}  // namespace

TEST_CASE("deterministic modulus selection") {
    auto F51 = make_unramified(5, 1, 8);
    CHECK(F51.modulus() == std::vector<long>{0, 1});  // x itself: Q_5

    auto F52 = make_unramified(5, 2, 8);
    // exhaustive scan oracle: least code c0 + 5 c1 that is irreducible
    std::vector<long> expect;
    for (long code = 0; code < 25 && expect.empty(); ++code) {
        std::vector<long> m{code % 5, code / 5, 1};
        if (deg2_irreducible_scan(m, 5)) expect = m;
    }
    CHECK(F52.modulus() == expect);
    CHECK(F52.modulus() == std::vector<long>{2, 0, 1});  // x^2 + 2

    auto F72 = make_unramified(7, 2, 8);
    std::vector<long> expect7;
    for (long code = 0; code < 49 && expect7.empty(); ++code) {
        std::vector<long> m{code % 7, code / 7, 1};
        if (deg2_irreducible_scan(m, 7)) expect7 = m;
    }
    CHECK(F72.modulus() == expect7);

    CHECK_THROWS_AS(make_unramified(6, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_unramified(5, 10, 8), std::domain_error);  // q guardrail
}

TEST_CASE("residue field basics") {
    auto F = make_unramified(5, 2, 6);
    auto ctx = F.residue_context();
    // trace: f = 1 means identity
    auto F1 = make_unramified(7, 1, 6);
    for (long x = 0; x < 7; ++x)
        CHECK(trace_to_prime_field(F1, {x}) == x);
    // prime-field element has trace f*x
    for (long x = 0; x < 5; ++x)
        CHECK(trace_to_prime_field(F, {x, 0}) == 2 * x % 5);
    // Frobenius invariance on all elements
    for (long code = 0; code < 25; ++code) {
        auto e = fq::from_code(ctx, code);
        CHECK(fq::trace(ctx, e) == fq::trace(ctx, fq::frobenius(ctx, e)));
    }
    // generator has full order
    auto g = fq::generator(ctx);
    auto one = fq::from_code(ctx, 1);
    CHECK(fq::pow(ctx, g, 24) == one);
    CHECK(fq::pow(ctx, g, 12) != one);
    CHECK(fq::pow(ctx, g, 8) != one);
}

TEST_CASE("teichmuller lift in Z_q") {
    auto F = make_unramified(5, 1, 4);
    auto t = F.teichmuller_lift({2});
    CHECK(t[0].representative(4) == 182);  // agrees with padic-core

    auto F2 = make_unramified(5, 2, 6);
    auto ctx = F2.residue_context();
    std::mt19937_64 rng(8181);
    std::uniform_int_distribution<long> cd(1, 24);
    for (int i = 0; i < 10; ++i) {
        auto r = fq::from_code(ctx, cd(rng));
        auto lift = F2.teichmuller_lift(r);
        auto pw = F2.pow(lift, 24);
        CHECK(F2.is_zero(F2.sub(pw, F2.from_integer(1))));
        CHECK(F2.residue(lift) == r);
        // multiplicativity
        auto s = fq::from_code(ctx, cd(rng));
        auto both = F2.mul(F2.teichmuller_lift(r), F2.teichmuller_lift(s));
        CHECK(F2.is_zero(F2.sub(both, F2.teichmuller_lift(fq::mul(ctx, r, s)))));
    }
    CHECK_THROWS_AS(F2.teichmuller_lift(fq::zero(ctx)), std::domain_error);
}

TEST_CASE("Zq inverse and log") {
    auto F = make_unramified(7, 2, 8);
    std::mt19937_64 rng(9292);
    for (int i = 0; i < 10; ++i) {
        auto x = random_zq(rng, F);
        if (F.is_zero(x) || F.valuation(x) != 0) continue;
        auto inv = F.inverse(x);
        auto prod = F.mul(x, inv);
        CHECK(F.is_zero(F.sub(prod, F.from_integer(1))));
        auto y = random_zq(rng, F);
        if (F.is_zero(y) || F.valuation(y) != 0) continue;
        auto l1 = F.add(F.iwasawa_log(x), F.iwasawa_log(y));
        auto l2 = F.iwasawa_log(F.mul(x, y));
        auto d = F.sub(l1, l2);
        CHECK((F.is_zero(d) || F.min_abs_prec(d) <= F.valuation(d)));
    }
    // torsion maps to zero
    auto ctx = F.residue_context();
    auto t = F.teichmuller_lift(fq::from_code(ctx, 3));
    CHECK(F.is_zero(F.iwasawa_log(t)));
}

TEST_CASE("tower relation pi^(p-1) = -p") {
    for (long p : {3L, 5L, 7L}) {
        auto F = make_unramified(p, 1, 6);
        EisensteinTower T(F);
        auto pip = T.pow(T.pi(), p - 1);
        auto expect = T.from_zq(F.from_integer(-p));
        CHECK(T.is_zero(T.sub(pip, expect)));
    }
}

TEST_CASE("pi-valuation is multiplicative") {
    auto F = make_unramified(5, 2, 6);
    EisensteinTower T(F);
    std::mt19937_64 rng(5511);
    std::uniform_int_distribution<long> shift(0, 3);
    for (int i = 0; i < 12; ++i) {
        auto a = T.from_zq(random_zq(rng, F));
        auto b = T.from_zq(random_zq(rng, F));
        a = T.shift_pi(a, shift(rng));
        b = T.shift_pi(b, shift(rng));
        if (T.is_zero(a) || T.is_zero(b)) continue;
        long va = T.pi_valuation(a), vb = T.pi_valuation(b);
        CHECK(T.pi_valuation(T.mul(a, b)) == va + vb);
    }
}

TEST_CASE("norm of pi via Teichmuller rotations") {
    // prod_j omega^j pi over j = 0..p-2 equals (-1)^p * (-p) = p
    for (long p : {5L, 7L}) {
        auto F = make_unramified(p, 1, 6);
        EisensteinTower T(F);
        long g0 = 0;
        for (long g = 2; g < p; ++g)
            if (mul_order_mod(g, p) == p - 1) { g0 = g; break; }
        auto omega = teichmuller_of_int(g0, p, 6);
        auto acc = T.from_zq(F.from_integer(1));
        for (long j = 0; j < p - 1; ++j)
            acc = T.mul(acc, T.scalar_mul(omega.pow_int(j), T.pi()));
        auto expect = T.from_zq(F.from_integer(p));
        CHECK(T.is_zero(T.sub(acc, expect)));
    }
}

TEST_CASE("zeta_p element") {
    for (long p : {3L, 5L, 7L}) {
        for (long f : {1L, 2L}) {
            auto F = make_unramified(p, f, 6);
            EisensteinTower T(F);
            auto z = T.zeta_p();
            // zeta_p^p = 1
            auto zp = T.pow(z, p);
            CHECK(T.is_zero(T.sub(zp, T.from_zq(F.from_integer(1)))));
            // zeta_p != 1: zeta - 1 has pi-valuation exactly 1
            auto zm1 = T.sub(z, T.from_zq(F.from_integer(1)));
            CHECK(T.pi_valuation(zm1) == 1);
            // zeta_p ≡ 1 + pi mod pi^2
            auto dev = T.sub(zm1, T.pi());
            CHECK((T.is_zero(dev) || T.pi_valuation(dev) >= 2));
            // 1 + zeta + ... + zeta^(p-1) = 0
            auto s = T.zero();
            auto pw = T.from_zq(F.from_integer(1));
            for (long k = 0; k < p; ++k) {
                s = T.add(s, pw);
                pw = T.mul(pw, z);
            }
            CHECK(T.is_zero(s));
        }
    }
}
