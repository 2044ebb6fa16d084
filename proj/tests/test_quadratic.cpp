#include <catch2/catch_amalgamated.hpp>

#include "pstark/quadratic.hpp"

using namespace pstark;

TEST_CASE("fundamental discriminants and class numbers") {
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-23));
    CHECK_FALSE(is_fundamental_discriminant(-9));
    CHECK_FALSE(is_fundamental_discriminant(-12));
    CHECK_FALSE(is_fundamental_discriminant(5));

    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-7) == 1);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-47) == 5);
    CHECK(class_number(-163) == 1);
    CHECK_THROWS_AS(class_number(-12), std::invalid_argument);
}

TEST_CASE("torsion order matches unit enumeration") {
    for (long d : {-3L, -4L, -7L, -8L, -11L, -23L})
        CHECK(static_cast<long>(torsion_units(d).size()) == torsion_order(d));
}

TEST_CASE("kronecker character matches the table character") {
    for (long d : {-3L, -4L, -7L, -8L, -11L}) {
        auto chi = kronecker_character(d);
        CHECK(chi.odd());
        CHECK(chi.conductor() == -d);
        // multiplicativity of the symbol itself
        long D = -d;
        for (long a = 1; a < D; ++a)
            for (long b = 1; b < D; ++b)
                CHECK(chi_d(d, a * b % D) == chi_d(d, a) * chi_d(d, b));
    }
}

TEST_CASE("dirichlet class number identity") {
    auto r3 = dirichlet_check(-3);
    CHECK(r3.b1_identity);
    CHECK(r3.minus_b1 == BigRat(1, 3));
    auto r4 = dirichlet_check(-4);
    CHECK(r4.b1_identity);
    CHECK(r4.minus_b1 == BigRat(1, 2));
    auto r23 = dirichlet_check(-23);
    CHECK(r23.b1_identity);
    CHECK(r23.minus_b1 == BigRat(3));  // 2*3/2
    for (long d : {-3L, -4L, -7L, -8L, -11L, -15L, -20L, -23L, -24L}) {
        auto r = dirichlet_check(d);
        CHECK(r.b1_identity);
        CHECK(r.bracket_identity);
    }
}

TEST_CASE("split prime generators") {
    // d = -4, p = 5: alpha of norm 5 embeds with valuation 1
    auto g = split_prime_generator(-4, 5, 8);
    CHECK(g.alpha.norm() == 5);
    CHECK(g.iota_alpha.valuation() == 1);
    CHECK(g.iota_bar.valuation() == 0);
    // iota(alpha) * iota(bar alpha) = p^h exactly
    auto prod = g.iota_alpha * g.iota_bar;
    CHECK(prod.valuation() == 1);
    CHECK(prod.unit_digits() == 1);

    // d = -3, p = 7
    auto g37 = split_prime_generator(-3, 7, 8);
    CHECK(g37.alpha.norm() == 7);
    CHECK(g37.iota_alpha.valuation() == 1);

    // d = -23, p = 3: norm 27 generator
    auto g233 = split_prime_generator(-23, 3, 8);
    CHECK(g233.alpha.norm() == 27);
    CHECK(g233.iota_alpha.valuation() == 3);
    CHECK(g233.iota_bar.valuation() == 0);

    CHECK_THROWS_AS(split_prime_generator(-4, 7, 8), std::invalid_argument);  // 7 inert
    CHECK_THROWS_AS(split_prime_generator(-3, 3, 8), std::invalid_argument);  // ramified
}

TEST_CASE("rank one identity") {
    auto r = verify_rank_one(-3, 7, 10);
    CHECK(r.pass);
    CHECK(r.unit_invariance);
    CHECK(r.embedding_swap_consistent);
    CHECK(r.chiform_agreement >= 10 - precision_slack(7, 10) - 1);

    auto r2 = verify_rank_one(-4, 5, 10);
    CHECK(r2.pass);
    CHECK(r2.unit_invariance);
    CHECK(r2.embedding_swap_consistent);

    auto r3 = verify_rank_one(-3, 13, 9);
    CHECK(r3.pass);
    CHECK(r3.embedding_swap_consistent);
}

TEST_CASE("valuation identities") {
    auto v3 = valuation_identity_check(-3, 7, 6);
    CHECK(v3.integer_identity);
    CHECK(v3.bracket_difference == 1);  // <2> - <1> = 1 = 2hD/w
    CHECK(v3.jacobi_checked);
    CHECK(v3.jacobi_identity);

    auto v4 = valuation_identity_check(-4, 5, 6);
    CHECK(v4.integer_identity);
    CHECK(v4.bracket_difference == 2);
    CHECK(v4.jacobi_checked);
    CHECK(v4.jacobi_identity);

    auto v7 = valuation_identity_check(-7, 11, 5);
    CHECK(v7.integer_identity);
    CHECK(v7.jacobi_checked);  // q = 11^3 = 1331
    CHECK(v7.jacobi_identity);

    auto v23 = valuation_identity_check(-23, 3, 5);
    CHECK(v23.integer_identity);
    CHECK(v23.expected == 69);  // 2*3*23/2
}

TEST_CASE("rank one precision honesty") {
    auto lo = verify_rank_one(-4, 5, 7);
    auto hi = verify_rank_one(-4, 5, 11);
    long A = std::min(lo.lhs.abs_prec(), lo.rhs.abs_prec());
    CHECK(hi.lhs.truncate_abs(A).representative(A) == lo.lhs.truncate_abs(A).representative(A));
    CHECK(hi.rhs.truncate_abs(A).representative(A) == lo.rhs.truncate_abs(A).representative(A));
}
