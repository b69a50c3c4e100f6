#include <doctest.h>

#include "mori/quadruple.hpp"

using namespace mori;

TEST_CASE("validate_quadruple: worked examples") {
    CHECK(validate_quadruple(1, 3, 2, 1).validation.valid());
    CHECK(validate_quadruple(2, 5, 2, 1).validation.valid());

    MoriQuadruple bad = validate_quadruple(2, 7, 3, 1);
    CHECK_FALSE(bad.validation.valid());
    CHECK_FALSE(bad.validation.divisors_of_g_divide_half_p_minus_1);
    CHECK(bad.validation.b_primitive_root);  // 3 is primitive mod 7

    // 4 = 1 mod 3 is not a primitive root
    CHECK_FALSE(validate_quadruple(1, 3, 4, 1).validation.valid());
    // even c violates (iii)
    CHECK_FALSE(validate_quadruple(1, 3, 2, 2).validation.valid());
    // p not prime
    CHECK_FALSE(validate_quadruple(1, 9, 2, 1).validation.valid());
    CHECK_THROWS_AS(validate_quadruple(0, 3, 2, 1), std::invalid_argument);
}

TEST_CASE("validate records Mori's dropped congruence c = -p mod 4") {
    // c = 1, p = 3: c + p = 4 = 0 mod 4
    CHECK(validate_quadruple(1, 3, 2, 1).validation.c_congruent_minus_p_mod_4);
    // c = 1, p = 5: c + p = 6 != 0 mod 4
    CHECK_FALSE(validate_quadruple(2, 5, 2, 1).validation.c_congruent_minus_p_mod_4);
}

TEST_CASE("primality above 2^64 is flagged as probabilistic") {
    mpz_class mersenne89("618970019642690137449562111");  // 2^89 - 1
    MoriQuadruple q = validate_quadruple(1, mersenne89, 3, 1);
    CHECK(q.validation.p_odd_prime);
    CHECK(q.validation.p_probable_only);
    // below 2^64 stays deterministic
    CHECK_FALSE(validate_quadruple(1, 3, 2, 1).validation.p_probable_only);
}

TEST_CASE("negative b and c are accepted when the conditions hold") {
    // -3 = 2 mod 5 is primitive; c = -1 odd, gcds fine
    MoriQuadruple q = validate_quadruple(2, 5, -3, -1);
    CHECK(q.validation.valid());
}

TEST_CASE("build_trinomials on the worked examples") {
    TrinomialPair t1 = build_trinomials(validate_quadruple(1, 3, 2, 1));
    CHECK(t1.f == IntPolynomial::parse("[-3, -8, 0, 4] / 2^2"));
    CHECK(t1.u == Trinomial{3, -8, -6});

    TrinomialPair t2 = build_trinomials(validate_quadruple(2, 5, 2, 1));
    CHECK(t2.u == Trinomial{5, -32, -40});
    CHECK(t2.f.degree() == 5);
    CHECK(t2.f.is_monic());
}

TEST_CASE("d0_closed_form: worked examples") {
    DiscriminantDecomposition d1 = d0_closed_form(validate_quadruple(1, 3, 2, 1));
    CHECK(d1.delta == 1076);
    CHECK(d1.m == 1);
    CHECK(d1.d0 == 269);
    CHECK_FALSE(d1.delta_is_square);

    DiscriminantDecomposition d2 = d0_closed_form(validate_quadruple(2, 5, 2, 1));
    CHECK(d2.delta == -589934592);
    CHECK(d2.m == 6);
    CHECK(d2.d0 == -144027);
    CHECK_FALSE(d2.delta_is_square);
}

TEST_CASE("odd_valuation_primes") {
    DiscriminantDecomposition d2 = d0_closed_form(validate_quadruple(2, 5, 2, 1));
    factor_discriminant(d2, {});
    auto odd = d2.odd_valuation_primes();
    REQUIRE(odd.size() == 2);  // 3 divides to even order 2
    CHECK(odd[0] == std::pair<mpz_class, unsigned>{13, 1});
    CHECK(odd[1] == std::pair<mpz_class, unsigned>{1231, 1});

    DiscriminantDecomposition d1 = d0_closed_form(validate_quadruple(1, 3, 2, 1));
    factor_discriminant(d1, {});
    auto odd1 = d1.odd_valuation_primes();
    REQUIRE(odd1.size() == 1);
    CHECK(odd1[0].first == 269);

    auto dec = decompose_trinomial_discriminant(Trinomial{5, -1, -1});
    REQUIRE(dec.has_value());
    CHECK(dec->delta == 2869);
    factor_discriminant(*dec, {});
    auto odd2 = dec->odd_valuation_primes();
    REQUIRE(odd2.size() == 2);
    CHECK(odd2[0].first == 19);
    CHECK(odd2[1].first == 151);
}

TEST_CASE("odd_valuation_primes on raw discriminants") {
    auto r1 = odd_valuation_primes(1076);
    CHECK(r1.unfactored_cofactor == 1);
    CHECK(r1.primes == std::vector<std::pair<mpz_class, unsigned>>{{269, 1}});

    auto r2 = odd_valuation_primes(mpz_class(-589934592));
    CHECK(r2.primes ==
          std::vector<std::pair<mpz_class, unsigned>>{{13, 1}, {1231, 1}});

    auto r3 = odd_valuation_primes(2869);
    CHECK(r3.primes ==
          std::vector<std::pair<mpz_class, unsigned>>{{19, 1}, {151, 1}});

    // budget exhaustion: partial result with a composite cofactor
    mpz_class p("340282366920938463463374607431768211507");
    mpz_class q("340282366920938463463374607431768211537");
    FactorBudget tiny{100, 10};
    auto r4 = odd_valuation_primes(p * q * 3, tiny);
    CHECK(r4.primes == std::vector<std::pair<mpz_class, unsigned>>{{3, 1}});
    CHECK(r4.unfactored_cofactor != 1);

    CHECK_THROWS_AS(odd_valuation_primes(0), std::invalid_argument);
}

TEST_CASE("find_transposition_prime: worked examples") {
    SUBCASE("g = 1: ell = 269") {
        MoriQuadruple q = validate_quadruple(1, 3, 2, 1);
        DiscriminantDecomposition dec = d0_closed_form(q);
        factor_discriminant(dec, {});
        auto res = find_transposition_prime(build_trinomials(q).u, dec, q.p);
        REQUIRE(res.witness.has_value());
        CHECK(res.witness->ell == 269);
        CHECK(res.witness->double_root == 167);
        CHECK(res.witness->delta_valuation == 1);
        CHECK(res.witness->others_verified.empty());
    }
    SUBCASE("g = 2: ell = 13 with gamma = 9; 1231 also passes") {
        MoriQuadruple q = validate_quadruple(2, 5, 2, 1);
        DiscriminantDecomposition dec = d0_closed_form(q);
        factor_discriminant(dec, {});
        auto res = find_transposition_prime(build_trinomials(q).u, dec, q.p);
        REQUIRE(res.witness.has_value());
        CHECK(res.witness->ell == 13);
        CHECK(res.witness->double_root == 9);
        REQUIRE(res.witness->others_verified.size() == 1);
        CHECK(res.witness->others_verified[0].first == 1231);
    }
    SUBCASE("x^5 - x - 1: ell = 19 with gamma = 13") {
        Trinomial u{5, -1, -1};
        auto dec = decompose_trinomial_discriminant(u);
        REQUIRE(dec.has_value());
        factor_discriminant(*dec, {});
        auto res = find_transposition_prime(u, *dec, std::nullopt);
        REQUIRE(res.witness.has_value());
        CHECK(res.witness->ell == 19);
        CHECK(res.witness->double_root == 13);
        REQUIRE(res.witness->others_verified.size() == 1);
        CHECK(res.witness->others_verified[0].first == 151);
    }
}

TEST_CASE("budget exhaustion degrades to a partial result") {
    MoriQuadruple q = validate_quadruple(1, 3, 2, 1);
    DiscriminantDecomposition dec = d0_closed_form(q);
    // deliberately empty factor data with a composite cofactor
    dec.d0_factors.sign = 1;
    dec.d0_factors.cofactor = dec.d0;
    auto res = find_transposition_prime(build_trinomials(q).u, dec, q.p);
    CHECK_FALSE(res.witness.has_value());
    CHECK(res.budget_exhausted);
}

TEST_CASE("mod_p_pattern: worked examples") {
    CycleWitness w1 = mod_p_pattern(validate_quadruple(1, 3, 2, 1));
    CHECK(w1.pattern.degree_partition() == std::vector<unsigned>{2, 1});
    CHECK(w1.lang_criterion_holds);

    CycleWitness w2 = mod_p_pattern(validate_quadruple(2, 5, 2, 1));
    CHECK(w2.pattern.degree_partition() == std::vector<unsigned>{4, 1});
    CHECK(w2.lang_criterion_holds);
}

TEST_CASE("search_quadruples enumerates lexicographically") {
    auto qs = search_quadruples(1, {3, 3}, {1, 5}, {1, 1});
    // b = 2 primitive mod 3, b = 5 = 2 mod 3 primitive too; 4 = 1 is not
    std::vector<mpz_class> bs;
    for (const auto& q : qs) bs.push_back(q.b);
    CHECK(bs == std::vector<mpz_class>{2, 5});

    CHECK(search_quadruples(1, {3, 2}, {1, 5}, {1, 1}).empty());

    // g = 2, p = 7 fails condition (i); only p = 5 contributes
    auto qs2 = search_quadruples(2, {5, 7}, {2, 3}, {1, 1});
    for (const auto& q : qs2) CHECK(q.p == 5);
    CHECK(qs2.size() == 2);  // b = 2 and b = 3 both primitive mod 5
}

TEST_CASE("parallel search merges deterministically") {
    auto seq = search_quadruples(1, {3, 40}, {1, 8}, {1, 3});
    auto par = search_quadruples(1, {3, 40}, {1, 8}, {1, 3}, {}, kDefaultSeed, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].p == par[i].p);
        CHECK(seq[i].b == par[i].b);
        CHECK(seq[i].c == par[i].c);
    }
}
