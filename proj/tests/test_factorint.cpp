#include <doctest.h>

#include "mori/factorint.hpp"

using namespace mori;

TEST_CASE("primality: small cases and Carmichael traps") {
    CHECK(is_probable_prime(2).is_prime);
    CHECK(is_probable_prime(3).is_prime);
    CHECK_FALSE(is_probable_prime(1).is_prime);
    CHECK_FALSE(is_probable_prime(0).is_prime);
    CHECK_FALSE(is_probable_prime(561).is_prime);    // Carmichael
    CHECK_FALSE(is_probable_prime(29341).is_prime);  // Carmichael
    CHECK(is_probable_prime(269).is_prime);
    CHECK(is_probable_prime(1231).is_prime);
    CHECK(is_probable_prime(mpz_class("2305843009213693951")).is_prime);  // 2^61 - 1
    CHECK_FALSE(is_probable_prime(mpz_class("2305843009213693953")).is_prime);
    // below 2^64 the answer is deterministic
    CHECK(is_probable_prime(mpz_class("18446744073709551557")).deterministic);
}

TEST_CASE("factor_integer recovers known factorizations") {
    Factorization f = factor_integer(1076);
    REQUIRE(f.complete());
    CHECK(f.sign == 1);
    REQUIRE(f.prime_powers.size() == 2);
    CHECK(f.prime_powers[0] == std::pair<mpz_class, unsigned>{2, 2});
    CHECK(f.prime_powers[1] == std::pair<mpz_class, unsigned>{269, 1});

    Factorization g = factor_integer(mpz_class(-589934592));
    REQUIRE(g.complete());
    CHECK(g.sign == -1);
    CHECK(g.reconstruct() == -589934592);

    Factorization h = factor_integer(2869);
    REQUIRE(h.complete());
    CHECK(h.prime_powers ==
          std::vector<std::pair<mpz_class, unsigned>>{{19, 1}, {151, 1}});
}

TEST_CASE("factor_integer handles large semiprimes and perfect powers") {
    mpz_class p("1000003"), q("1000033");
    Factorization f = factor_integer(p * q);
    REQUIRE(f.complete());
    CHECK(f.prime_powers ==
          std::vector<std::pair<mpz_class, unsigned>>{{p, 1}, {q, 1}});

    mpz_class big = p * p * p;
    Factorization cube = factor_integer(big);
    REQUIRE(cube.complete());
    CHECK(cube.prime_powers == std::vector<std::pair<mpz_class, unsigned>>{{p, 3}});
}

TEST_CASE("budget exhaustion yields a composite cofactor, not an error") {
    // product of two 30-digit-ish primes with a tiny budget
    mpz_class p("340282366920938463463374607431768211507");  // 2^128 + 51 (prime)
    mpz_class q("340282366920938463463374607431768211537");
    FactorBudget tiny;
    tiny.trial_bound = 100;
    tiny.rho_iterations = 10;
    Factorization f = factor_integer(p * q, tiny);
    CHECK_FALSE(f.complete());
    CHECK(f.reconstruct() == p * q);
}

TEST_CASE("valuation by exact division") {
    CHECK(valuation(1076, 2) == 2);
    CHECK(valuation(1076, 269) == 1);
    CHECK(valuation(-144027, 3) == 2);
    CHECK(valuation(5, 7) == 0);
}

TEST_CASE("prime sieve") {
    auto ps = primes_up_to(30);
    CHECK(ps == std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(1).empty());
}
