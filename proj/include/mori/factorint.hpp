#ifndef MORI_FACTORINT_HPP
#define MORI_FACTORINT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mori {

// Default seed for every randomized subroutine (equal-degree splitting,
// Pollard rho, Miller-Rabin rounds above 2^64).  The CLI overrides it with
// --seed; certificates record whichever value was used.
inline constexpr std::uint64_t kDefaultSeed = 0x6d6f7269;

struct FactorBudget {
    // Trial division bound; every prime below it is removed first.
    unsigned long trial_bound = 1'000'000;
    // Total Pollard-Brent iterations allowed across all attempts.
    unsigned long rho_iterations = 5'000'000;
};

struct PrimalityResult {
    bool is_prime = false;
    // true when the answer is unconditional (n < 2^64 uses the fixed
    // witness set; larger n gets 64 randomized rounds and stays "probable").
    bool deterministic = true;
};

PrimalityResult is_probable_prime(const mpz_class& n,
                                  std::uint64_t seed = kDefaultSeed);

// sign * prod(prime^exponent) * cofactor, cofactor == 1 iff complete.
// The cofactor is composite (or a probable-prime the budget could not
// certify splitting of) and carries no valuation information.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<mpz_class, unsigned>> prime_powers;
    mpz_class cofactor{1};
    bool any_probable_prime = false;

    bool complete() const { return cofactor == 1; }
    mpz_class reconstruct() const;
};

Factorization factor_integer(const mpz_class& n,
                             const FactorBudget& budget = {},
                             std::uint64_t seed = kDefaultSeed);

// Exact multiplicity of `p` in `n` (n != 0), by repeated exact division.
unsigned valuation(const mpz_class& n, const mpz_class& p);

// Sieve of Eratosthenes; ascending primes <= bound.
std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace mori

#endif
