#ifndef MORI_QUADRUPLE_HPP
#define MORI_QUADRUPLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mori/factorint.hpp"
#include "mori/finfield.hpp"
#include "mori/intpoly.hpp"

namespace mori {

struct QuadrupleValidation {
    bool p_odd_prime = false;
    bool p_probable_only = false;  // primality above 2^64 is probabilistic
    bool divisors_of_g_divide_half_p_minus_1 = false;  // condition (i)
    bool b_primitive_root = false;                     // condition (ii)
    bool c_odd_and_coprime = false;                    // condition (iii)
    // Mori's extra congruence c = -p (mod 4); recorded, not required.
    bool c_congruent_minus_p_mod_4 = false;
    std::vector<std::string> failures;

    bool valid() const {
        return p_odd_prime && divisors_of_g_divide_half_p_minus_1 &&
               b_primitive_root && c_odd_and_coprime;
    }
};

/// (g, p, b, c) defining f = x^(2g+1) - b x - pc/4.
struct MoriQuadruple {
    unsigned g = 0;
    mpz_class p;
    mpz_class b;
    mpz_class c;
    QuadrupleValidation validation;

    unsigned degree() const { return 2 * g + 1; }
};

// Checks: p an odd prime; (i) every prime divisor of g divides (p-1)/2;
// (ii) b mod p is a primitive root; (iii) c odd and
// gcd(b,c) = gcd(b,2g+1) = gcd(c,g) = 1.  g == 0 is rejected outright.
MoriQuadruple validate_quadruple(unsigned g, const mpz_class& p, const mpz_class& b,
                                 const mpz_class& c, const FactorBudget& budget = {},
                                 std::uint64_t seed = kDefaultSeed);

// f = x^(2g+1) - b x - pc/4 over Z[1/2] and its integral companion
// u = 2^(2g+1) f(x/2) = x^(2g+1) - 2^(2g) b x - 2^(2g-1) pc.
struct TrinomialPair {
    IntPolynomial f;
    Trinomial u;
};
TrinomialPair build_trinomials(const MoriQuadruple& q);

/// Delta(u) = 2^(2M) * D0 with D0 odd; factor data may be partial.
struct DiscriminantDecomposition {
    mpz_class delta;   // Delta(u)
    unsigned long m = 0;  // M with Delta = 2^(2M) D0
    mpz_class d0;      // odd, = 1 mod 4 for valid quadruples
    bool delta_is_square = false;
    Factorization d0_factors;  // of |D0|

    // odd primes dividing Delta to odd order, ascending
    std::vector<std::pair<mpz_class, unsigned>> odd_valuation_primes() const;
};

// Closed form D0 = (-1)^g [(2g+1)((2g+1)^g (pc)^g)^2 - 2^(6g) g^(2g) b^(2g+1)],
// M = g(2g-1); cross-checked against both discriminant routes on u.
// Throws on any cross-check failure (an internal error, not bad input).
DiscriminantDecomposition d0_closed_form(const MoriQuadruple& q);

// Fills d0_factors by trial division + Pollard-Brent within the budget.
void factor_discriminant(DiscriminantDecomposition& dec, const FactorBudget& budget,
                         std::uint64_t seed = kDefaultSeed);

struct OddValuationResult {
    std::vector<std::pair<mpz_class, unsigned>> primes;  // v odd, ascending
    mpz_class unfactored_cofactor;  // 1 when the factorization completed
};

// Odd primes dividing delta to odd order, within the factorization budget;
// a nontrivial cofactor is a partial result, not an error.
OddValuationResult odd_valuation_primes(const mpz_class& delta,
                                        const FactorBudget& budget = {},
                                        std::uint64_t seed = kDefaultSeed);

// Decomposition for a general trinomial (requires v2(Delta) even so that
// Delta = 2^(2M) D0 with D0 odd); nullopt when v2 is odd.
std::optional<DiscriminantDecomposition> decompose_trinomial_discriminant(
    const Trinomial& u);

struct TranspositionWitness {
    mpz_class ell;
    mpz_class double_root;  // gamma in F_ell
    unsigned delta_valuation = 0;
    FactorPattern pattern;  // of u mod ell
    // every other odd-valuation prime that also passed the per-ell check
    std::vector<std::pair<mpz_class, mpz_class>> others_verified;
};

struct TranspositionSearchResult {
    std::optional<TranspositionWitness> witness;
    bool budget_exhausted = false;  // no prime found and cofactor != 1
    std::string note;
};

// Smallest odd prime ell (excluding `exclude`, normally p) with odd
// v_ell(Delta), together with the verified unique double root.
TranspositionSearchResult find_transposition_prime(
    const Trinomial& u, const DiscriminantDecomposition& dec,
    const std::optional<mpz_class>& exclude = std::nullopt,
    std::uint64_t seed = kDefaultSeed);

struct CycleWitness {
    mpz_class p;
    FactorPattern pattern;          // of f mod p: {(1,1), (2g,1)}
    bool lang_criterion_holds = false;  // irreducibility of x^(2g) - b by the
                                        // power-residue criterion
};

// f mod p = x (x^(2g) - b); irreducibility of the degree-2g factor is
// established both by factor() and by the power-residue criterion, and the
// two must agree (a mismatch throws).
CycleWitness mod_p_pattern(const MoriQuadruple& q, std::uint64_t seed = kDefaultSeed);

struct SearchRange {
    mpz_class lo;
    mpz_class hi;  // inclusive
};

// All valid quadruples with fixed g and p, b, c in the given inclusive
// ranges, in lexicographic (p, b, c) order.
std::vector<MoriQuadruple> search_quadruples(unsigned g, const SearchRange& p_range,
                                             const SearchRange& b_range,
                                             const SearchRange& c_range,
                                             const FactorBudget& budget = {},
                                             std::uint64_t seed = kDefaultSeed,
                                             unsigned jobs = 1);

}  // namespace mori

#endif
