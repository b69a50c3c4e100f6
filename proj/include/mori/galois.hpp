#ifndef MORI_GALOIS_HPP
#define MORI_GALOIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mori/padic.hpp"
#include "mori/permgroup.hpp"
#include "mori/quadruple.hpp"

namespace mori {

enum class Conclusion {
    FullSymmetric,
    ConditionalFullSymmetric,
    Inconclusive,
};

std::string to_string(Conclusion c);

struct IrreducibilityWitness {
    // Mori route: a 2-adic Newton polygon with the Eisenstein-Dumas gcd.
    std::optional<NewtonPolygon> polygon;
    long span_gcd = 0;
    // General-trinomial route: a prime where the reduction is irreducible.
    std::optional<mpz_class> full_degree_prime;
    bool verified = false;
};

struct RamificationReport {
    bool splitting_field_ramified_at_2 = false;
    bool sqrt_disc_unramified_at_2 = false;  // D0 = 1 mod 4
    // the A_n-extension over Q(sqrt(Delta)) is ramified at every divisor of
    // 2 (it is ramified over Q at 2 while Q(sqrt(Delta)) is not) ...
    bool relative_ramified_at_divisors_of_2 = false;
    // ... and unramified at all divisors of every odd prime
    bool odd_primes_unramified_over_sqrt_disc = false;
    std::string relative_group_over_sqrt_disc;  // "A_n"
};

struct GaloisCertificate {
    // input: either a validated quadruple or a raw trinomial
    std::optional<MoriQuadruple> quadruple;
    Trinomial trinomial;            // u, the integral companion
    std::optional<IntPolynomial> f_polynomial;  // Mori f over Z[1/2]

    IrreducibilityWitness irreducibility;
    std::optional<CycleWitness> cycle;          // (2g)-cycle from f mod p
    std::optional<mpz_class> n_minus_1_cycle_prime;  // general-trinomial route
    std::optional<TranspositionWitness> transposition;
    std::optional<DiscriminantDecomposition> discriminant;

    Conclusion conclusion = Conclusion::Inconclusive;
    std::string failing_stage;  // set when Inconclusive
    std::string status_note;    // e.g. what a Conditional certificate lacks
    RamificationReport ramification;
    std::string group_fact_basis;
    std::uint64_t seed = kDefaultSeed;
    // general-trinomial route only: the prime bound used for the two scans
    unsigned long cycle_scan_bound = 0;
};

struct CertifyOptions {
    std::uint64_t seed = kDefaultSeed;
    FactorBudget budget;
    unsigned long cycle_scan_bound = 10'000;  // general-trinomial prime scan
    // verification path: reuse a stored factorization of |D0| (resp. N(D0))
    // instead of factoring again
    std::optional<Factorization> injected_discriminant_factors;
};

// Full pipeline on a validated quadruple: Newton polygon at 2, the mod-p
// (2g)-cycle, discriminant decomposition and the transposition prime.
GaloisCertificate certify(const MoriQuadruple& q, const CertifyOptions& opts = {});

struct TrinomialHypothesisReport {
    bool b_nonzero = false;
    bool c_nonzero = false;
    bool squarefree = false;
    bool gcd_b_c_power_of_2 = false;
    bool gcd_n_b_power_of_2 = false;
    bool gcd_n1_c_power_of_2 = false;
    bool even_two_valuation = false;
    bool d0_1_mod_4 = false;
    bool delta_not_square = false;
    std::vector<std::string> failures;
    bool all() const {
        return b_nonzero && c_nonzero && squarefree && gcd_b_c_power_of_2 &&
               gcd_n_b_power_of_2 && gcd_n1_c_power_of_2 && even_two_valuation &&
               d0_1_mod_4 && delta_not_square;
    }
};

struct GeneralCertifyResult {
    TrinomialHypothesisReport hypotheses;
    std::optional<GaloisCertificate> certificate;  // absent on hypothesis failure
};

// x^n + Bx + C under the power-of-2 gcd hypotheses: certifies the
// transposition, then scans primes below the bound for an irreducibility
// witness (pattern [n]) and an (n-1)-cycle witness (pattern [1, n-1]).
GeneralCertifyResult certify_general_trinomial(unsigned n, const mpz_class& B,
                                               const mpz_class& C,
                                               const CertifyOptions& opts = {});

using Partition = std::vector<unsigned>;  // descending parts

struct CycleTypeHistogram {
    unsigned n = 0;
    unsigned long prime_bound = 0;
    std::size_t sample_size = 0;
    std::map<Partition, std::size_t> counts;
};

// Factorization degree multisets of u mod q over all odd primes q <= bound
// with q not dividing Delta(u); each pattern is a Frobenius cycle type.
CycleTypeHistogram frobenius_sample(const Trinomial& u, unsigned long prime_bound,
                                    unsigned jobs = 1, std::uint64_t seed = kDefaultSeed);

// Exact S_n class distribution: partition lambda has frequency 1/z_lambda,
// z_lambda = prod_j j^(m_j) m_j!.  Frequencies sum to 1 exactly.
std::map<Partition, mpq_class> sn_class_distribution(unsigned n);

struct DistributionComparison {
    mpq_class max_deviation;  // Linf between empirical and expected
    std::vector<Partition> missing;  // expected > 0, observed 0, enough samples
    bool deviation_below(const mpq_class& tolerance) const {
        return max_deviation < tolerance;
    }
};

DistributionComparison compare_distribution(const CycleTypeHistogram& hist,
                                            const std::map<Partition, mpq_class>& expected);

}  // namespace mori

#endif
