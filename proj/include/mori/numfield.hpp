#ifndef MORI_NUMFIELD_HPP
#define MORI_NUMFIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mori/finfield.hpp"
#include "mori/galois.hpp"
#include "mori/padic.hpp"

namespace mori {

/// x + y*omega in the ring of integers of Q(sqrt(d)).
struct OKElement {
    mpz_class x;
    mpz_class y;
    friend bool operator==(const OKElement&, const OKElement&) = default;
};

/// One of the nine imaginary quadratic fields of class number 1:
/// d in {-1,-2,-3,-7,-11,-19,-43,-67,-163}.  omega = sqrt(d) when
/// d = 2,3 mod 4, else (1+sqrt(d))/2; the ring of integers is Z[omega].
class ImagQuadField {
  public:
    static ImagQuadField make(int d);
    static const std::vector<int>& supported();

    int d() const { return d_; }
    const mpz_class& discriminant() const { return disc_; }
    bool half_integral() const { return half_; }  // omega = (1+sqrt d)/2
    std::string omega_description() const;

    OKElement from_int(const mpz_class& v) const { return {v, 0}; }
    OKElement add(const OKElement&, const OKElement&) const;
    OKElement sub(const OKElement&, const OKElement&) const;
    OKElement mul(const OKElement&, const OKElement&) const;
    OKElement neg(const OKElement&) const;
    OKElement conj(const OKElement&) const;
    OKElement pow(const OKElement&, unsigned long e) const;
    mpz_class norm(const OKElement&) const;
    bool is_zero(const OKElement& a) const { return a.x == 0 && a.y == 0; }
    bool is_unit(const OKElement& a) const { return norm(a) == 1; }

    bool divides(const OKElement& a, const OKElement& b) const;  // a | b
    OKElement exact_div(const OKElement& b, const OKElement& a) const;  // b / a

    std::string to_string(const OKElement&) const;
    // "x", "x+y*w", "y*w", "w"; "i" is accepted for w when d == -1
    OKElement parse(const std::string&) const;

    // minimal polynomial of omega: t^2 + mp_b t + mp_c
    mpz_class min_poly_b() const;
    mpz_class min_poly_c() const;

  private:
    explicit ImagQuadField(int d);
    int d_;
    mpz_class disc_;
    bool half_;
};

/// Principal maximal ideal (generator) with its splitting data.
struct MaximalIdeal {
    mpz_class p;            // residual characteristic
    unsigned res_degree = 1;   // f in {1, 2}
    unsigned ram_index = 1;    // e in {1, 2}
    OKElement generator;
    // image of omega in the residue field (odd p only): a0 + a1*t
    mpz_class omega_a0;
    mpz_class omega_a1;

    mpz_class residue_size() const {  // q = p^f
        return res_degree == 1 ? p : mpz_class(p * p);
    }
};

// Prime ideals above p, deterministic order (split pairs sorted by the root
// of omega's minimal polynomial mod p).  Generators are found by a bounded
// norm-equation scan, which class number 1 guarantees to succeed.
std::vector<MaximalIdeal> splitting(const mpz_class& p, const ImagQuadField& K);

// Maximal ideal generated by pi; accepts prime-norm generators and
// associates of inert rational primes, rejects everything else.
MaximalIdeal ideal_from_generator(const OKElement& pi, const ImagQuadField& K,
                                  std::uint64_t seed = kDefaultSeed);

// Residue field of an odd-characteristic ideal (F_p or F_{p^2}).
FqContext residue_field(const MaximalIdeal& ideal);
FqElement residue_map(const OKElement& z, const MaximalIdeal& ideal,
                      const FqContext& ctx, const ImagQuadField& K);

// exact valuation v_b(z) for z != 0
unsigned ideal_valuation(const OKElement& z, const MaximalIdeal& ideal,
                         const ImagQuadField& K);

// aO + bO == O, tested prime-by-prime over gcd(N(a), N(b)).
bool ideals_coprime(const OKElement& a, const OKElement& b, const ImagQuadField& K,
                    const FactorBudget& budget = {}, std::uint64_t seed = kDefaultSeed);

struct GenQuadrupleValidation {
    bool residue_char_odd = false;
    bool divisors_of_g_divide_half_q_minus_1 = false;  // (i)
    bool b_primitive = false;                          // (ii)
    bool c_in_p = false;                               // (iii) part 1
    bool c_minus_1_even = false;                       // (iii) part 2
    bool coprime_b_c = false;
    bool coprime_b_2g1 = false;
    bool coprime_2g_c = false;
    std::vector<std::string> failures;
    bool valid() const {
        return residue_char_odd && divisors_of_g_divide_half_q_minus_1 && b_primitive &&
               c_in_p && c_minus_1_even && coprime_b_c && coprime_b_2g1 && coprime_2g_c;
    }
};

/// (g, p-ideal, b, c) over K defining F = x^(2g+1) - b x - c/4.
struct GenMoriQuadruple {
    int d = -1;
    unsigned g = 0;
    MaximalIdeal p_ideal;
    OKElement b;
    OKElement c;
    GenQuadrupleValidation validation;

    unsigned degree() const { return 2 * g + 1; }
};

GenMoriQuadruple validate_generalized_quadruple(const ImagQuadField& K, unsigned g,
                                                const MaximalIdeal& p_ideal,
                                                const OKElement& b, const OKElement& c,
                                                const FactorBudget& budget = {},
                                                std::uint64_t seed = kDefaultSeed);

struct IdealDescriptor {
    mpz_class p;
    unsigned res_degree = 1;
    unsigned ram_index = 1;
    OKElement generator;
};

struct KTranspositionWitness {
    IdealDescriptor ideal;
    FqElement double_root;
    bool root_in_prime_subfield = false;
    unsigned delta_valuation = 0;
    FactorPattern pattern;  // of U mod the ideal
    std::vector<IdealDescriptor> others_verified;
};

struct KCertificate {
    int d = -1;
    GenMoriQuadruple quadruple;
    std::vector<OKElement> u_coeffs;  // U = x^(2g+1) - 2^(2g) b x - 2^(2g-1) c

    // (a) polygon at a chosen ideal above 2
    IdealDescriptor ideal_above_2;
    std::optional<NewtonPolygon> polygon;
    long span_gcd = 0;
    bool irreducible = false;

    // (b) mod-p pattern over k(p)
    FactorPattern mod_p_pattern;
    bool lang_criterion_holds = false;

    // (c) discriminant data
    OKElement delta;  // Delta(U)
    unsigned long m = 0;
    OKElement d0;
    bool d0_minus_1_in_4O = false;
    Factorization norm_d0_factors;

    // (d) transposition ideal
    std::optional<KTranspositionWitness> transposition;

    Conclusion conclusion = Conclusion::Inconclusive;
    std::string failing_stage;
    std::string status_note;
    bool ramified_at_all_divisors_of_2 = false;  // polygon verified at every b2
    bool unramified_outside_2 = false;  // D0 - 1 in 4O, plus the odd-ideal double-root analysis
    std::string relative_group;  // "A_n"
    std::uint64_t seed = kDefaultSeed;
};

// Theorem-of-MoriG pipeline over K: Newton polygon at an ideal above 2,
// the mod-p cycle pattern over k(p), D0 with D0 - 1 in 4O, and a
// constructive transposition ideal found among the divisors of N(D0).
KCertificate certify_K(const ImagQuadField& K, const GenMoriQuadruple& q,
                       const CertifyOptions& opts = {});

struct KSearchBounds {
    unsigned long p_bound = 100;
    long coord_bound = 10;  // |x|, |y| of b and c coordinates
};

// First valid quadruple in scan order: increasing p (p = 1 mod 2g,
// p not dividing 2g+1), then ideals above p, then lexicographic b then c
// coordinates.  Throws when the bounds are exhausted.
GenMoriQuadruple generate_quadruple(const ImagQuadField& K, unsigned g,
                                    const KSearchBounds& bounds,
                                    const FactorBudget& budget = {},
                                    std::uint64_t seed = kDefaultSeed);

}  // namespace mori

#endif
