#ifndef MORI_FINFIELD_HPP
#define MORI_FINFIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mori/factorint.hpp"
#include "mori/intpoly.hpp"

namespace mori {

/// Element of F_p (a1 == 0) or F_{p^2} as a0 + a1*t with t^2 = nonresidue.
struct FqElement {
    mpz_class a0;
    mpz_class a1;

    friend bool operator==(const FqElement&, const FqElement&) = default;
};

/// F_q for q = p or p^2, p an odd prime.  The quadratic extension is always
/// F_p[t]/(t^2 - s) with s the smallest positive non-residue mod p.
class FqContext {
  public:
    static FqContext prime_field(const mpz_class& p);
    static FqContext quadratic_extension(const mpz_class& p);

    const mpz_class& p() const { return p_; }
    unsigned k() const { return k_; }
    mpz_class q() const { return k_ == 1 ? p_ : mpz_class(p_ * p_); }
    const mpz_class& nonresidue() const { return nonresidue_; }

    FqElement make(const mpz_class& a0, const mpz_class& a1 = 0) const;
    FqElement zero() const { return {0, 0}; }
    FqElement one() const { return {1, 0}; }
    bool is_zero(const FqElement& a) const { return a.a0 == 0 && a.a1 == 0; }
    bool in_prime_field(const FqElement& a) const { return a.a1 == 0; }

    FqElement add(const FqElement&, const FqElement&) const;
    FqElement sub(const FqElement&, const FqElement&) const;
    FqElement mul(const FqElement&, const FqElement&) const;
    FqElement neg(const FqElement&) const;
    FqElement inv(const FqElement&) const;
    FqElement pow(const FqElement&, const mpz_class& e) const;

    std::string to_string(const FqElement&) const;
    // total order used for canonical factor sorting
    static int compare(const FqElement&, const FqElement&);

    friend bool operator==(const FqContext& a, const FqContext& b) {
        return a.p_ == b.p_ && a.k_ == b.k_;
    }

  private:
    FqContext() = default;
    mpz_class p_;
    unsigned k_ = 1;
    mpz_class nonresidue_;  // k == 2 only
};

// Square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p);

/// Dense polynomial over F_q, coefficients low to high, trailing zeros
/// stripped (zero polynomial has empty coefficient vector).
class FqPoly {
  public:
    explicit FqPoly(FqContext ctx) : ctx_(std::move(ctx)) {}
    FqPoly(FqContext ctx, std::vector<FqElement> coeffs);

    static FqPoly x(const FqContext& ctx);
    static FqPoly constant(const FqContext& ctx, const FqElement& c);

    const FqContext& context() const { return ctx_; }
    const std::vector<FqElement>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    FqElement coeff(std::size_t i) const;
    FqElement leading() const;
    bool is_monic() const;

    FqPoly monic() const;
    FqPoly derivative() const;
    FqElement evaluate(const FqElement&) const;
    std::string to_string() const;

    friend FqPoly operator+(const FqPoly&, const FqPoly&);
    friend FqPoly operator-(const FqPoly&, const FqPoly&);
    friend FqPoly operator*(const FqPoly&, const FqPoly&);
    bool equals(const FqPoly&) const;
    static int compare(const FqPoly&, const FqPoly&);

  private:
    void strip();
    FqContext ctx_;
    std::vector<FqElement> c_;
};

// quotient/remainder with invertible leading divisor coefficient
std::pair<FqPoly, FqPoly> divrem(const FqPoly& u, const FqPoly& v);
FqPoly poly_gcd(FqPoly a, FqPoly b);  // monic or zero
FqPoly powmod(const FqPoly& base, const mpz_class& e, const FqPoly& modulus);

// Coefficientwise image of u in F_ell with 2^(-e) multiplied through;
// rejects ell == 2 (a positive denominator exponent is not reducible at 2,
// and characteristic 2 is out of scope either way).
FqPoly reduce_mod(const IntPolynomial& u, const mpz_class& ell);
FqPoly reduce_mod(const Trinomial& u, const mpz_class& ell);

struct FactorPatternEntry {
    unsigned degree = 0;
    unsigned multiplicity = 0;
    std::vector<FqElement> factor_coeffs;  // monic irreducible, low to high
};

/// Sorted multiset of irreducible factors; entries ordered by degree, then
/// lexicographically by coefficient sequence (constant term first, elements
/// compared as (a0, a1) integer pairs).
struct FactorPattern {
    std::vector<FactorPatternEntry> entries;

    std::vector<unsigned> degree_partition() const;  // descending degrees
    unsigned total_degree() const;

    friend bool operator==(const FactorPattern&, const FactorPattern&);
};

// Complete factorization over F_q: squarefree decomposition, distinct-degree
// splitting and seeded equal-degree splitting.  Deterministic output given
// the seed; the reconstruction invariant is checked on every call.
FactorPattern factor(const FqPoly& u, std::uint64_t seed = kDefaultSeed);

struct MultiplicityEntry {
    FqPoly factor;
    unsigned multiplicity = 0;
    bool is_linear = false;
    FqElement root;  // set when is_linear
};

// Every irreducible factor with multiplicity >= 2.
std::vector<MultiplicityEntry> multiplicity_profile(const FqPoly& u,
                                                    std::uint64_t seed = kDefaultSeed);

// gamma = -n*C / ((n-1)*B) in F_q; throws when the denominator vanishes.
FqElement expected_double_root(unsigned n, const FqElement& B, const FqElement& C,
                               const FqContext& ctx);

mpz_class multiplicative_order(const FqElement& a, const FqContext& ctx,
                               const FactorBudget& budget = {},
                               std::uint64_t seed = kDefaultSeed);
bool is_primitive(const FqElement& a, const FqContext& ctx,
                  const FactorBudget& budget = {}, std::uint64_t seed = kDefaultSeed);

// a^((q-1)/gcd(d, q-1)) == 1
bool is_dth_power(const FqElement& a, const mpz_class& d, const FqContext& ctx);

}  // namespace mori

#endif
