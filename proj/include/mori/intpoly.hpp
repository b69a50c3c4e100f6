#ifndef MORI_INTPOLY_HPP
#define MORI_INTPOLY_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace mori {

/// Dense univariate polynomial over Z[1/2]: integer numerators a_0..a_n and
/// a common denominator 2^e.  The representation is normalized so that either
/// e == 0 or at least one numerator is odd; e == 0 models plain Z[x].
class IntPolynomial {
  public:
    IntPolynomial() = default;  // zero polynomial
    IntPolynomial(std::vector<mpz_class> numerators, unsigned denom_exponent = 0);

    static IntPolynomial from_ints(std::initializer_list<long> coeffs,
                                   unsigned denom_exponent = 0);
    // Text form "[a0, a1, ..., an]" or "[a0, ..., an] / 2^e".
    static IntPolynomial parse(const std::string& text);
    std::string to_string() const;

    const std::vector<mpz_class>& numerators() const { return num_; }
    unsigned denom_exponent() const { return denom_exp_; }
    int degree() const { return static_cast<int>(num_.size()) - 1; }
    bool is_zero() const { return num_.empty(); }
    bool is_integral() const { return denom_exp_ == 0; }
    bool is_monic() const;

    // a_i as an exact rational (0 beyond the degree).
    mpq_class coefficient(std::size_t i) const;
    const mpz_class& numerator(std::size_t i) const;
    mpz_class leading_numerator() const;

    mpq_class evaluate(const mpq_class& x) const;
    IntPolynomial derivative() const;

    friend IntPolynomial operator+(const IntPolynomial&, const IntPolynomial&);
    friend IntPolynomial operator-(const IntPolynomial&, const IntPolynomial&);
    friend IntPolynomial operator*(const IntPolynomial&, const IntPolynomial&);
    friend bool operator==(const IntPolynomial&, const IntPolynomial&);

  private:
    void normalize();

    std::vector<mpz_class> num_;
    unsigned denom_exp_ = 0;
};

/// x^n + Bx + C with nonzero B, C.
struct Trinomial {
    unsigned n = 0;
    mpz_class B;
    mpz_class C;

    IntPolynomial to_polynomial() const;
    friend bool operator==(const Trinomial&, const Trinomial&) = default;
};

// Content (gcd of numerators, positive) and primitive part of the numerator
// vector; defined for nonzero polynomials with e == 0.
mpz_class content(const IntPolynomial& u);
IntPolynomial primitive_part(const IntPolynomial& u);

// Pseudo-remainder: lc(v)^(deg u - deg v + 1) * u = q*v + r, deg r < deg v.
// Both inputs integral (e == 0), v nonzero.
IntPolynomial pseudo_remainder(const IntPolynomial& u, const IntPolynomial& v);

// Res(u, v) for integral u, v, via the subresultant polynomial remainder
// sequence with exact scale bookkeeping.
mpz_class resultant(const IntPolynomial& u, const IntPolynomial& v);

// (-1)^(n(n-1)/2) Res(u, u') / lc(u); exact, a dyadic rational in general and
// an integer for monic u in Z[x].
mpq_class discriminant(const IntPolynomial& u);
// Convenience for monic integral input; throws if the value is fractional.
mpz_class discriminant_integer(const IntPolynomial& u);

// Closed form for Discr(x^n + Bx + C):
//   (-1)^(n(n-1)/2) n^n C^(n-1) + (-1)^((n-1)(n-2)/2) (n-1)^(n-1) B^n.
mpz_class trinomial_discriminant(unsigned n, const mpz_class& B, const mpz_class& C);

// s^deg(f) * f(x/s) for monic f; stays monic, and clears the denominator of a
// Mori trinomial when s == 2.
IntPolynomial scale_substitute(const IntPolynomial& f, const mpz_class& s);

}  // namespace mori

#endif
