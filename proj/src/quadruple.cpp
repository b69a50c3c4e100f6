#include "mori/quadruple.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mori {

namespace {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class mod4(const mpz_class& a) {
    mpz_class r;
    mpz_class four = 4;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), four.get_mpz_t());
    return r;
}

}  // namespace

MoriQuadruple validate_quadruple(unsigned g, const mpz_class& p, const mpz_class& b,
                                 const mpz_class& c, const FactorBudget& budget,
                                 std::uint64_t seed) {
    if (g == 0) throw std::invalid_argument("validate_quadruple: g must be positive");
    MoriQuadruple q;
    q.g = g;
    q.p = p;
    q.b = b;
    q.c = c;
    auto& v = q.validation;

    if (p < 3 || mpz_even_p(p.get_mpz_t())) {
        v.failures.push_back("p is not an odd prime");
    } else {
        PrimalityResult pr = is_probable_prime(p, seed);
        v.p_odd_prime = pr.is_prime;
        v.p_probable_only = pr.is_prime && !pr.deterministic;
        if (!pr.is_prime) v.failures.push_back("p is not prime");
    }

    // (i) every prime divisor of g divides (p-1)/2
    if (v.p_odd_prime) {
        mpz_class half = (p - 1) / 2;
        Factorization gf = factor_integer(mpz_class(g), budget, seed);
        if (!gf.complete())
            throw std::runtime_error("validate_quadruple: could not factor g within budget");
        bool ok = true;
        for (const auto& [prime, e] : gf.prime_powers) {
            (void)e;
            if (!mpz_divisible_p(half.get_mpz_t(), prime.get_mpz_t())) {
                ok = false;
                std::ostringstream os;
                os << "condition (i): prime divisor " << prime.get_str()
                   << " of g does not divide (p-1)/2";
                v.failures.push_back(os.str());
            }
        }
        v.divisors_of_g_divide_half_p_minus_1 = ok;

        // (ii) b mod p generates F_p^*
        FqContext fp = FqContext::prime_field(p);
        FqElement bp = fp.make(b);
        if (fp.is_zero(bp)) {
            v.failures.push_back("condition (ii): b = 0 mod p");
        } else if (is_primitive(bp, fp, budget, seed)) {
            v.b_primitive_root = true;
        } else {
            v.failures.push_back("condition (ii): b mod p is not a primitive root");
        }
    }

    // (iii) c odd, (b,c) = (b,2g+1) = (c,g) = 1
    bool c_ok = true;
    if (mpz_even_p(c.get_mpz_t())) {
        c_ok = false;
        v.failures.push_back("condition (iii): c is even");
    }
    if (gcd(b, c) != 1) {
        c_ok = false;
        v.failures.push_back("condition (iii): gcd(b, c) != 1");
    }
    if (gcd(b, mpz_class(2 * g + 1)) != 1) {
        c_ok = false;
        v.failures.push_back("condition (iii): gcd(b, 2g+1) != 1");
    }
    if (gcd(c, mpz_class(g)) != 1) {
        c_ok = false;
        v.failures.push_back("condition (iii): gcd(c, g) != 1");
    }
    v.c_odd_and_coprime = c_ok;

    v.c_congruent_minus_p_mod_4 = (mod4(c + p) == 0);
    return q;
}

TrinomialPair build_trinomials(const MoriQuadruple& q) {
    unsigned n = q.degree();
    std::vector<mpz_class> coeffs(n + 1, mpz_class(0));
    coeffs[0] = -(q.p * q.c);
    coeffs[1] = -4 * q.b;
    coeffs[n] = 4;
    TrinomialPair out{IntPolynomial(std::move(coeffs), 2), Trinomial{}};

    out.u.n = n;
    out.u.B = -(pow_z(2, 2 * q.g) * q.b);
    out.u.C = -(pow_z(2, 2 * q.g - 1) * q.p * q.c);

    IntPolynomial scaled = scale_substitute(out.f, 2);
    if (!(scaled == out.u.to_polynomial()))
        throw std::logic_error("build_trinomials: scale_substitute mismatch");
    return out;
}

std::vector<std::pair<mpz_class, unsigned>>
DiscriminantDecomposition::odd_valuation_primes() const {
    std::vector<std::pair<mpz_class, unsigned>> out;
    for (const auto& [prime, e] : d0_factors.prime_powers)
        if (prime != 2 && e % 2 == 1) out.emplace_back(prime, e);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

DiscriminantDecomposition d0_closed_form(const MoriQuadruple& q) {
    if (!q.validation.valid())
        throw std::invalid_argument("d0_closed_form: quadruple is not valid");
    unsigned g = q.g;
    unsigned n = q.degree();
    DiscriminantDecomposition dec;
    dec.m = static_cast<unsigned long>(g) * (2 * g - 1);

    mpz_class pc = q.p * q.c;
    mpz_class inner = mpz_class(n) * pow_z(mpz_class(n), g) * pow_z(mpz_class(n), g) *
                          pow_z(pc, g) * pow_z(pc, g) -
                      pow_z(2, 6 * g) * pow_z(mpz_class(g), 2 * g) * pow_z(q.b, 2 * g + 1);
    dec.d0 = (g % 2 == 1) ? mpz_class(-inner) : inner;

    TrinomialPair t = build_trinomials(q);
    dec.delta = trinomial_discriminant(t.u.n, t.u.B, t.u.C);

    mpz_class expected = dec.d0;
    mpz_mul_2exp(expected.get_mpz_t(), expected.get_mpz_t(), 2 * dec.m);
    if (expected != dec.delta)
        throw std::logic_error("d0_closed_form: closed form disagrees with Discr(n,B,C)");
    if (discriminant_integer(t.u.to_polynomial()) != dec.delta)
        throw std::logic_error("d0_closed_form: subresultant route disagrees");
    if (mpz_even_p(dec.d0.get_mpz_t()))
        throw std::logic_error("d0_closed_form: D0 is even");
    if (mpz_divisible_p(dec.d0.get_mpz_t(), q.p.get_mpz_t()))
        throw std::logic_error("d0_closed_form: p divides D0");
    if (mod4(dec.d0) != 1)
        throw std::logic_error("d0_closed_form: D0 != 1 mod 4");
    dec.delta_is_square =
        dec.delta >= 0 && mpz_perfect_square_p(dec.delta.get_mpz_t()) != 0;
    return dec;
}

void factor_discriminant(DiscriminantDecomposition& dec, const FactorBudget& budget,
                         std::uint64_t seed) {
    dec.d0_factors = factor_integer(dec.d0, budget, seed);
}

OddValuationResult odd_valuation_primes(const mpz_class& delta, const FactorBudget& budget,
                                        std::uint64_t seed) {
    if (delta == 0) throw std::invalid_argument("odd_valuation_primes: zero discriminant");
    Factorization f = factor_integer(delta, budget, seed);
    OddValuationResult out;
    out.unfactored_cofactor = f.cofactor;
    for (const auto& [p, e] : f.prime_powers)
        if (p != 2 && e % 2 == 1) out.primes.emplace_back(p, e);
    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::optional<DiscriminantDecomposition> decompose_trinomial_discriminant(
    const Trinomial& u) {
    DiscriminantDecomposition dec;
    dec.delta = trinomial_discriminant(u.n, u.B, u.C);
    if (dec.delta == 0) return std::nullopt;
    mpz_class a = abs(dec.delta);
    unsigned long v2 = mpz_scan1(a.get_mpz_t(), 0);
    if (v2 % 2 != 0) return std::nullopt;  // no 2^(2M) * odd decomposition
    dec.m = v2 / 2;
    dec.d0 = dec.delta;
    mpz_fdiv_q_2exp(dec.d0.get_mpz_t(), dec.d0.get_mpz_t(), v2);
    dec.delta_is_square =
        dec.delta >= 0 && mpz_perfect_square_p(dec.delta.get_mpz_t()) != 0;
    return dec;
}

namespace {

struct PerEllCheck {
    bool passed = false;
    mpz_class gamma;
    FactorPattern pattern;
    std::string note;
};

PerEllCheck check_double_root_at(const Trinomial& u, const mpz_class& ell,
                                 std::uint64_t seed) {
    PerEllCheck out;
    FqContext fp = FqContext::prime_field(ell);
    FqElement B = fp.make(u.B), C = fp.make(u.C);
    FqElement n1B = fp.mul(fp.make(mpz_class(u.n - 1)), B);
    if (fp.is_zero(n1B)) {
        out.note = "(n-1)*B = 0 mod ell; the double-root analysis does not apply";
        return out;
    }
    FqElement gamma = expected_double_root(u.n, B, C, fp);
    FqPoly ubar = reduce_mod(u, ell);
    if (!fp.is_zero(ubar.evaluate(gamma)) ||
        !fp.is_zero(ubar.derivative().evaluate(gamma))) {
        out.note = "predicted double root is not a root of u and u'";
        return out;
    }
    out.pattern = factor(ubar, seed);
    unsigned multiple_entries = 0;
    bool matches = false;
    for (const auto& e : out.pattern.entries) {
        if (e.multiplicity < 2) continue;
        ++multiple_entries;
        if (e.multiplicity == 2 && e.degree == 1 &&
            e.factor_coeffs[0] == fp.neg(gamma))
            matches = true;
    }
    if (multiple_entries != 1 || !matches) {
        out.note = "factor pattern does not show exactly one double linear factor";
        return out;
    }
    if (fp.is_zero(gamma)) {
        out.note = "double root is zero";
        return out;
    }
    out.passed = true;
    out.gamma = gamma.a0;
    return out;
}

}  // namespace

TranspositionSearchResult find_transposition_prime(
    const Trinomial& u, const DiscriminantDecomposition& dec,
    const std::optional<mpz_class>& exclude, std::uint64_t seed) {
    TranspositionSearchResult res;
    std::vector<std::pair<mpz_class, mpz_class>> passed;  // (ell, gamma)
    std::optional<TranspositionWitness> chosen;

    for (const auto& [ell, val] : dec.odd_valuation_primes()) {
        if (exclude && ell == *exclude) continue;
        PerEllCheck chk = check_double_root_at(u, ell, seed);
        if (!chk.passed) {
            std::ostringstream os;
            os << "ell = " << ell.get_str() << " failed: " << chk.note << "; ";
            res.note += os.str();
            continue;
        }
        if (!chosen) {
            TranspositionWitness w;
            w.ell = ell;
            w.double_root = chk.gamma;
            w.delta_valuation = val;
            w.pattern = chk.pattern;
            chosen = std::move(w);
        } else {
            passed.emplace_back(ell, chk.gamma);
        }
    }
    if (chosen) {
        chosen->others_verified = std::move(passed);
        res.witness = std::move(chosen);
        return res;
    }
    res.budget_exhausted = !dec.d0_factors.complete();
    if (res.budget_exhausted)
        res.note += "no usable prime found within budget (cofactor unfactored)";
    else if (res.note.empty())
        res.note = "no odd prime divides the discriminant to odd order";
    return res;
}

CycleWitness mod_p_pattern(const MoriQuadruple& q, std::uint64_t seed) {
    if (!q.validation.valid())
        throw std::invalid_argument("mod_p_pattern: quadruple is not valid");
    TrinomialPair t = build_trinomials(q);
    FqContext fp = FqContext::prime_field(q.p);
    FqPoly fbar = reduce_mod(t.f, q.p);

    CycleWitness w;
    w.p = q.p;
    w.pattern = factor(fbar, seed);

    unsigned n = q.degree();
    bool shape_ok = w.pattern.entries.size() == 2;
    if (shape_ok) {
        const auto& lin = w.pattern.entries[0];
        const auto& big = w.pattern.entries[1];
        shape_ok = lin.degree == 1 && lin.multiplicity == 1 &&
                   fp.is_zero(lin.factor_coeffs[0]) && big.degree == 2 * q.g &&
                   big.multiplicity == 1;
        if (shape_ok) {
            // the degree-2g factor must be x^(2g) - b
            FqElement minus_b = fp.neg(fp.make(q.b));
            shape_ok = big.factor_coeffs[0] == minus_b;
            for (std::size_t i = 1; i + 1 < big.factor_coeffs.size() && shape_ok; ++i)
                shape_ok = fp.is_zero(big.factor_coeffs[i]);
        }
    }

    // independent route: x^(2g) - b irreducible iff b is a d-th power for no
    // prime d | 2g, plus the -4b non-square condition when 4 | 2g
    FqElement bp = fp.make(q.b);
    bool lang = true;
    Factorization f2g = factor_integer(mpz_class(2 * q.g), {}, seed);
    for (const auto& [d, e] : f2g.prime_powers) {
        (void)e;
        if (is_dth_power(bp, d, fp)) lang = false;
    }
    if ((2 * q.g) % 4 == 0) {
        FqElement m4b = fp.mul(fp.make(mpz_class(-4)), bp);
        if (is_dth_power(m4b, 2, fp)) lang = false;
    }
    w.lang_criterion_holds = lang;

    if (!shape_ok || !lang)
        throw std::logic_error(
            "mod_p_pattern: f mod p is not x*(x^2g - b) with irreducible second factor "
            "(impossible for a valid quadruple; input or implementation is broken)");
    (void)n;
    return w;
}

std::vector<MoriQuadruple> search_quadruples(unsigned g, const SearchRange& p_range,
                                             const SearchRange& b_range,
                                             const SearchRange& c_range,
                                             const FactorBudget& budget,
                                             std::uint64_t seed, unsigned jobs) {
    std::vector<mpz_class> ps;
    for (mpz_class p = p_range.lo; p <= p_range.hi; ++p) {
        if (p < 3 || mpz_even_p(p.get_mpz_t())) continue;
        if (is_probable_prime(p, seed).is_prime) ps.push_back(p);
    }

    std::vector<std::vector<MoriQuadruple>> found(ps.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (mpz_class b = b_range.lo; b <= b_range.hi; ++b) {
                for (mpz_class c = c_range.lo; c <= c_range.hi; ++c) {
                    MoriQuadruple q = validate_quadruple(g, ps[i], b, c, budget, seed);
                    if (q.validation.valid()) found[i].push_back(std::move(q));
                }
            }
        }
    };

    if (jobs <= 1 || ps.size() <= 1) {
        work(0, ps.size());
    } else {
        unsigned nthreads = std::min<unsigned>(jobs, static_cast<unsigned>(ps.size()));
        std::vector<std::thread> threads;
        std::size_t chunk = (ps.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(ps.size(), lo + chunk);
            if (lo >= hi) break;
            threads.emplace_back(work, lo, hi);
        }
        for (auto& t : threads) t.join();
    }

    std::vector<MoriQuadruple> out;  // deterministic merge in p order
    for (auto& v : found)
        for (auto& q : v) out.push_back(std::move(q));
    return out;
}

}  // namespace mori
