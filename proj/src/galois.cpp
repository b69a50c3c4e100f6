#include "mori/galois.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mori {

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::FullSymmetric: return "FullSymmetric";
        case Conclusion::ConditionalFullSymmetric: return "ConditionalFullSymmetric";
        case Conclusion::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

std::string group_basis_note(unsigned n) {
    std::ostringstream os;
    if (n <= 7)
        os << "transitive + (n-1)-cycle + transposition => S_" << n
           << "; verifiable at this n with the subgroup oracle";
    else
        os << "transitive + (n-1)-cycle + transposition => S_" << n
           << "; double transitivity argument, beyond oracle enumeration range";
    return os.str();
}

}  // namespace

GaloisCertificate certify(const MoriQuadruple& q, const CertifyOptions& opts) {
    if (!q.validation.valid())
        throw std::invalid_argument("certify: quadruple failed validation");

    GaloisCertificate cert;
    cert.quadruple = q;
    cert.seed = opts.seed;
    cert.group_fact_basis = group_basis_note(q.degree());

    TrinomialPair t = build_trinomials(q);
    cert.trinomial = t.u;
    cert.f_polynomial = t.f;

    // irreducibility over Q_2 via the Newton polygon of f
    NewtonPolygon polygon = newton_polygon_2adic(t.f);
    EisensteinDumasResult ed = eisenstein_dumas(polygon);
    cert.irreducibility.polygon = polygon;
    cert.irreducibility.span_gcd = ed.span_gcd;
    cert.irreducibility.verified = ed.irreducible;
    if (!ed.irreducible) {
        cert.conclusion = Conclusion::Inconclusive;
        cert.failing_stage = "newton_polygon";
        return cert;
    }
    cert.ramification.splitting_field_ramified_at_2 = true;

    // (2g)-cycle from f mod p
    try {
        cert.cycle = mod_p_pattern(q, opts.seed);
    } catch (const std::logic_error& e) {
        cert.conclusion = Conclusion::Inconclusive;
        cert.failing_stage = std::string("mod_p_pattern: ") + e.what();
        return cert;
    }

    // discriminant decomposition and factorization
    DiscriminantDecomposition dec = d0_closed_form(q);
    if (dec.delta_is_square) {
        cert.conclusion = Conclusion::Inconclusive;
        cert.failing_stage = "discriminant: unexpected perfect square";
        return cert;
    }
    if (opts.injected_discriminant_factors)
        dec.d0_factors = *opts.injected_discriminant_factors;
    else
        factor_discriminant(dec, opts.budget, opts.seed);
    cert.ramification.sqrt_disc_unramified_at_2 = true;  // D0 = 1 mod 4, checked above
    cert.ramification.relative_ramified_at_divisors_of_2 =
        cert.ramification.splitting_field_ramified_at_2;
    cert.ramification.odd_primes_unramified_over_sqrt_disc = true;
    {
        std::ostringstream os;
        os << "A_" << q.degree();
        cert.ramification.relative_group_over_sqrt_disc = os.str();
    }

    // transposition prime
    TranspositionSearchResult ts =
        find_transposition_prime(t.u, dec, q.p, opts.seed);
    cert.discriminant = std::move(dec);
    if (ts.witness) {
        cert.transposition = std::move(ts.witness);
        cert.conclusion = Conclusion::FullSymmetric;
    } else if (ts.budget_exhausted) {
        cert.conclusion = Conclusion::ConditionalFullSymmetric;
        cert.status_note =
            "factorization budget exhausted before a transposition prime was found; " +
            ts.note;
    } else {
        cert.conclusion = Conclusion::Inconclusive;
        cert.failing_stage = "transposition: " + ts.note;
    }
    return cert;
}

GeneralCertifyResult certify_general_trinomial(unsigned n, const mpz_class& B,
                                               const mpz_class& C,
                                               const CertifyOptions& opts) {
    if (n < 2) throw std::invalid_argument("certify_general_trinomial: n must be >= 2");
    GeneralCertifyResult res;
    auto& hyp = res.hypotheses;
    auto pow2_or_1 = [](const mpz_class& v) {
        return v == 1 || mpz_popcount(v.get_mpz_t()) == 1;
    };

    hyp.b_nonzero = B != 0;
    hyp.c_nonzero = C != 0;
    if (!hyp.b_nonzero) hyp.failures.push_back("B = 0");
    if (!hyp.c_nonzero) hyp.failures.push_back("C = 0");
    if (!hyp.b_nonzero || !hyp.c_nonzero) return res;

    Trinomial u{n, B, C};
    mpz_class delta = trinomial_discriminant(n, B, C);
    hyp.squarefree = delta != 0;
    if (!hyp.squarefree) {
        hyp.failures.push_back("discriminant vanishes (multiple root)");
        return res;
    }
    hyp.gcd_b_c_power_of_2 = pow2_or_1(gcd(B, C));
    hyp.gcd_n_b_power_of_2 = pow2_or_1(gcd(mpz_class(n), B));
    hyp.gcd_n1_c_power_of_2 = pow2_or_1(gcd(mpz_class(n - 1), C));
    if (!hyp.gcd_b_c_power_of_2) hyp.failures.push_back("gcd(B, C) is not 1 or a power of 2");
    if (!hyp.gcd_n_b_power_of_2) hyp.failures.push_back("gcd(n, B) is not 1 or a power of 2");
    if (!hyp.gcd_n1_c_power_of_2)
        hyp.failures.push_back("gcd(n-1, C) is not 1 or a power of 2");

    auto dec_opt = decompose_trinomial_discriminant(u);
    hyp.even_two_valuation = dec_opt.has_value();
    if (!hyp.even_two_valuation)
        hyp.failures.push_back("v2(Delta) is odd: no 2^(2M) * D0 decomposition");
    if (dec_opt) {
        mpz_class r;
        mpz_class four = 4;
        mpz_mod(r.get_mpz_t(), dec_opt->d0.get_mpz_t(), four.get_mpz_t());
        hyp.d0_1_mod_4 = (r == 1);
        if (!hyp.d0_1_mod_4) hyp.failures.push_back("D0 != 1 mod 4");
        hyp.delta_not_square = !dec_opt->delta_is_square;
        if (!hyp.delta_not_square) hyp.failures.push_back("Delta is a perfect square");
    }
    if (!hyp.all()) return res;

    GaloisCertificate cert;
    cert.trinomial = u;
    cert.seed = opts.seed;
    cert.group_fact_basis = group_basis_note(n);
    cert.cycle_scan_bound = opts.cycle_scan_bound;

    DiscriminantDecomposition dec = std::move(*dec_opt);
    if (opts.injected_discriminant_factors)
        dec.d0_factors = *opts.injected_discriminant_factors;
    else
        factor_discriminant(dec, opts.budget, opts.seed);
    cert.ramification.sqrt_disc_unramified_at_2 = true;
    cert.ramification.odd_primes_unramified_over_sqrt_disc = true;
    {
        std::ostringstream os;
        os << "A_" << n;
        cert.ramification.relative_group_over_sqrt_disc = os.str();
    }

    TranspositionSearchResult ts = find_transposition_prime(u, dec, std::nullopt, opts.seed);
    cert.discriminant = std::move(dec);

    // scan small primes for an irreducibility pattern [n] and an
    // (n-1)-cycle pattern [1, n-1]; stop each scan at its first witness
    IntPolynomial up = u.to_polynomial();
    for (unsigned long q :
         primes_up_to(opts.cycle_scan_bound)) {
        if (cert.irreducibility.verified && cert.n_minus_1_cycle_prime) break;
        if (q == 2) continue;
        mpz_class qz(q);
        if (mpz_divisible_p(cert.discriminant->delta.get_mpz_t(), qz.get_mpz_t()))
            continue;
        FactorPattern pat = factor(reduce_mod(up, qz), opts.seed);
        auto part = pat.degree_partition();
        if (!cert.irreducibility.verified && part.size() == 1 && part[0] == n) {
            cert.irreducibility.full_degree_prime = qz;
            cert.irreducibility.verified = true;
        }
        if (!cert.n_minus_1_cycle_prime && part.size() == 2 && part[0] == n - 1 &&
            part[1] == 1)
            cert.n_minus_1_cycle_prime = qz;
    }

    std::vector<std::string> lacking;
    if (!ts.witness) {
        if (ts.budget_exhausted)
            lacking.push_back("transposition prime (factorization budget exhausted)");
        else
            lacking.push_back("transposition prime (" + ts.note + ")");
    } else {
        cert.transposition = std::move(ts.witness);
    }
    if (!cert.irreducibility.verified)
        lacking.push_back("irreducibility witness (no prime with pattern [n] below bound)");
    if (!cert.n_minus_1_cycle_prime)
        lacking.push_back("(n-1)-cycle witness (no prime with pattern [1, n-1] below bound)");

    if (lacking.empty()) {
        cert.conclusion = Conclusion::FullSymmetric;
    } else {
        cert.conclusion = Conclusion::ConditionalFullSymmetric;
        std::ostringstream os;
        os << "transposition "
           << (cert.transposition ? "certified" : "missing")
           << "; S_n conditional on: ";
        for (std::size_t i = 0; i < lacking.size(); ++i)
            os << (i ? "; " : "") << lacking[i];
        cert.status_note = os.str();
    }
    res.certificate = std::move(cert);
    return res;
}

namespace {

Partition pattern_partition(const FactorPattern& p) { return p.degree_partition(); }

}  // namespace

CycleTypeHistogram frobenius_sample(const Trinomial& u, unsigned long prime_bound,
                                    unsigned jobs, std::uint64_t seed) {
    CycleTypeHistogram hist;
    hist.n = u.n;
    hist.prime_bound = prime_bound;

    mpz_class delta = trinomial_discriminant(u.n, u.B, u.C);
    std::vector<unsigned long> qs;
    for (unsigned long q : primes_up_to(prime_bound)) {
        if (q == 2) continue;
        mpz_class qz(q);
        if (mpz_divisible_p(delta.get_mpz_t(), qz.get_mpz_t())) continue;
        qs.push_back(q);
    }

    IntPolynomial up = u.to_polynomial();
    auto sample_one = [&](unsigned long q) {
        FactorPattern pat = factor(reduce_mod(up, mpz_class(q)), seed);
        return pattern_partition(pat);
    };

    if (jobs <= 1 || qs.size() < 64) {
        for (unsigned long q : qs) ++hist.counts[sample_one(q)];
    } else {
        unsigned nthreads = std::min<unsigned>(jobs, 32);
        std::vector<std::map<Partition, std::size_t>> partial(nthreads);
        std::vector<std::thread> threads;
        std::size_t chunk = (qs.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(qs.size(), lo + chunk);
            if (lo >= hi) break;
            threads.emplace_back([&, lo, hi, t] {
                for (std::size_t i = lo; i < hi; ++i) ++partial[t][sample_one(qs[i])];
            });
        }
        for (auto& th : threads) th.join();
        // counts are additive, so the merged histogram is order-independent
        for (const auto& m : partial)
            for (const auto& [part, count] : m) hist.counts[part] += count;
    }
    for (const auto& [part, count] : hist.counts) hist.sample_size += count;
    return hist;
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, Partition& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::map<Partition, mpq_class> sn_class_distribution(unsigned n) {
    if (n == 0 || n > 12)
        throw std::invalid_argument("sn_class_distribution supports 1 <= n <= 12");
    std::vector<Partition> parts;
    Partition cur;
    partitions_rec(n, n, cur, parts);

    std::map<Partition, mpq_class> out;
    mpq_class total = 0;
    for (const auto& lambda : parts) {
        // z_lambda = prod over part sizes j: j^(m_j) * m_j!
        std::map<unsigned, unsigned> mult;
        for (unsigned part : lambda) ++mult[part];
        mpz_class z = 1;
        for (const auto& [j, m] : mult) {
            mpz_class jp;
            mpz_ui_pow_ui(jp.get_mpz_t(), j, m);
            mpz_class mf;
            mpz_fac_ui(mf.get_mpz_t(), m);
            z *= jp * mf;
        }
        mpq_class freq(1, z);
        freq.canonicalize();
        out[lambda] = freq;
        total += freq;
    }
    if (total != 1) throw std::logic_error("sn_class_distribution: frequencies do not sum to 1");
    return out;
}

DistributionComparison compare_distribution(
    const CycleTypeHistogram& hist, const std::map<Partition, mpq_class>& expected) {
    if (hist.sample_size == 0)
        throw std::invalid_argument("compare_distribution: empty histogram");
    DistributionComparison cmp;
    cmp.max_deviation = 0;

    mpq_class min_freq = 1;
    for (const auto& [part, freq] : expected)
        if (freq > 0 && freq < min_freq) min_freq = freq;

    mpz_class size(static_cast<unsigned long>(hist.sample_size));
    for (const auto& [part, freq] : expected) {
        std::size_t observed = 0;
        auto it = hist.counts.find(part);
        if (it != hist.counts.end()) observed = it->second;
        mpq_class emp(mpz_class(static_cast<unsigned long>(observed)), size);
        emp.canonicalize();
        mpq_class dev = emp - freq;
        if (dev < 0) dev = -dev;
        if (dev > cmp.max_deviation) cmp.max_deviation = dev;
        // flag a zero count only when the sample is large enough to expect
        // at least ~50 hits of the rarest class
        mpq_class threshold = 50 / min_freq;
        if (observed == 0 && freq > 0 && mpq_class(size) >= threshold)
            cmp.missing.push_back(part);
    }
    // partitions observed but not expected count as deviations too
    for (const auto& [part, count] : hist.counts) {
        if (expected.count(part)) continue;
        mpq_class emp(mpz_class(static_cast<unsigned long>(count)), size);
        emp.canonicalize();
        if (emp > cmp.max_deviation) cmp.max_deviation = emp;
    }
    return cmp;
}

}  // namespace mori
