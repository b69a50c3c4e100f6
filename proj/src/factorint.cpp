#include "mori/factorint.hpp"

#include <algorithm>
#include <stdexcept>

namespace mori {

mpz_class Factorization::reconstruct() const {
    mpz_class v = cofactor;
    for (const auto& [p, e] : prime_powers) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return sign < 0 ? mpz_class(-v) : v;
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
    std::vector<unsigned long> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= bound && i * i <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

namespace {

class RandState {
  public:
    explicit RandState(std::uint64_t seed) {
        gmp_randinit_mt(state_);
        gmp_randseed_ui(state_, static_cast<unsigned long>(seed));
    }
    ~RandState() { gmp_randclear(state_); }
    RandState(const RandState&) = delete;
    RandState& operator=(const RandState&) = delete;

    // uniform in [lo, hi)
    mpz_class uniform(const mpz_class& lo, const mpz_class& hi) {
        mpz_class span = hi - lo, r;
        mpz_urandomm(r.get_mpz_t(), state_, span.get_mpz_t());
        return lo + r;
    }

  private:
    gmp_randstate_t state_;
};

bool strong_probable_prime(const mpz_class& n, const mpz_class& base,
                           const mpz_class& d, unsigned long r) {
    mpz_class a = base % n;
    if (a == 0) return true;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Deterministic below 2^64 with the first twelve prime bases.
const unsigned long kSmallWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

PrimalityResult is_probable_prime(const mpz_class& n, std::uint64_t seed) {
    if (n < 2) return {false, true};
    for (unsigned long w : kSmallWitnesses) {
        if (n == w) return {true, true};
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return {false, true};
    }
    mpz_class d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    mpz_class two_64;
    mpz_ui_pow_ui(two_64.get_mpz_t(), 2, 64);
    if (n < two_64) {
        for (unsigned long w : kSmallWitnesses)
            if (!strong_probable_prime(n, mpz_class(w), d, r)) return {false, true};
        return {true, true};
    }
    RandState rng(seed);
    for (int round = 0; round < 64; ++round) {
        mpz_class a = rng.uniform(2, n - 1);
        if (!strong_probable_prime(n, a, d, r)) return {false, true};
    }
    return {true, false};
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    mpz_class m = abs(n), q, rem;
    unsigned v = 0;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) break;
        m = q;
        ++v;
    }
    return v;
}

namespace {

const std::vector<unsigned long>& trial_primes(unsigned long bound) {
    static thread_local unsigned long cached_bound = 0;
    static thread_local std::vector<unsigned long> cached;
    if (bound > cached_bound) {
        cached = primes_up_to(bound);
        cached_bound = bound;
    }
    return cached;
}

// Brent's cycle variant with batched gcds; returns a nontrivial factor of n
// or 1 on failure.  `iters` is decremented as the budget is consumed.
mpz_class pollard_brent(const mpz_class& n, RandState& rng, unsigned long& iters) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), 2)) return 2;
    while (iters > 0) {
        mpz_class y = rng.uniform(1, n);
        mpz_class c = rng.uniform(1, n);
        mpz_class g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1 && iters > 0) {
            x = y;
            for (unsigned long i = 0; i < r && iters > 0; ++i) {
                y = (y * y + c) % n;
                if (iters) --iters;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && iters > 0) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim && iters > 0; ++i) {
                    y = (y * y + c) % n;
                    mpz_class diff = x - y;
                    q = (q * abs(diff)) % n;
                    if (iters) --iters;
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class diff = x - ys;
                g = gcd(abs(diff), n);
            }
        }
        if (g != n && g != 1) return g;
        // retry with a new polynomial if the budget allows
    }
    return 1;
}

void factor_recursive(mpz_class n, Factorization& out, RandState& rng,
                      unsigned long& iters, std::uint64_t seed) {
    if (n == 1) return;
    PrimalityResult pr = is_probable_prime(n, seed);
    if (pr.is_prime) {
        if (!pr.deterministic) out.any_probable_prime = true;
        for (auto& [p, e] : out.prime_powers)
            if (p == n) {
                ++e;
                return;
            }
        out.prime_powers.emplace_back(n, 1);
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                for (unsigned long i = 0; i < k; ++i)
                    factor_recursive(root, out, rng, iters, seed);
                return;
            }
        }
    }
    mpz_class d = pollard_brent(n, rng, iters);
    if (d == 1 || d == n) {
        out.cofactor *= n;
        return;
    }
    factor_recursive(d, out, rng, iters, seed);
    factor_recursive(n / d, out, rng, iters, seed);
}

}  // namespace

Factorization factor_integer(const mpz_class& n, const FactorBudget& budget,
                             std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("factor_integer: zero input");
    Factorization out;
    out.sign = sgn(n) < 0 ? -1 : 1;
    mpz_class m = abs(n);

    for (unsigned long p : trial_primes(budget.trial_bound)) {
        if (m == 1 || p > budget.trial_bound) break;
        mpz_class pp(p);
        if (pp * pp > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out.prime_powers.emplace_back(pp, e);
    }
    if (m > 1) {
        RandState rng(seed);
        unsigned long iters = budget.rho_iterations;
        factor_recursive(m, out, rng, iters, seed);
    }
    std::sort(out.prime_powers.begin(), out.prime_powers.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace mori
