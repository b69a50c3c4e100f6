#include "mori/finfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mori {

namespace {

mpz_class mod_reduce(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

bool is_quadratic_residue(const mpz_class& a, const mpz_class& p) {
    mpz_class r = mod_reduce(a, p);
    if (r == 0) return true;
    mpz_class e = (p - 1) / 2, x;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return x == 1;
}

}  // namespace

FqContext FqContext::prime_field(const mpz_class& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        throw std::invalid_argument("FqContext: p must be an odd prime");
    FqContext c;
    c.p_ = p;
    c.k_ = 1;
    return c;
}

FqContext FqContext::quadratic_extension(const mpz_class& p) {
    FqContext c = prime_field(p);
    c.k_ = 2;
    mpz_class s = 2;
    while (is_quadratic_residue(s, p)) ++s;
    c.nonresidue_ = s;
    return c;
}

FqElement FqContext::make(const mpz_class& a0, const mpz_class& a1) const {
    if (k_ == 1 && a1 != 0)
        throw std::invalid_argument("FqContext: extension coordinate in a prime field");
    return {mod_reduce(a0, p_), mod_reduce(a1, p_)};
}

FqElement FqContext::add(const FqElement& a, const FqElement& b) const {
    return {mod_reduce(a.a0 + b.a0, p_), mod_reduce(a.a1 + b.a1, p_)};
}

FqElement FqContext::sub(const FqElement& a, const FqElement& b) const {
    return {mod_reduce(a.a0 - b.a0, p_), mod_reduce(a.a1 - b.a1, p_)};
}

FqElement FqContext::neg(const FqElement& a) const {
    return {mod_reduce(-a.a0, p_), mod_reduce(-a.a1, p_)};
}

FqElement FqContext::mul(const FqElement& a, const FqElement& b) const {
    if (k_ == 1) return {mod_reduce(a.a0 * b.a0, p_), 0};
    // (a0 + a1 t)(b0 + b1 t), t^2 = s
    mpz_class c0 = a.a0 * b.a0 + nonresidue_ * a.a1 * b.a1;
    mpz_class c1 = a.a0 * b.a1 + a.a1 * b.a0;
    return {mod_reduce(c0, p_), mod_reduce(c1, p_)};
}

FqElement FqContext::inv(const FqElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("FqContext: inverse of zero");
    if (k_ == 1 || a.a1 == 0) {
        mpz_class r;
        if (!mpz_invert(r.get_mpz_t(), a.a0.get_mpz_t(), p_.get_mpz_t()))
            throw std::invalid_argument("FqContext: not invertible");
        return {r, 0};
    }
    // (a0 + a1 t)^(-1) = (a0 - a1 t) / (a0^2 - s a1^2)
    mpz_class norm = mod_reduce(a.a0 * a.a0 - nonresidue_ * a.a1 * a.a1, p_);
    mpz_class ninv;
    if (!mpz_invert(ninv.get_mpz_t(), norm.get_mpz_t(), p_.get_mpz_t()))
        throw std::logic_error("FqContext: singular norm in F_{p^2}");
    return {mod_reduce(a.a0 * ninv, p_), mod_reduce(-a.a1 * ninv, p_)};
}

FqElement FqContext::pow(const FqElement& a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), mpz_class(-e));
    if (k_ == 1) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), a.a0.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
        return {r, 0};
    }
    FqElement acc = one(), base = a;
    mpz_class exp = e;
    std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    if (exp == 0) return one();
    for (std::size_t i = bits; i-- > 0;) {
        acc = mul(acc, acc);
        if (mpz_tstbit(exp.get_mpz_t(), i)) acc = mul(acc, base);
    }
    return acc;
}

std::string FqContext::to_string(const FqElement& a) const {
    if (k_ == 1 || a.a1 == 0) return a.a0.get_str();
    std::ostringstream os;
    os << a.a0.get_str() << "+" << a.a1.get_str() << "*t";
    return os.str();
}

int FqContext::compare(const FqElement& a, const FqElement& b) {
    if (a.a0 != b.a0) return a.a0 < b.a0 ? -1 : 1;
    if (a.a1 != b.a1) return a.a1 < b.a1 ? -1 : 1;
    return 0;
}

std::optional<mpz_class> sqrt_mod(const mpz_class& a_in, const mpz_class& p) {
    mpz_class a = mod_reduce(a_in, p);
    if (a == 0) return mpz_class(0);
    if (!is_quadratic_residue(a, p)) return std::nullopt;
    if (mpz_tstbit(p.get_mpz_t(), 1)) {  // p == 3 mod 4
        mpz_class e = (p + 1) / 4, r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // Tonelli-Shanks
    mpz_class q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    mpz_class z = 2;
    while (is_quadratic_residue(z, p)) ++z;
    mpz_class c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_class e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        mpz_class tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
            if (i == m) return std::nullopt;  // unreachable for residues
        }
        mpz_class b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

FqPoly::FqPoly(FqContext ctx, std::vector<FqElement> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    for (auto& e : c_) e = ctx_.make(e.a0, e.a1);
    strip();
}

void FqPoly::strip() {
    while (!c_.empty() && ctx_.is_zero(c_.back())) c_.pop_back();
}

FqPoly FqPoly::x(const FqContext& ctx) {
    return FqPoly(ctx, {ctx.zero(), ctx.one()});
}

FqPoly FqPoly::constant(const FqContext& ctx, const FqElement& c) {
    return FqPoly(ctx, {c});
}

bool FqPoly::is_one() const {
    return c_.size() == 1 && c_[0] == ctx_.one();
}

FqElement FqPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : ctx_.zero();
}

FqElement FqPoly::leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

bool FqPoly::is_monic() const { return !is_zero() && c_.back() == ctx_.one(); }

FqPoly FqPoly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic(): zero polynomial");
    if (is_monic()) return *this;
    FqElement li = ctx_.inv(leading());
    std::vector<FqElement> c(c_);
    for (auto& e : c) e = ctx_.mul(e, li);
    return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::derivative() const {
    if (c_.size() <= 1) return FqPoly(ctx_);
    std::vector<FqElement> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = ctx_.mul(c_[i], ctx_.make(mpz_class(static_cast<unsigned long>(i))));
    return FqPoly(ctx_, std::move(d));
}

FqElement FqPoly::evaluate(const FqElement& x) const {
    FqElement acc = ctx_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = ctx_.add(ctx_.mul(acc, x), *it);
    return acc;
}

std::string FqPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (ctx_.is_zero(c_[i])) continue;
        if (any) os << " + ";
        if (i == 0 || !(c_[i] == ctx_.one())) os << "(" << ctx_.to_string(c_[i]) << ")";
        if (i == 1)
            os << (c_[i] == ctx_.one() ? "x" : "*x");
        else if (i > 1)
            os << (c_[i] == ctx_.one() ? "x^" : "*x^") << i;
        any = true;
    }
    return os.str();
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    const FqContext& ctx = a.context();
    std::vector<FqElement> c(std::max(a.c_.size(), b.c_.size()), ctx.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a.coeff(i), b.coeff(i));
    return FqPoly(ctx, std::move(c));
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    const FqContext& ctx = a.context();
    std::vector<FqElement> c(std::max(a.c_.size(), b.c_.size()), ctx.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(a.coeff(i), b.coeff(i));
    return FqPoly(ctx, std::move(c));
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    const FqContext& ctx = a.context();
    if (a.is_zero() || b.is_zero()) return FqPoly(ctx);
    std::vector<FqElement> c(a.c_.size() + b.c_.size() - 1, ctx.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = ctx.add(c[i + j], ctx.mul(a.c_[i], b.c_[j]));
    return FqPoly(ctx, std::move(c));
}

bool FqPoly::equals(const FqPoly& other) const {
    return c_ == other.c_;
}

int FqPoly::compare(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int c = FqContext::compare(a.c_[i], b.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::pair<FqPoly, FqPoly> divrem(const FqPoly& u, const FqPoly& v) {
    const FqContext& ctx = u.context();
    if (v.is_zero()) throw std::invalid_argument("divrem by zero polynomial");
    if (u.degree() < v.degree()) return {FqPoly(ctx), u};
    FqElement lv_inv = ctx.inv(v.leading());
    std::vector<FqElement> r(u.coeffs());
    int du = u.degree(), dv = v.degree();
    std::vector<FqElement> q(static_cast<std::size_t>(du - dv + 1), ctx.zero());
    for (int k = du; k >= dv; --k) {
        FqElement c = ctx.mul(r[static_cast<std::size_t>(k)], lv_inv);
        if (ctx.is_zero(c)) continue;
        q[static_cast<std::size_t>(k - dv)] = c;
        for (int i = 0; i <= dv; ++i) {
            auto& ri = r[static_cast<std::size_t>(k - dv + i)];
            ri = ctx.sub(ri, ctx.mul(c, v.coeffs()[static_cast<std::size_t>(i)]));
        }
    }
    r.resize(static_cast<std::size_t>(dv));
    return {FqPoly(ctx, std::move(q)), FqPoly(ctx, std::move(r))};
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

FqPoly powmod(const FqPoly& base, const mpz_class& e, const FqPoly& modulus) {
    const FqContext& ctx = base.context();
    if (e < 0) throw std::invalid_argument("powmod: negative exponent");
    FqPoly acc = FqPoly::constant(ctx, ctx.one());
    if (e == 0) return acc;
    FqPoly b = divrem(base, modulus).second;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = divrem(acc * acc, modulus).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = divrem(acc * b, modulus).second;
    }
    return acc;
}

FqPoly reduce_mod(const IntPolynomial& u, const mpz_class& ell) {
    if (ell == 2) {
        if (u.denom_exponent() > 0)
            throw std::invalid_argument("not reducible at 2: denominator is a power of 2");
        throw std::invalid_argument("reduction at 2 unsupported (odd primes only)");
    }
    FqContext ctx = FqContext::prime_field(ell);
    mpz_class two_e = 1;
    mpz_mul_2exp(two_e.get_mpz_t(), two_e.get_mpz_t(), u.denom_exponent());
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), two_e.get_mpz_t(), ell.get_mpz_t()))
        throw std::invalid_argument("reduce_mod: denominator not invertible");
    std::vector<FqElement> c;
    c.reserve(u.numerators().size());
    for (const auto& a : u.numerators()) c.push_back(ctx.make(a * inv));
    return FqPoly(ctx, std::move(c));
}

FqPoly reduce_mod(const Trinomial& u, const mpz_class& ell) {
    return reduce_mod(u.to_polynomial(), ell);
}

std::vector<unsigned> FactorPattern::degree_partition() const {
    std::vector<unsigned> d;
    for (const auto& e : entries)
        for (unsigned i = 0; i < e.multiplicity; ++i) d.push_back(e.degree);
    std::sort(d.rbegin(), d.rend());
    return d;
}

unsigned FactorPattern::total_degree() const {
    unsigned t = 0;
    for (const auto& e : entries) t += e.degree * e.multiplicity;
    return t;
}

bool operator==(const FactorPattern& a, const FactorPattern& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].degree != b.entries[i].degree ||
            a.entries[i].multiplicity != b.entries[i].multiplicity ||
            a.entries[i].factor_coeffs != b.entries[i].factor_coeffs)
            return false;
    }
    return true;
}

namespace {

class PolyRand {
  public:
    PolyRand(std::uint64_t seed) {
        gmp_randinit_mt(state_);
        gmp_randseed_ui(state_, static_cast<unsigned long>(seed));
    }
    ~PolyRand() { gmp_randclear(state_); }

    FqElement element(const FqContext& ctx) {
        mpz_class a0, a1;
        mpz_urandomm(a0.get_mpz_t(), state_, ctx.p().get_mpz_t());
        if (ctx.k() == 2) mpz_urandomm(a1.get_mpz_t(), state_, ctx.p().get_mpz_t());
        return {a0, a1};
    }

    FqPoly poly_below(const FqContext& ctx, int degree_bound) {
        std::vector<FqElement> c;
        c.reserve(static_cast<std::size_t>(degree_bound));
        for (int i = 0; i < degree_bound; ++i) c.push_back(element(ctx));
        return FqPoly(ctx, std::move(c));
    }

  private:
    gmp_randstate_t state_;
};

// p-th root coefficientwise: in F_{p^k} the inverse Frobenius is a -> a^{p^(k-1)}.
FqPoly pth_root(const FqPoly& u) {
    const FqContext& ctx = u.context();
    const mpz_class& p = ctx.p();
    unsigned long pu = mpz_get_ui(p.get_mpz_t());
    if (!mpz_fits_ulong_p(p.get_mpz_t()))
        throw std::invalid_argument("pth_root: characteristic too large for a p-th power input");
    std::vector<FqElement> c;
    for (std::size_t i = 0; i < u.coeffs().size(); i += pu) {
        FqElement a = u.coeffs()[i];
        c.push_back(ctx.k() == 1 ? a : ctx.pow(a, p));
    }
    return FqPoly(ctx, std::move(c));
}

// squarefree decomposition: list of (squarefree monic factor, multiplicity)
void squarefree_decompose(const FqPoly& u, unsigned mult,
                          std::vector<std::pair<FqPoly, unsigned>>& out) {
    const FqContext& ctx = u.context();
    if (u.degree() < 1) return;
    FqPoly up = u.derivative();
    if (up.is_zero()) {
        // u is a p-th power
        unsigned long pu = mpz_get_ui(ctx.p().get_mpz_t());
        squarefree_decompose(pth_root(u), mult * static_cast<unsigned>(pu), out);
        return;
    }
    FqPoly g = poly_gcd(u, up);
    FqPoly w = divrem(u, g).first;
    unsigned i = 1;
    while (!w.is_one()) {
        FqPoly y = poly_gcd(w, g);
        FqPoly z = divrem(w, y).first;
        if (z.degree() >= 1) out.emplace_back(z.monic(), mult * i);
        w = y;
        g = divrem(g, y).first;
        ++i;
    }
    if (g.degree() >= 1) {
        unsigned long pu = mpz_get_ui(ctx.p().get_mpz_t());
        squarefree_decompose(pth_root(g), mult * static_cast<unsigned>(pu), out);
    }
}

void equal_degree_split(const FqPoly& u, unsigned d, PolyRand& rng,
                        std::vector<FqPoly>& out) {
    const FqContext& ctx = u.context();
    if (u.degree() == static_cast<int>(d)) {
        out.push_back(u.monic());
        return;
    }
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), ctx.q().get_mpz_t(), d);
    mpz_class e = (qd - 1) / 2;
    while (true) {
        FqPoly r = rng.poly_below(ctx, u.degree());
        if (r.degree() < 1) continue;
        FqPoly g = poly_gcd(r, u);
        if (g.degree() >= 1 && g.degree() < u.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(divrem(u, g).first.monic(), d, rng, out);
            return;
        }
        FqPoly s = powmod(r, e, u);
        FqPoly s1 = s - FqPoly::constant(ctx, ctx.one());
        g = poly_gcd(s1, u);
        if (g.degree() >= 1 && g.degree() < u.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(divrem(u, g).first.monic(), d, rng, out);
            return;
        }
    }
}

// distinct-degree then equal-degree factorization of a squarefree monic poly
std::vector<FqPoly> factor_squarefree(FqPoly u, PolyRand& rng) {
    const FqContext& ctx = u.context();
    std::vector<FqPoly> out;
    if (u.degree() < 1) return out;
    FqPoly h = FqPoly::x(ctx);
    const FqPoly x = FqPoly::x(ctx);
    unsigned d = 0;
    while (u.degree() >= 2 * static_cast<int>(d + 1)) {
        ++d;
        h = powmod(h, ctx.q(), u);
        FqPoly g = poly_gcd(h - x, u);
        if (g.degree() >= 1) {
            equal_degree_split(g, d, rng, out);
            u = divrem(u, g).first.monic();
            h = divrem(h, u).second;
        }
    }
    if (u.degree() >= 1) out.push_back(u);
    return out;
}

}  // namespace

FactorPattern factor(const FqPoly& input, std::uint64_t seed) {
    if (input.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    const FqContext& ctx = input.context();
    FqPoly u = input.monic();
    PolyRand rng(seed);

    std::vector<std::pair<FqPoly, unsigned>> squarefree;
    squarefree_decompose(u, 1, squarefree);

    FactorPattern pattern;
    for (const auto& [part, mult] : squarefree) {
        for (const auto& irr : factor_squarefree(part, rng)) {
            FactorPatternEntry e;
            e.degree = static_cast<unsigned>(irr.degree());
            e.multiplicity = mult;
            e.factor_coeffs = irr.coeffs();
            pattern.entries.push_back(std::move(e));
        }
    }
    std::sort(pattern.entries.begin(), pattern.entries.end(),
              [&](const FactorPatternEntry& a, const FactorPatternEntry& b) {
                  if (a.degree != b.degree) return a.degree < b.degree;
                  FqPoly pa(ctx, a.factor_coeffs), pb(ctx, b.factor_coeffs);
                  return FqPoly::compare(pa, pb) < 0;
              });
    // merge equal factors (possible when squarefree parts repeat across
    // multiplicity classes -- they cannot, but keep the invariant airtight)
    std::vector<FactorPatternEntry> merged;
    for (auto& e : pattern.entries) {
        if (!merged.empty() && merged.back().degree == e.degree &&
            merged.back().factor_coeffs == e.factor_coeffs)
            merged.back().multiplicity += e.multiplicity;
        else
            merged.push_back(std::move(e));
    }
    pattern.entries = std::move(merged);

    // reconstruction invariant
    FqPoly prod = FqPoly::constant(ctx, ctx.one());
    for (const auto& e : pattern.entries) {
        FqPoly f(ctx, e.factor_coeffs);
        for (unsigned i = 0; i < e.multiplicity; ++i) prod = prod * f;
    }
    if (!prod.equals(u))
        throw std::logic_error("factor: reconstruction check failed");
    return pattern;
}

std::vector<MultiplicityEntry> multiplicity_profile(const FqPoly& u, std::uint64_t seed) {
    FactorPattern pattern = factor(u, seed);
    const FqContext& ctx = u.context();
    std::vector<MultiplicityEntry> out;
    for (const auto& e : pattern.entries) {
        if (e.multiplicity < 2) continue;
        MultiplicityEntry m{FqPoly(ctx, e.factor_coeffs), e.multiplicity, false, {}};
        if (e.degree == 1) {
            m.is_linear = true;
            m.root = ctx.neg(e.factor_coeffs[0]);
        }
        out.push_back(std::move(m));
    }
    return out;
}

FqElement expected_double_root(unsigned n, const FqElement& B, const FqElement& C,
                               const FqContext& ctx) {
    FqElement nn = ctx.make(mpz_class(n));
    FqElement n1 = ctx.make(mpz_class(n - 1));
    FqElement den = ctx.mul(n1, B);
    if (ctx.is_zero(den))
        throw std::invalid_argument("expected_double_root: (n-1)*B vanishes; hypotheses violated");
    return ctx.neg(ctx.mul(ctx.mul(nn, C), ctx.inv(den)));
}

mpz_class multiplicative_order(const FqElement& a, const FqContext& ctx,
                               const FactorBudget& budget, std::uint64_t seed) {
    if (ctx.is_zero(a)) throw std::invalid_argument("multiplicative_order of zero");
    mpz_class group = ctx.q() - 1;
    Factorization f = factor_integer(group, budget, seed);
    if (!f.complete())
        throw std::runtime_error("multiplicative_order: factorization of q-1 exceeded budget");
    mpz_class order = group;
    for (const auto& [prime, e] : f.prime_powers) {
        for (unsigned i = 0; i < e; ++i) {
            mpz_class cand = order / prime;
            if (ctx.pow(a, cand) == ctx.one())
                order = cand;
            else
                break;
        }
    }
    return order;
}

bool is_primitive(const FqElement& a, const FqContext& ctx, const FactorBudget& budget,
                  std::uint64_t seed) {
    if (ctx.is_zero(a)) return false;
    return multiplicative_order(a, ctx, budget, seed) == ctx.q() - 1;
}

bool is_dth_power(const FqElement& a, const mpz_class& d, const FqContext& ctx) {
    if (ctx.is_zero(a)) throw std::invalid_argument("is_dth_power: zero input");
    if (d <= 0) throw std::invalid_argument("is_dth_power: d must be positive");
    mpz_class group = ctx.q() - 1;
    mpz_class g = gcd(d, group);
    return ctx.pow(a, group / g) == ctx.one();
}

}  // namespace mori
