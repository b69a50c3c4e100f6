#include "mori/numfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mori {

namespace {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class mod_p(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

}  // namespace

const std::vector<int>& ImagQuadField::supported() {
    static const std::vector<int> fields = {-1, -2, -3, -7, -11, -19, -43, -67, -163};
    return fields;
}

ImagQuadField::ImagQuadField(int d) : d_(d) {
    half_ = ((d % 4 + 4) % 4) == 1;  // d = 1 mod 4 (d negative)
    disc_ = half_ ? mpz_class(d) : mpz_class(4 * d);
}

ImagQuadField ImagQuadField::make(int d) {
    const auto& ok = supported();
    if (std::find(ok.begin(), ok.end(), d) == ok.end())
        throw std::invalid_argument(
            "unsupported field: d must be one of the nine imaginary quadratic fields "
            "of class number 1 (-1,-2,-3,-7,-11,-19,-43,-67,-163)");
    return ImagQuadField(d);
}

std::string ImagQuadField::omega_description() const {
    std::ostringstream os;
    if (half_)
        os << "(1+sqrt(" << d_ << "))/2";
    else
        os << "sqrt(" << d_ << ")";
    return os.str();
}

mpz_class ImagQuadField::min_poly_b() const { return half_ ? mpz_class(-1) : mpz_class(0); }
mpz_class ImagQuadField::min_poly_c() const {
    return half_ ? mpz_class((1 - d_) / 4) : mpz_class(-d_);
}

OKElement ImagQuadField::add(const OKElement& a, const OKElement& b) const {
    return {a.x + b.x, a.y + b.y};
}
OKElement ImagQuadField::sub(const OKElement& a, const OKElement& b) const {
    return {a.x - b.x, a.y - b.y};
}
OKElement ImagQuadField::neg(const OKElement& a) const { return {-a.x, -a.y}; }

OKElement ImagQuadField::mul(const OKElement& a, const OKElement& b) const {
    if (!half_) {
        // omega^2 = d
        return {a.x * b.x + d_ * (a.y * b.y), a.x * b.y + a.y * b.x};
    }
    // omega^2 = omega - c with c = (1-d)/4
    mpz_class c = min_poly_c();
    return {a.x * b.x - c * (a.y * b.y), a.x * b.y + a.y * b.x + a.y * b.y};
}

OKElement ImagQuadField::conj(const OKElement& a) const {
    if (!half_) return {a.x, -a.y};
    return {a.x + a.y, -a.y};  // conj(omega) = 1 - omega
}

OKElement ImagQuadField::pow(const OKElement& a, unsigned long e) const {
    OKElement acc = from_int(1), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

mpz_class ImagQuadField::norm(const OKElement& a) const {
    if (!half_) return a.x * a.x - d_ * (a.y * a.y);
    return a.x * a.x + a.x * a.y + min_poly_c() * (a.y * a.y);
}

bool ImagQuadField::divides(const OKElement& a, const OKElement& b) const {
    if (is_zero(a)) return is_zero(b);
    mpz_class n = norm(a);
    OKElement z = mul(b, conj(a));
    return mpz_divisible_p(z.x.get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(z.y.get_mpz_t(), n.get_mpz_t());
}

OKElement ImagQuadField::exact_div(const OKElement& b, const OKElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("OK division by zero");
    mpz_class n = norm(a);
    OKElement z = mul(b, conj(a));
    if (!mpz_divisible_p(z.x.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(z.y.get_mpz_t(), n.get_mpz_t()))
        throw std::invalid_argument("OK division is not exact");
    return {z.x / n, z.y / n};
}

std::string ImagQuadField::to_string(const OKElement& a) const {
    std::ostringstream os;
    if (a.y == 0) {
        os << a.x.get_str();
        return os.str();
    }
    if (a.x != 0) {
        os << a.x.get_str();
        if (a.y > 0) os << "+";
    }
    if (a.y == -1)
        os << "-";
    else if (a.y != 1)
        os << a.y.get_str() << "*";
    os << (d_ == -1 && !half_ ? "i" : "w");
    return os.str();
}

OKElement ImagQuadField::parse(const std::string& text) const {
    // forms: "x", "x+y*w", "x-y*w", "y*w", "w", "-w"; "i" is a synonym of w
    // when d = -1
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty OK element");

    auto is_omega_token = [&](char ch) {
        return ch == 'w' || ch == 'W' || (d_ == -1 && (ch == 'i' || ch == 'I'));
    };

    // split at the last top-level '+' or '-' that is not a leading sign
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    }
    auto to_mpz = [](std::string s2) {
        if (!s2.empty() && s2.front() == '+') s2.erase(0, 1);
        return mpz_class(s2);
    };
    auto parse_part = [&](const std::string& part, mpz_class& coord_x,
                          mpz_class& coord_y) {
        if (part.empty()) throw std::invalid_argument("malformed OK element");
        char last = part.back();
        if (is_omega_token(last)) {
            std::string coef = part.substr(0, part.size() - 1);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            if (coef.empty() || coef == "+")
                coord_y += 1;
            else if (coef == "-")
                coord_y -= 1;
            else
                coord_y += to_mpz(coef);
        } else {
            coord_x += to_mpz(part);
        }
    };

    mpz_class x = 0, y = 0;
    if (split == std::string::npos) {
        parse_part(s, x, y);
    } else {
        parse_part(s.substr(0, split), x, y);
        std::string rest = s.substr(split);  // keeps the sign
        parse_part(rest, x, y);
    }
    return {x, y};
}

namespace {

// All solutions (up to conjugation and unit sign) of N(pi) = m, via a
// bounded scan over the omega coordinate; class number 1 guarantees a
// principal generator exists whenever the ideal does.
std::vector<OKElement> norm_equation(const ImagQuadField& K, const mpz_class& m) {
    std::vector<OKElement> out;
    mpz_class absd(-K.d());
    if (!K.half_integral()) {
        // x^2 + |d| y^2 = m
        for (mpz_class y = 0; absd * y * y <= m; ++y) {
            mpz_class rest = m - absd * y * y;
            if (mpz_perfect_square_p(rest.get_mpz_t())) {
                mpz_class x;
                mpz_sqrt(x.get_mpz_t(), rest.get_mpz_t());
                out.push_back({x, y});
            }
        }
    } else {
        // (2x + y)^2 + |d| y^2 = 4m
        mpz_class m4 = 4 * m;
        for (mpz_class y = 0; absd * y * y <= m4; ++y) {
            mpz_class rest = m4 - absd * y * y;
            if (!mpz_perfect_square_p(rest.get_mpz_t())) continue;
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
            // need s = y mod 2 for x integral; try both signs of s
            for (int sign = 0; sign < 2; ++sign) {
                mpz_class ss = sign ? mpz_class(-s) : s;
                mpz_class num = ss - y;
                if (mpz_odd_p(num.get_mpz_t())) continue;
                out.push_back({num / 2, y});
                if (s == 0) break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<MaximalIdeal> splitting(const mpz_class& p, const ImagQuadField& K) {
    std::vector<MaximalIdeal> out;
    bool ramified = mpz_divisible_p(K.discriminant().get_mpz_t(), p.get_mpz_t());

    if (p == 2) {
        MaximalIdeal ideal;
        ideal.p = 2;
        if (ramified) {
            ideal.res_degree = 1;
            ideal.ram_index = 2;
        } else {
            // split iff the minimal polynomial t^2 - t + c factors mod 2,
            // i.e. c = (1-d)/4 is even (d = 1 mod 8)
            mpz_class c = K.min_poly_c();
            if (mpz_even_p(c.get_mpz_t())) {
                // two ideals with omega = 0 resp. 1 mod b
                for (int r = 0; r <= 1; ++r) {
                    MaximalIdeal id2;
                    id2.p = 2;
                    id2.res_degree = 1;
                    id2.ram_index = 1;
                    id2.omega_a0 = r;
                    for (const auto& cand : norm_equation(K, mpz_class(2))) {
                        for (const OKElement& pi :
                             {cand, K.conj(cand), K.neg(cand), K.neg(K.conj(cand))}) {
                            mpz_class residue = pi.x + pi.y * r;
                            if (mpz_even_p(residue.get_mpz_t()) && K.norm(pi) == 2) {
                                id2.generator = pi;
                                goto found2;
                            }
                        }
                    }
                    throw std::logic_error("splitting: no generator of norm 2 found");
                found2:
                    out.push_back(id2);
                }
                return out;
            }
            MaximalIdeal inert;
            inert.p = 2;
            inert.res_degree = 2;
            inert.ram_index = 1;
            inert.generator = K.from_int(2);
            out.push_back(inert);
            return out;
        }
        auto sols = norm_equation(K, mpz_class(2));
        if (sols.empty()) throw std::logic_error("splitting: ramified 2 without generator");
        ideal.generator = sols.front();
        ideal.omega_a0 = 0;  // omega image mod 2 unused (characteristic 2)
        out.push_back(ideal);
        return out;
    }

    // odd p: factor t^2 + b t + c mod p
    mpz_class b = K.min_poly_b(), c = K.min_poly_c();
    mpz_class disc_min = b * b - 4 * c;  // = d or 4d
    int kron = mpz_kronecker(disc_min.get_mpz_t(), p.get_mpz_t());

    if (kron == -1) {
        MaximalIdeal inert;
        inert.p = p;
        inert.res_degree = 2;
        inert.ram_index = 1;
        inert.generator = K.from_int(p);
        // omega -> a0 + a1*t in F_{p^2} = F_p[t]/(t^2 - nr)
        FqContext fq = FqContext::quadratic_extension(p);
        mpz_class nr = fq.nonresidue();
        mpz_class nr_inv;
        mpz_invert(nr_inv.get_mpz_t(), nr.get_mpz_t(), p.get_mpz_t());
        mpz_class dmod = mod_p(mpz_class(K.d()), p);
        auto B = sqrt_mod(mod_p(dmod * nr_inv, p), p);
        if (!B) throw std::logic_error("splitting: sqrt(d/nr) must exist for inert p");
        mpz_class Bv = *B;
        if (Bv > p - Bv) Bv = p - Bv;  // canonical choice of embedding
        if (!K.half_integral()) {
            inert.omega_a0 = 0;
            inert.omega_a1 = Bv;
        } else {
            mpz_class inv2;
            mpz_invert(inv2.get_mpz_t(), mpz_class(2).get_mpz_t(), p.get_mpz_t());
            inert.omega_a0 = mod_p(inv2, p);
            inert.omega_a1 = mod_p(Bv * inv2, p);
        }
        out.push_back(inert);
        return out;
    }

    // split or ramified: roots r of t^2 + bt + c mod p
    std::vector<mpz_class> roots;
    {
        auto sq = sqrt_mod(mod_p(disc_min, p), p);
        if (!sq) throw std::logic_error("splitting: discriminant not a residue");
        mpz_class inv2;
        mpz_invert(inv2.get_mpz_t(), mpz_class(2).get_mpz_t(), p.get_mpz_t());
        mpz_class r1 = mod_p((-b + *sq) * inv2, p);
        mpz_class r2 = mod_p((-b - *sq) * inv2, p);
        roots.push_back(r1);
        if (r2 != r1) roots.push_back(r2);
        std::sort(roots.begin(), roots.end());
    }

    auto sols = norm_equation(K, p);
    if (sols.empty()) throw std::logic_error("splitting: norm equation unsolvable");
    for (const mpz_class& r : roots) {
        MaximalIdeal ideal;
        ideal.p = p;
        ideal.res_degree = 1;
        ideal.ram_index = ramified ? 2 : 1;
        ideal.omega_a0 = r;
        bool assigned = false;
        for (const auto& cand : sols) {
            for (const OKElement& pi : {cand, K.conj(cand)}) {
                mpz_class residue = mod_p(pi.x + pi.y * r, p);
                if (residue == 0) {
                    ideal.generator = pi;
                    assigned = true;
                    break;
                }
            }
            if (assigned) break;
        }
        if (!assigned) throw std::logic_error("splitting: generator does not match root");
        out.push_back(ideal);
    }
    return out;
}

MaximalIdeal ideal_from_generator(const OKElement& pi, const ImagQuadField& K,
                                  std::uint64_t seed) {
    if (K.is_zero(pi) || K.is_unit(pi))
        throw std::invalid_argument("ideal generator must be a nonzero nonunit");
    mpz_class nrm = K.norm(pi);
    PrimalityResult pr = is_probable_prime(nrm, seed);
    if (pr.is_prime) {
        MaximalIdeal ideal;
        ideal.p = nrm;
        ideal.res_degree = 1;
        ideal.generator = pi;
        ideal.ram_index =
            mpz_divisible_p(K.discriminant().get_mpz_t(), nrm.get_mpz_t()) ? 2 : 1;
        if (mpz_odd_p(nrm.get_mpz_t())) {
            // omega = -x / y mod p; y is a unit mod p for a degree-1 ideal
            mpz_class yinv;
            mpz_class ymod = mod_p(pi.y, nrm);
            if (ymod == 0 || !mpz_invert(yinv.get_mpz_t(), ymod.get_mpz_t(), nrm.get_mpz_t()))
                throw std::logic_error("ideal_from_generator: omega coordinate not invertible");
            ideal.omega_a0 = mod_p(-pi.x * yinv, nrm);
        }
        return ideal;
    }
    // inert: the generator must be an associate of a rational prime p with
    // norm p^2
    if (mpz_perfect_square_p(nrm.get_mpz_t())) {
        mpz_class p;
        mpz_sqrt(p.get_mpz_t(), nrm.get_mpz_t());
        if (is_probable_prime(p, seed).is_prime) {
            OKElement pz = K.from_int(p);
            if (K.divides(pi, pz) && K.divides(pz, pi)) {
                auto ideals = splitting(p, K);
                if (ideals.size() == 1 && ideals.front().res_degree == 2)
                    return ideals.front();
            }
        }
    }
    throw std::invalid_argument(
        "generator does not define a maximal ideal (norm is neither prime nor the "
        "square of an inert prime)");
}

FqContext residue_field(const MaximalIdeal& ideal) {
    if (mpz_even_p(ideal.p.get_mpz_t()))
        throw std::invalid_argument("residue_field: characteristic 2 not supported");
    return ideal.res_degree == 1 ? FqContext::prime_field(ideal.p)
                                 : FqContext::quadratic_extension(ideal.p);
}

FqElement residue_map(const OKElement& z, const MaximalIdeal& ideal,
                      const FqContext& ctx, const ImagQuadField& K) {
    (void)K;
    if (ideal.res_degree == 1)
        return ctx.make(z.x + z.y * ideal.omega_a0);
    return ctx.make(z.x + z.y * ideal.omega_a0, z.y * ideal.omega_a1);
}

unsigned ideal_valuation(const OKElement& z, const MaximalIdeal& ideal,
                         const ImagQuadField& K) {
    if (K.is_zero(z)) throw std::invalid_argument("ideal_valuation of zero");
    unsigned v = 0;
    OKElement cur = z;
    while (K.divides(ideal.generator, cur)) {
        cur = K.exact_div(cur, ideal.generator);
        ++v;
    }
    return v;
}

bool ideals_coprime(const OKElement& a, const OKElement& b, const ImagQuadField& K,
                    const FactorBudget& budget, std::uint64_t seed) {
    if (K.is_zero(a) && K.is_zero(b)) return false;
    if (K.is_zero(a)) return K.is_unit(b);
    if (K.is_zero(b)) return K.is_unit(a);
    if (K.is_unit(a) || K.is_unit(b)) return true;
    mpz_class g = gcd(K.norm(a), K.norm(b));
    if (g == 1) return true;
    Factorization f = factor_integer(g, budget, seed);
    if (!f.complete())
        throw std::runtime_error("ideals_coprime: factorization budget exhausted");
    for (const auto& [prime, e] : f.prime_powers) {
        (void)e;
        for (const auto& ideal : splitting(prime, K))
            if (K.divides(ideal.generator, a) && K.divides(ideal.generator, b))
                return false;
    }
    return true;
}

GenMoriQuadruple validate_generalized_quadruple(const ImagQuadField& K, unsigned g,
                                                const MaximalIdeal& p_ideal,
                                                const OKElement& b, const OKElement& c,
                                                const FactorBudget& budget,
                                                std::uint64_t seed) {
    if (g == 0) throw std::invalid_argument("validate_generalized_quadruple: g must be positive");
    GenMoriQuadruple q;
    q.d = K.d();
    q.g = g;
    q.p_ideal = p_ideal;
    q.b = b;
    q.c = c;
    auto& v = q.validation;

    v.residue_char_odd = mpz_odd_p(p_ideal.p.get_mpz_t());
    if (!v.residue_char_odd) {
        v.failures.push_back("residue characteristic is 2");
        return q;
    }
    mpz_class qsize = p_ideal.residue_size();

    // (i) every prime divisor of g divides (q-1)/2
    {
        mpz_class half = (qsize - 1) / 2;
        Factorization gf = factor_integer(mpz_class(g), budget, seed);
        bool ok = true;
        for (const auto& [prime, e] : gf.prime_powers) {
            (void)e;
            if (!mpz_divisible_p(half.get_mpz_t(), prime.get_mpz_t())) {
                ok = false;
                std::ostringstream os;
                os << "condition (i): prime divisor " << prime.get_str()
                   << " of g does not divide (q-1)/2";
                v.failures.push_back(os.str());
            }
        }
        v.divisors_of_g_divide_half_q_minus_1 = ok;
    }

    // (ii) residue of b generates k(p)^*
    {
        FqContext ctx = residue_field(p_ideal);
        FqElement beta = residue_map(b, p_ideal, ctx, K);
        if (ctx.is_zero(beta)) {
            v.failures.push_back("condition (ii): b lies in the ideal p");
        } else if (is_primitive(beta, ctx, budget, seed)) {
            v.b_primitive = true;
        } else {
            v.failures.push_back("condition (ii): b mod p has order < q-1");
        }
    }

    // (iii) c in p, c - 1 in 2O, and the three coprimality conditions
    v.c_in_p = K.divides(p_ideal.generator, c);
    if (!v.c_in_p) v.failures.push_back("condition (iii): c is not in the ideal p");
    v.c_minus_1_even = K.divides(K.from_int(2), K.sub(c, K.from_int(1)));
    if (!v.c_minus_1_even) v.failures.push_back("condition (iii): c - 1 is not in 2O");
    v.coprime_b_c = ideals_coprime(b, c, K, budget, seed);
    if (!v.coprime_b_c) v.failures.push_back("condition (iii): bO + cO != O");
    v.coprime_b_2g1 = ideals_coprime(b, K.from_int(mpz_class(2 * g + 1)), K, budget, seed);
    if (!v.coprime_b_2g1) v.failures.push_back("condition (iii): bO + (2g+1)O != O");
    v.coprime_2g_c = ideals_coprime(K.from_int(mpz_class(2 * g)), c, K, budget, seed);
    if (!v.coprime_2g_c) v.failures.push_back("condition (iii): 2gO + cO != O");
    return q;
}

namespace {

// Sylvester-matrix resultant over O_K by fraction-free Bareiss elimination;
// an independent route to Delta(U) next to the closed form.
OKElement resultant_bareiss(const ImagQuadField& K, const std::vector<OKElement>& u,
                            const std::vector<OKElement>& v) {
    int m = static_cast<int>(u.size()) - 1;
    int n = static_cast<int>(v.size()) - 1;
    int dim = m + n;
    std::vector<std::vector<OKElement>> a(
        static_cast<std::size_t>(dim),
        std::vector<OKElement>(static_cast<std::size_t>(dim), K.from_int(0)));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) a[row][row + m - j] = u[static_cast<std::size_t>(j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j)
            a[n + row][row + n - j] = v[static_cast<std::size_t>(j)];

    OKElement prev = K.from_int(1);
    int sign = 1;
    for (int k = 0; k < dim - 1; ++k) {
        if (K.is_zero(a[k][k])) {
            int swap_row = -1;
            for (int i = k + 1; i < dim; ++i)
                if (!K.is_zero(a[i][k])) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return K.from_int(0);
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < dim; ++i) {
            for (int j = k + 1; j < dim; ++j) {
                OKElement numer =
                    K.sub(K.mul(a[i][j], a[k][k]), K.mul(a[i][k], a[k][j]));
                a[i][j] = K.exact_div(numer, prev);
            }
            a[i][k] = K.from_int(0);
        }
        prev = a[k][k];
    }
    OKElement det = a[dim - 1][dim - 1];
    return sign < 0 ? K.neg(det) : det;
}

FqPoly reduce_ok_poly(const std::vector<OKElement>& coeffs, const MaximalIdeal& ideal,
                      const FqContext& ctx, const ImagQuadField& K) {
    std::vector<FqElement> c;
    c.reserve(coeffs.size());
    for (const auto& a : coeffs) c.push_back(residue_map(a, ideal, ctx, K));
    return FqPoly(ctx, std::move(c));
}

IdealDescriptor describe(const MaximalIdeal& ideal) {
    return {ideal.p, ideal.res_degree, ideal.ram_index, ideal.generator};
}

bool same_ideal(const MaximalIdeal& a, const MaximalIdeal& b, const ImagQuadField& K) {
    return a.p == b.p && K.divides(a.generator, b.generator) &&
           K.divides(b.generator, a.generator);
}

}  // namespace

KCertificate certify_K(const ImagQuadField& K, const GenMoriQuadruple& q,
                       const CertifyOptions& opts) {
    if (!q.validation.valid())
        throw std::invalid_argument("certify_K: quadruple failed validation");
    if (q.d != K.d()) throw std::invalid_argument("certify_K: field mismatch");

    KCertificate cert;
    cert.d = K.d();
    cert.quadruple = q;
    cert.seed = opts.seed;
    unsigned g = q.g;
    unsigned n = q.degree();
    {
        std::ostringstream os;
        os << "A_" << n;
        cert.relative_group = os.str();
    }

    // U = x^n - 2^(2g) b x - 2^(2g-1) c
    cert.u_coeffs.assign(n + 1, K.from_int(0));
    cert.u_coeffs[0] = K.mul(K.from_int(-pow_z(2, 2 * g - 1)), q.c);
    cert.u_coeffs[1] = K.mul(K.from_int(-pow_z(2, 2 * g)), q.b);
    cert.u_coeffs[n] = K.from_int(1);

    // (a) Newton polygon of F = x^n - b x - c/4 at every ideal above 2; the
    // certificate stores the first, the others back the "ramified at all
    // divisors of 2" claim
    auto ideals2 = splitting(mpz_class(2), K);
    bool all_ramified = true;
    for (std::size_t idx = 0; idx < ideals2.size(); ++idx) {
        const MaximalIdeal& b2 = ideals2[idx];
        long e2 = static_cast<long>(b2.ram_index);
        std::vector<PolygonPoint> pts;
        long vc = static_cast<long>(ideal_valuation(q.c, b2, K));
        pts.push_back({0, vc - 2 * e2});
        if (!K.is_zero(q.b))
            pts.push_back({1, static_cast<long>(ideal_valuation(q.b, b2, K))});
        pts.push_back({static_cast<long>(n), 0});
        NewtonPolygon polygon = NewtonPolygon::from_points(std::move(pts));
        EisensteinDumasResult ed = eisenstein_dumas(polygon);
        if (!ed.irreducible) all_ramified = false;
        if (idx == 0) {
            cert.ideal_above_2 = describe(b2);
            cert.polygon = polygon;
            cert.span_gcd = ed.span_gcd;
            cert.irreducible = ed.irreducible;
        }
    }
    cert.ramified_at_all_divisors_of_2 = all_ramified;
    if (!cert.irreducible || !all_ramified) {
        cert.conclusion = Conclusion::Inconclusive;
        cert.failing_stage = "newton_polygon over K";
        return cert;
    }

    // (b) F mod p = x (x^(2g) - b); both the factorization and the
    // power-residue criterion must see the degree-2g factor irreducible
    {
        FqContext ctx = residue_field(q.p_ideal);
        FqElement btilde = residue_map(q.b, q.p_ideal, ctx, K);
        FqElement ctilde = residue_map(q.c, q.p_ideal, ctx, K);
        mpz_class inv4;
        // c/4 reduces to ctilde * inv(4); c in p makes it vanish
        std::vector<FqElement> fc(n + 1, ctx.zero());
        FqElement four_inv = ctx.inv(ctx.make(mpz_class(4)));
        fc[0] = ctx.neg(ctx.mul(ctilde, four_inv));
        fc[1] = ctx.neg(btilde);
        fc[n] = ctx.one();
        FqPoly fbar(ctx, std::move(fc));
        cert.mod_p_pattern = factor(fbar, opts.seed);

        bool shape_ok = cert.mod_p_pattern.entries.size() == 2;
        if (shape_ok) {
            const auto& lin = cert.mod_p_pattern.entries[0];
            const auto& big = cert.mod_p_pattern.entries[1];
            shape_ok = lin.degree == 1 && lin.multiplicity == 1 &&
                       ctx.is_zero(lin.factor_coeffs[0]) && big.degree == 2 * g &&
                       big.multiplicity == 1 &&
                       big.factor_coeffs[0] == ctx.neg(btilde);
            if (shape_ok)
                for (std::size_t i = 1; i + 1 < big.factor_coeffs.size(); ++i)
                    if (!ctx.is_zero(big.factor_coeffs[i])) shape_ok = false;
        }
        bool lang = true;
        Factorization f2g = factor_integer(mpz_class(2 * g), opts.budget, opts.seed);
        for (const auto& [dd, e] : f2g.prime_powers) {
            (void)e;
            if (is_dth_power(btilde, dd, ctx)) lang = false;
        }
        if ((2 * g) % 4 == 0) {
            FqElement m4b = ctx.mul(ctx.make(mpz_class(-4)), btilde);
            if (is_dth_power(m4b, 2, ctx)) lang = false;
        }
        cert.lang_criterion_holds = lang;
        if (!shape_ok || !lang) {
            cert.conclusion = Conclusion::Inconclusive;
            cert.failing_stage = "mod_p_pattern over k(p)";
            return cert;
        }
        (void)inv4;
    }

    // (c) discriminant: closed form, Bareiss resultant, and 2^(2M) D0
    {
        cert.m = static_cast<unsigned long>(g) * (2 * g - 1);
        OKElement cpow = K.pow(q.c, 2 * g);
        OKElement bpow = K.pow(q.b, 2 * g + 1);
        mpz_class n_pow = pow_z(mpz_class(n), n);
        mpz_class g_pow = pow_z(mpz_class(g), 2 * g) * pow_z(2, 6 * g);
        OKElement inner = K.sub(K.mul(K.from_int(n_pow), cpow),
                                K.mul(K.from_int(g_pow), bpow));
        cert.d0 = (g % 2 == 1) ? K.neg(inner) : inner;

        // Delta(U) by the trinomial closed form over O_K
        const OKElement& B = cert.u_coeffs[1];
        const OKElement& C = cert.u_coeffs[0];
        mpz_class nn = pow_z(mpz_class(n), n);
        mpz_class n1 = pow_z(mpz_class(n - 1), n - 1);
        OKElement t1 = K.mul(K.from_int(nn), K.pow(C, n - 1));
        OKElement t2 = K.mul(K.from_int(n1), K.pow(B, n));
        unsigned long s1 = (static_cast<unsigned long>(n) * (n - 1) / 2) % 2;
        unsigned long s2 = (static_cast<unsigned long>(n - 1) * (n - 2) / 2) % 2;
        cert.delta = K.add(s1 ? K.neg(t1) : t1, s2 ? K.neg(t2) : t2);

        std::vector<OKElement> uprime(n);
        for (unsigned i = 1; i <= n; ++i)
            uprime[i - 1] = K.mul(K.from_int(mpz_class(i)), cert.u_coeffs[i]);
        OKElement res = resultant_bareiss(K, cert.u_coeffs, uprime);
        OKElement delta_res = (s1 ? K.neg(res) : res);
        if (!(delta_res == cert.delta))
            throw std::logic_error("certify_K: resultant route disagrees with closed form");

        OKElement expected = K.mul(K.from_int(pow_z(2, 2 * cert.m)), cert.d0);
        if (!(expected == cert.delta))
            throw std::logic_error("certify_K: Delta != 2^(2M) D0");
        cert.d0_minus_1_in_4O =
            K.divides(K.from_int(4), K.sub(cert.d0, K.from_int(1)));
        cert.unramified_outside_2 = cert.d0_minus_1_in_4O;
        if (!cert.d0_minus_1_in_4O) {
            cert.conclusion = Conclusion::Inconclusive;
            cert.failing_stage = "D0 - 1 not in 4O";
            return cert;
        }
    }

    // (d) transposition ideal among divisors of N(D0)
    {
        mpz_class norm_d0 = K.norm(cert.d0);
        if (opts.injected_discriminant_factors)
            cert.norm_d0_factors = *opts.injected_discriminant_factors;
        else
            cert.norm_d0_factors = factor_integer(norm_d0, opts.budget, opts.seed);
        std::optional<KTranspositionWitness> chosen;
        std::vector<IdealDescriptor> others;
        std::string fail_notes;
        for (const auto& [rp, e] : cert.norm_d0_factors.prime_powers) {
            (void)e;
            if (rp == 2) continue;
            for (const auto& ideal : splitting(rp, K)) {
                if (same_ideal(ideal, q.p_ideal, K)) continue;
                unsigned val = ideal_valuation(cert.delta, ideal, K);
                if (val % 2 == 0) continue;
                FqContext ctx = residue_field(ideal);
                FqPoly ubar = reduce_ok_poly(cert.u_coeffs, ideal, ctx, K);
                FqElement Bres = residue_map(cert.u_coeffs[1], ideal, ctx, K);
                FqElement Cres = residue_map(cert.u_coeffs[0], ideal, ctx, K);
                FqElement n1B = ctx.mul(ctx.make(mpz_class(n - 1)), Bres);
                if (ctx.is_zero(n1B)) continue;
                FqElement gamma = expected_double_root(n, Bres, Cres, ctx);
                if (!ctx.is_zero(ubar.evaluate(gamma)) ||
                    !ctx.is_zero(ubar.derivative().evaluate(gamma)))
                    continue;
                FactorPattern pat = factor(ubar, opts.seed);
                unsigned mult_entries = 0;
                bool matches = false;
                for (const auto& en : pat.entries) {
                    if (en.multiplicity < 2) continue;
                    ++mult_entries;
                    if (en.multiplicity == 2 && en.degree == 1 &&
                        en.factor_coeffs[0] == ctx.neg(gamma))
                        matches = true;
                }
                if (mult_entries != 1 || !matches || ctx.is_zero(gamma)) continue;
                if (!chosen) {
                    KTranspositionWitness w;
                    w.ideal = describe(ideal);
                    w.double_root = gamma;
                    w.root_in_prime_subfield = ctx.in_prime_field(gamma);
                    w.delta_valuation = val;
                    w.pattern = pat;
                    chosen = std::move(w);
                } else {
                    others.push_back(describe(ideal));
                }
            }
        }
        if (chosen) {
            chosen->others_verified = std::move(others);
            cert.transposition = std::move(chosen);
            cert.conclusion = Conclusion::FullSymmetric;
        } else if (!cert.norm_d0_factors.complete()) {
            cert.conclusion = Conclusion::ConditionalFullSymmetric;
            cert.status_note =
                "factorization of N(D0) exceeded budget before a transposition ideal "
                "was found";
        } else {
            cert.conclusion = Conclusion::Inconclusive;
            cert.failing_stage = "no transposition ideal among the divisors of N(D0)";
        }
    }
    return cert;
}

GenMoriQuadruple generate_quadruple(const ImagQuadField& K, unsigned g,
                                    const KSearchBounds& bounds,
                                    const FactorBudget& budget, std::uint64_t seed) {
    if (g == 0) throw std::invalid_argument("generate_quadruple: g must be positive");
    mpz_class two_g(2 * g), n(2 * g + 1);
    for (unsigned long pv = 3; pv <= bounds.p_bound; pv += 2) {
        mpz_class p(pv);
        if (!is_probable_prime(p, seed).is_prime) continue;
        if (mod_p(p - 1, two_g) != 0) continue;  // p = 1 mod 2g
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;  // p | 2g+1
        for (const auto& ideal : splitting(p, K)) {
            FqContext rctx = residue_field(ideal);
            for (long bx = -bounds.coord_bound; bx <= bounds.coord_bound; ++bx) {
                for (long by = -bounds.coord_bound; by <= bounds.coord_bound; ++by) {
                    OKElement b{mpz_class(bx), mpz_class(by)};
                    if (K.is_zero(b)) continue;
                    FqElement beta = residue_map(b, ideal, rctx, K);
                    if (rctx.is_zero(beta) || !is_primitive(beta, rctx, budget, seed))
                        continue;
                    for (long cx = -bounds.coord_bound; cx <= bounds.coord_bound; ++cx) {
                        for (long cy = -bounds.coord_bound; cy <= bounds.coord_bound;
                             ++cy) {
                            OKElement c{mpz_class(cx), mpz_class(cy)};
                            if (K.is_zero(c)) continue;
                            if (!K.divides(ideal.generator, c)) continue;
                            if (!K.divides(K.from_int(2), K.sub(c, K.from_int(1))))
                                continue;
                            GenMoriQuadruple q = validate_generalized_quadruple(
                                K, g, ideal, b, c, budget, seed);
                            if (q.validation.valid()) return q;
                        }
                    }
                }
            }
        }
    }
    throw std::runtime_error("generate_quadruple: search bounds exhausted");
}

}  // namespace mori
