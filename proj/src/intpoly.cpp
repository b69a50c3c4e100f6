#include "mori/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace mori {

IntPolynomial::IntPolynomial(std::vector<mpz_class> numerators, unsigned denom_exponent)
    : num_(std::move(numerators)), denom_exp_(denom_exponent) {
    normalize();
}

void IntPolynomial::normalize() {
    while (!num_.empty() && num_.back() == 0) num_.pop_back();
    if (num_.empty()) {
        denom_exp_ = 0;
        return;
    }
    while (denom_exp_ > 0) {
        bool all_even = true;
        for (const auto& a : num_)
            if (mpz_odd_p(a.get_mpz_t())) {
                all_even = false;
                break;
            }
        if (!all_even) break;
        for (auto& a : num_) mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), 1);
        --denom_exp_;
    }
}

IntPolynomial IntPolynomial::from_ints(std::initializer_list<long> coeffs,
                                       unsigned denom_exponent) {
    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return IntPolynomial(std::move(v), denom_exponent);
}

bool IntPolynomial::is_monic() const {
    if (is_zero()) return false;
    mpz_class lead = 1;
    mpz_mul_2exp(lead.get_mpz_t(), lead.get_mpz_t(), denom_exp_);
    return num_.back() == lead;
}

mpq_class IntPolynomial::coefficient(std::size_t i) const {
    if (i >= num_.size()) return 0;
    mpq_class q(num_[i]);
    mpq_class den(1);
    mpq_mul_2exp(den.get_mpq_t(), den.get_mpq_t(), denom_exp_);
    q /= den;
    return q;
}

const mpz_class& IntPolynomial::numerator(std::size_t i) const {
    static const mpz_class zero = 0;
    return i < num_.size() ? num_[i] : zero;
}

mpz_class IntPolynomial::leading_numerator() const {
    if (is_zero()) return 0;
    return num_.back();
}

mpq_class IntPolynomial::evaluate(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = num_.rbegin(); it != num_.rend(); ++it)
        acc = acc * x + mpq_class(*it);
    mpq_class den(1);
    mpq_mul_2exp(den.get_mpq_t(), den.get_mpq_t(), denom_exp_);
    acc /= den;
    acc.canonicalize();
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (num_.size() <= 1) return IntPolynomial{};
    std::vector<mpz_class> d(num_.size() - 1);
    for (std::size_t i = 1; i < num_.size(); ++i) d[i - 1] = num_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d), denom_exp_);
}

namespace {

// Bring two polynomials to a common denominator exponent.
void align(const IntPolynomial& a, const IntPolynomial& b,
           std::vector<mpz_class>& ca, std::vector<mpz_class>& cb, unsigned& e) {
    e = std::max(a.denom_exponent(), b.denom_exponent());
    ca.assign(a.numerators().begin(), a.numerators().end());
    cb.assign(b.numerators().begin(), b.numerators().end());
    for (auto& x : ca) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), e - a.denom_exponent());
    for (auto& x : cb) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), e - b.denom_exponent());
}

}  // namespace

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> ca, cb;
    unsigned e;
    align(a, b, ca, cb, e);
    if (ca.size() < cb.size()) ca.resize(cb.size());
    for (std::size_t i = 0; i < cb.size(); ++i) ca[i] += cb[i];
    return IntPolynomial(std::move(ca), e);
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> ca, cb;
    unsigned e;
    align(a, b, ca, cb, e);
    if (ca.size() < cb.size()) ca.resize(cb.size());
    for (std::size_t i = 0; i < cb.size(); ++i) ca[i] -= cb[i];
    return IntPolynomial(std::move(ca), e);
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial{};
    std::vector<mpz_class> c(a.numerators().size() + b.numerators().size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.numerators().size(); ++i)
        for (std::size_t j = 0; j < b.numerators().size(); ++j)
            c[i + j] += a.numerators()[i] * b.numerators()[j];
    return IntPolynomial(std::move(c), a.denom_exponent() + b.denom_exponent());
}

bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.denom_exp_ == b.denom_exp_ && a.num_ == b.num_;
}

std::string IntPolynomial::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (i) os << ", ";
        os << num_[i].get_str();
    }
    if (num_.empty()) os << '0';
    os << ']';
    if (denom_exp_ > 0) os << " / 2^" << denom_exp_;
    return os.str();
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::size_t lb = text.find('[');
    std::size_t rb = text.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw std::invalid_argument("polynomial text must look like \"[a0, ..., an] / 2^e\"");
    std::vector<mpz_class> coeffs;
    std::string inner = text.substr(lb + 1, rb - lb - 1);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t s = tok.find_first_not_of(" \t");
        std::size_t epos = tok.find_last_not_of(" \t");
        if (s == std::string::npos) continue;
        coeffs.emplace_back(tok.substr(s, epos - s + 1));
    }
    unsigned e = 0;
    std::size_t slash = text.find('/', rb);
    if (slash != std::string::npos) {
        std::size_t caret = text.find('^', slash);
        if (caret == std::string::npos || text.find("2", slash) == std::string::npos)
            throw std::invalid_argument("denominator must be a power of two: \"/ 2^e\"");
        e = static_cast<unsigned>(std::stoul(text.substr(caret + 1)));
    }
    return IntPolynomial(std::move(coeffs), e);
}

IntPolynomial Trinomial::to_polynomial() const {
    if (n < 2) throw std::invalid_argument("trinomial degree must be at least 2");
    std::vector<mpz_class> c(n + 1, mpz_class(0));
    c[0] = C;
    c[1] = B;
    c[n] = 1;
    return IntPolynomial(std::move(c), 0);
}

mpz_class content(const IntPolynomial& u) {
    if (u.is_zero()) return 0;
    mpz_class g = 0;
    for (const auto& a : u.numerators()) g = gcd(g, a);
    return abs(g);
}

IntPolynomial primitive_part(const IntPolynomial& u) {
    if (u.is_zero()) return u;
    mpz_class c = content(u);
    std::vector<mpz_class> v(u.numerators());
    for (auto& a : v) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    return IntPolynomial(std::move(v), u.denom_exponent());
}

IntPolynomial pseudo_remainder(const IntPolynomial& u, const IntPolynomial& v) {
    if (!u.is_integral() || !v.is_integral())
        throw std::invalid_argument("pseudo_remainder expects integral polynomials");
    if (v.is_zero()) throw std::invalid_argument("pseudo_remainder by zero");
    int du = u.degree(), dv = v.degree();
    if (du < dv) {
        // lc(v)^(du-dv+1) is not integral; the convention here only needs
        // the du >= dv case.
        throw std::invalid_argument("pseudo_remainder expects deg u >= deg v");
    }
    std::vector<mpz_class> r(u.numerators());
    const mpz_class& lv = v.numerators().back();
    for (int k = du; k >= dv; --k) {
        // r <- lv*r - r[k]*x^(k-dv)*v, which zeroes the coefficient at x^k
        mpz_class coeff = r[k];
        for (int i = 0; i <= du; ++i) r[i] *= lv;
        for (int i = 0; i <= dv; ++i) r[k - dv + i] -= coeff * v.numerators()[i];
    }
    r.resize(dv > 0 ? dv : 0);
    return IntPolynomial(std::move(r), 0);
}

namespace {

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

mpz_class resultant(const IntPolynomial& u, const IntPolynomial& v) {
    if (!u.is_integral() || !v.is_integral())
        throw std::invalid_argument("resultant expects integral polynomials");
    if (u.is_zero() || v.is_zero()) return 0;

    IntPolynomial A = u, B = v;
    // Res(A, B) = num/den * Res(a, b) is maintained as (a, b) descend the
    // subresultant remainder sequence; num/den stays an exact integer ratio.
    mpz_class num = 1, den = 1;
    if (A.degree() < B.degree()) {
        if ((static_cast<long>(A.degree()) * B.degree()) % 2 != 0) num = -1;
        std::swap(A, B);
    }
    // Subresultant PRS divisors: first step divides by 1, later steps by
    // g*h^delta with g = lc of the previous remainder.
    mpz_class g = 1, h = 1;
    bool first = true;
    while (true) {
        int m = A.degree(), n = B.degree();
        if (n == 0) {
            mpz_class res = num * pow_z(B.numerators()[0], m);
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(), den.get_mpz_t());
            if (r != 0) throw std::logic_error("resultant: inexact final division");
            return q;
        }
        unsigned long delta = static_cast<unsigned long>(m - n);
        IntPolynomial R = pseudo_remainder(A, B);
        if (R.is_zero()) return 0;
        int r_deg = R.degree();
        // Res(A,B) = (-1)^{mn} lc(B)^{m - r - (m-n+1)n} Res(B, Rtilde)
        if ((static_cast<long>(m) * n) % 2 != 0) num = -num;
        long exp = static_cast<long>(m) - r_deg -
                   static_cast<long>(m - n + 1) * static_cast<long>(n);
        const mpz_class lb = B.numerators().back();
        if (exp >= 0)
            num *= pow_z(lb, static_cast<unsigned long>(exp));
        else
            den *= pow_z(lb, static_cast<unsigned long>(-exp));

        // Divide the pseudo-remainder by the subresultant factor; the
        // division is exact by the Brown-Traub theory and is checked here.
        mpz_class divisor = first ? mpz_class(1) : mpz_class(g * pow_z(h, delta));
        std::vector<mpz_class> reduced(R.numerators());
        if (divisor != 1) {
            for (auto& cfs : reduced) {
                mpz_class q, rem;
                mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), cfs.get_mpz_t(),
                            divisor.get_mpz_t());
                if (rem != 0) throw std::logic_error("resultant: inexact subresultant step");
                cfs = q;
            }
            // Res(B, Rtilde) = divisor^{deg B} Res(B, Rtilde/divisor)
            num *= pow_z(divisor, static_cast<unsigned long>(n));
        }

        g = lb;
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            mpz_class hn = pow_z(g, delta), q, rem;
            mpz_class hd = pow_z(h, delta - 1);
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), hn.get_mpz_t(), hd.get_mpz_t());
            if (rem != 0) throw std::logic_error("resultant: inexact h update");
            h = q;
        }
        A = B;
        B = IntPolynomial(std::move(reduced), 0);
        first = false;
    }
}

mpq_class discriminant(const IntPolynomial& u) {
    if (u.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    // Clear the denominator: u = U / 2^e with U integral, lc(U) = lc(u)*2^e.
    IntPolynomial U(std::vector<mpz_class>(u.numerators()), 0);
    mpz_class res = resultant(U, U.derivative());
    int n = u.degree();
    // Res(u, u') = 2^{-e(2n-1)} Res(U, U'); divide once more by lc(u).
    mpq_class val(res);
    unsigned long shift = static_cast<unsigned long>(u.denom_exponent()) *
                          static_cast<unsigned long>(2 * n - 1);
    mpq_class den(1);
    mpq_mul_2exp(den.get_mpq_t(), den.get_mpq_t(), shift);
    val /= den * u.coefficient(static_cast<std::size_t>(n));
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) val = -val;
    val.canonicalize();
    return val;
}

mpz_class discriminant_integer(const IntPolynomial& u) {
    mpq_class d = discriminant(u);
    if (d.get_den() != 1) throw std::invalid_argument("discriminant is not an integer");
    return d.get_num();
}

mpz_class trinomial_discriminant(unsigned n, const mpz_class& B, const mpz_class& C) {
    if (n < 2) throw std::invalid_argument("trinomial_discriminant needs n >= 2");
    mpz_class nn = pow_z(mpz_class(n), n);
    mpz_class n1 = pow_z(mpz_class(n - 1), n - 1);
    mpz_class term1 = nn * pow_z(C, n - 1);
    mpz_class term2 = n1 * pow_z(B, n);
    unsigned long s1 = (static_cast<unsigned long>(n) * (n - 1) / 2) % 2;
    unsigned long s2 = (static_cast<unsigned long>(n - 1) * (n - 2) / 2) % 2;
    return (s1 ? -term1 : term1) + (s2 ? -term2 : term2);
}

IntPolynomial scale_substitute(const IntPolynomial& f, const mpz_class& s) {
    if (s == 0) throw std::invalid_argument("scale_substitute: s must be nonzero");
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("scale_substitute expects a monic polynomial of degree >= 1");
    int n = f.degree();
    std::vector<mpz_class> c(f.numerators());
    mpz_class power = 1;
    for (int i = n; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] *= power;
        power *= s;
    }
    return IntPolynomial(std::move(c), f.denom_exponent());
}

}  // namespace mori
