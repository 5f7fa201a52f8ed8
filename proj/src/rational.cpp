#include "gzb/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace gzb {

namespace {

bool valid_int_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Integer parse_integer(const std::string& s) {
    std::string t = strip(s);
    if (!valid_int_token(t)) throw std::invalid_argument("bad integer literal: '" + s + "'");
    return Integer(t);
}

Rational parse_rational(const std::string& s) {
    std::string t = strip(s);
    auto slash = t.find('/');
    Integer n, d;
    if (slash == std::string::npos) {
        n = parse_integer(t);
        d = 1;
    } else {
        n = parse_integer(t.substr(0, slash));
        d = parse_integer(t.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

bool is_square_integer(const Integer& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square_rational(const Rational& x) {
    return is_square_integer(num(x)) && is_square_integer(den(x));
}

std::optional<Rational> sqrt_rational(const Rational& x) {
    if (!is_square_rational(x)) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), num(x).get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), den(x).get_mpz_t());
    Rational r(n, d);
    r.canonicalize();
    return r;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Integer m = abs(n);
    long v = 0;
    Integer q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

long valuation(const Rational& q, const Integer& p) {
    if (q == 0) throw std::invalid_argument("valuation of zero");
    long v = 0;
    if (num(q) != 0 && mpz_divisible_p(num(q).get_mpz_t(), p.get_mpz_t()))
        v = valuation(num(q), p);
    else if (mpz_divisible_p(den(q).get_mpz_t(), p.get_mpz_t()))
        v = -valuation(den(q), p);
    return v;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Integer pollard_rho(const Integer& n) {
    // n odd composite, not a prime power of interest; Brent's cycle variant.
    if (mpz_divisible_ui_p(n.get_mpz_t(), 2)) return Integer(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x9e3779b97f4a7c15UL);
    for (;;) {
        Integer c = rng.get_z_range(n - 3) + 1;
        Integer x = rng.get_z_range(n - 2) + 1;
        Integer y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Integer diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::map<Integer, int> factorize(const Integer& n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::map<Integer, int> out;
    Integer m = abs(n);
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out[Integer(p)] += 1;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    // trial division to 10^5, then rho on what is left
    Integer p = 41;
    while (m > 1 && p * p <= m && p < 100000) {
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            out[p] += 1;
            m /= p;
        }
        p += 2;
    }
    if (m > 1) factor_rec(m, out);
    return out;
}

Integer squarefree_part(const Integer& n) {
    if (n == 0) throw std::invalid_argument("squarefree_part(0)");
    Integer s = n < 0 ? Integer(-1) : Integer(1);
    for (const auto& [p, e] : factorize(n))
        if (e % 2 == 1) s *= p;
    return s;
}

Integer squarefree_part(const Rational& q) {
    if (q == 0) throw std::invalid_argument("squarefree_part(0)");
    return squarefree_part(Integer(num(q) * den(q)));
}

std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> ps;
    for (const auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

int legendre_symbol(const Integer& a, const Integer& p) {
    if (p <= 2 || !is_prime(p)) throw std::invalid_argument("legendre_symbol: p must be an odd prime");
    Integer r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Integer e = (p - 1) / 2, m;
    mpz_powm(m.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return m == 1 ? 1 : -1;
}

std::optional<Integer> sqrt_mod(const Integer& a, const Integer& p) {
    Integer r = a % p;
    if (r < 0) r += p;
    if (r == 0) return Integer(0);
    if (legendre_symbol(r, p) != 1) return std::nullopt;
    // Tonelli-Shanks
    Integer q = p - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    if (s == 1) {
        Integer e = (p + 1) / 4, x;
        mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return x;
    }
    Integer z = 2;
    while (legendre_symbol(z, p) != -1) ++z;
    Integer c, x, t, b;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Integer e = (q + 1) / 2;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    long m = s;
    while (t != 1) {
        Integer tt = t;
        long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
            if (i == m) return std::nullopt;  // unreachable for valid input
        }
        b = c;
        for (long j = 0; j < m - i - 1; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

namespace {

// Unit part of q at p reduced mod p^k (q a p-adic unit times p^valuation;
// here q must have valuation 0 at p).
Integer unit_mod(const Rational& q, const Integer& pk) {
    Integer n = num(q) % pk, d = den(q) % pk, dinv;
    if (n < 0) n += pk;
    if (d < 0) d += pk;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::logic_error("unit_mod: denominator not a unit");
    return n * dinv % pk;
}

int eps_mod2(const Integer& u_mod4) { return u_mod4 == 1 ? 0 : 1; }           // (u-1)/2 mod 2
int omega_mod2(const Integer& u_mod8) { return (u_mod8 == 1 || u_mod8 == 7) ? 0 : 1; }  // (u^2-1)/8 mod 2

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const PlaceQ& v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
    if (v.is_real_infinity) return (a < 0 && b < 0) ? -1 : 1;
    const Integer& p = v.p;
    if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol: place must be prime or inf");
    long alpha = valuation(a, p), beta = valuation(b, p);
    Rational u = a, w = b;
    Rational pq(p);
    for (long i = 0; i < alpha; ++i) u /= pq;
    for (long i = 0; i > alpha; --i) u *= pq;
    for (long i = 0; i < beta; ++i) w /= pq;
    for (long i = 0; i > beta; --i) w *= pq;
    if (p == 2) {
        Integer u8 = unit_mod(u, Integer(8)), w8 = unit_mod(w, Integer(8));
        int expo = eps_mod2(u8 % 4) * eps_mod2(w8 % 4) + static_cast<int>(alpha % 2) * omega_mod2(w8) +
                   static_cast<int>(beta % 2) * omega_mod2(u8);
        return expo % 2 == 0 ? 1 : -1;
    }
    Integer half = (p - 1) / 2;
    int eps_p = mpz_odd_p(half.get_mpz_t()) ? 1 : 0;
    int sign = ((alpha % 2) && (beta % 2) && eps_p) ? -1 : 1;
    Integer um = unit_mod(u, p), wm = unit_mod(w, p);
    if (beta % 2) sign *= legendre_symbol(um, p);
    if (alpha % 2) sign *= legendre_symbol(wm, p);
    return sign;
}

std::vector<PlaceQ> hilbert_relevant_places(const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_relevant_places: zero argument");
    Integer m = 2 * num(a) * den(a) * num(b) * den(b);
    std::vector<PlaceQ> out;
    out.push_back(PlaceQ::real_infinity());
    for (const auto& p : prime_divisors(m)) out.push_back(PlaceQ::prime(p));
    return out;
}

}  // namespace gzb
