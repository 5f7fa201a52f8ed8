#include "gzb/quadpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace gzb {

void QuadPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

QuadPoly::QuadPoly(std::vector<QuadElem> coeffs, long long d) : coeffs_(std::move(coeffs)), d_(d) {
    for (const auto& c : coeffs_)
        if (c.d() != d_) throw std::invalid_argument("QuadPoly: coefficient field mismatch");
    trim();
}

QuadPoly QuadPoly::constant(const QuadElem& c) {
    QuadPoly p(c.d());
    if (!c.is_zero()) p.coeffs_.push_back(c);
    return p;
}

QuadPoly QuadPoly::monomial(long long d, int k, const QuadElem& c) {
    QuadPoly p(d);
    if (c.is_zero()) return p;
    p.coeffs_.assign(static_cast<std::size_t>(k) + 1, QuadElem::zero(d));
    p.coeffs_.back() = c;
    return p;
}

QuadPoly QuadPoly::from_roots(const std::vector<QuadElem>& roots, long long d) {
    QuadPoly p = constant(QuadElem::one(d));
    for (const auto& r : roots) {
        QuadPoly lin({-r, QuadElem::one(d)}, d);
        p = p * lin;
    }
    return p;
}

const QuadElem& QuadPoly::lc() const {
    if (is_zero()) throw std::domain_error("QuadPoly::lc on zero polynomial");
    return coeffs_.back();
}

QuadElem QuadPoly::coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return QuadElem::zero(d_);
    return coeffs_[static_cast<std::size_t>(k)];
}

QuadElem QuadPoly::eval(const QuadElem& x) const {
    QuadElem v = QuadElem::zero(d_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
}

QuadPoly QuadPoly::conj_coeffs() const {
    QuadPoly p(d_);
    p.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) p.coeffs_.push_back(c.conj());
    return p;
}

QuadPoly QuadPoly::monic_scaled() const {
    if (is_zero()) throw std::domain_error("monic_scaled on zero polynomial");
    return *this * lc().inverse();
}

QuadPoly QuadPoly::derivative() const {
    QuadPoly p(d_);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        p.coeffs_.push_back(coeffs_[k] * QuadElem::from_rational(Rational(static_cast<long>(k)), d_));
    p.trim();
    return p;
}

void QuadPoly::check_same_field(const QuadPoly& o) const {
    if (d_ != o.d_) throw std::invalid_argument("QuadPoly: mixed field parameters");
}

QuadPoly QuadPoly::operator+(const QuadPoly& o) const {
    check_same_field(o);
    QuadPoly p(d_);
    std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    p.coeffs_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) p.coeffs_.push_back(coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k)));
    p.trim();
    return p;
}

QuadPoly QuadPoly::operator-(const QuadPoly& o) const { return *this + (-o); }

QuadPoly QuadPoly::operator-() const {
    QuadPoly p(d_);
    p.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) p.coeffs_.push_back(-c);
    return p;
}

QuadPoly QuadPoly::operator*(const QuadPoly& o) const {
    check_same_field(o);
    if (is_zero() || o.is_zero()) return QuadPoly(d_);
    QuadPoly p(d_);
    p.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, QuadElem::zero(d_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) p.coeffs_[i + j] = p.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
    p.trim();
    return p;
}

QuadPoly QuadPoly::operator*(const QuadElem& c) const { return *this * constant(c); }

bool QuadPoly::operator==(const QuadPoly& o) const {
    check_same_field(o);
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != o.coeffs_[k]) return false;
    return true;
}

bool QuadPoly::operator<(const QuadPoly& o) const {
    check_same_field(o);
    if (coeffs_.size() != o.coeffs_.size()) return coeffs_.size() < o.coeffs_.size();
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k] != o.coeffs_[k]) return coeffs_[k] < o.coeffs_[k];
    }
    return false;
}

std::pair<QuadPoly, QuadPoly> QuadPoly::divmod(const QuadPoly& f, const QuadPoly& g) {
    f.check_same_field(g);
    if (g.is_zero()) throw std::domain_error("QuadPoly division by zero");
    QuadPoly q(f.d_), r = f;
    if (f.degree() < g.degree()) return {q, r};
    q.coeffs_.assign(static_cast<std::size_t>(f.degree() - g.degree()) + 1, QuadElem::zero(f.d_));
    QuadElem glc_inv = g.lc().inverse();
    while (!r.is_zero() && r.degree() >= g.degree()) {
        int k = r.degree() - g.degree();
        QuadElem c = r.lc() * glc_inv;
        q.coeffs_[static_cast<std::size_t>(k)] = c;
        r = r - QuadPoly::monomial(f.d_, k, c) * g;
    }
    q.trim();
    return {q, r};
}

QuadPoly QuadPoly::gcd(QuadPoly f, QuadPoly g) {
    while (!g.is_zero()) {
        QuadPoly r = f.mod(g);
        f = std::move(g);
        g = std::move(r);
    }
    if (f.is_zero()) return f;
    return f.monic_scaled();
}

std::string QuadPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        QuadElem c = coeff(k);
        if (c.is_zero()) continue;
        bool first = out.empty();
        std::string cs;
        bool neg = false;
        if (c.is_rational()) {
            Rational a = c.a();
            if (a < 0) {
                neg = true;
                a = -a;
            }
            cs = gzb::to_string(a);
        } else {
            cs = "(" + c.to_string() + ")";
        }
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (k == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += "u";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

QuadElem resultant(const QuadPoly& f, const QuadPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
    long long d = f.d();
    // Res(f,g) with deg g = 0: lc(f)^0 * g^deg f.
    if (g.degree() == 0) return g.lc().pow(f.degree());
    if (f.degree() == 0) return f.lc().pow(g.degree());
    if (f.degree() < g.degree()) {
        QuadElem sign = (f.degree() % 2 == 1 && g.degree() % 2 == 1) ? -QuadElem::one(d) : QuadElem::one(d);
        return sign * resultant(g, f);
    }
    QuadPoly r = f.mod(g);
    if (r.is_zero()) return QuadElem::zero(d);
    // Res(f,g) = (-1)^(df dg) lc(g)^(df - dr) Res(g, r)
    QuadElem sign = (f.degree() % 2 == 1 && g.degree() % 2 == 1) ? -QuadElem::one(d) : QuadElem::one(d);
    return sign * g.lc().pow(f.degree() - r.degree()) * resultant(g, r);
}

QuadPoly invert_mod(const QuadPoly& f, const QuadPoly& m) {
    // extended Euclid over the field
    long long d = f.d();
    QuadPoly r0 = m, r1 = f.mod(m);
    QuadPoly t0 = QuadPoly::zero(d), t1 = QuadPoly::constant(QuadElem::one(d));
    while (!r1.is_zero()) {
        auto [q, r2] = QuadPoly::divmod(r0, r1);
        QuadPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::domain_error("invert_mod: arguments not coprime");
    return (t0 * r0.lc().inverse()).mod(m);
}

// ---------------------------------------------------------------------------
// Roots in the field / irreducibility
// ---------------------------------------------------------------------------

namespace {

using RPoly = std::vector<Rational>;  // ascending, trimmed

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational reval(const RPoly& p, const Rational& x) {
    Rational v(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

// f * conj(f) has rational coefficients.
RPoly norm_poly(const QuadPoly& f) {
    QuadPoly h = f * f.conj_coeffs();
    RPoly out;
    out.reserve(static_cast<std::size_t>(h.degree()) + 1);
    for (int k = 0; k <= h.degree(); ++k) {
        QuadElem c = h.coeff(k);
        if (c.b() != 0) throw std::logic_error("norm_poly: nonrational coefficient");
        out.push_back(c.a());
    }
    return out;
}

// Integer-coefficient primitive version (content removed, sign of lc positive).
std::vector<Integer> primitive_integer(const RPoly& p) {
    Integer l(1);
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den(c).get_mpz_t());
    std::vector<Integer> w;
    w.reserve(p.size());
    Integer g(0);
    for (const auto& c : p) {
        Rational t = c * Rational(l);
        w.push_back(num(t));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
    }
    if (g == 0) return w;
    for (auto& c : w) c /= g;
    if (!w.empty() && w.back() < 0)
        for (auto& c : w) c = -c;
    return w;
}

std::vector<Integer> divisors_of(const Integer& n) {
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = divs.size();
        Integer pk(1);
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

std::vector<Rational> rational_root_candidates(const std::vector<Integer>& w) {
    // w nonempty, w[0] != 0, primitive
    std::vector<Rational> cands;
    std::set<Rational> seen;
    for (const auto& r : divisors_of(w.front()))
        for (const auto& s : divisors_of(w.back())) {
            for (int sg : {1, -1}) {
                Rational c(sg * r, s);
                c.canonicalize();
                if (seen.insert(c).second) cands.push_back(c);
            }
        }
    return cands;
}

// All rational roots of p (with multiplicity stripped), dividing them out of p.
std::vector<Rational> strip_rational_roots(RPoly& p) {
    std::vector<Rational> roots;
    rtrim(p);
    // roots at 0
    std::size_t z = 0;
    while (z < p.size() && p[z] == 0) ++z;
    if (z > 0) {
        roots.push_back(Rational(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(z));
    }
    if (p.size() <= 1) return roots;
    auto w = primitive_integer(p);
    for (const auto& c : rational_root_candidates(w)) {
        while (p.size() > 1 && reval(p, c) == 0) {
            if (std::find(roots.begin(), roots.end(), c) == roots.end()) roots.push_back(c);
            // synthetic division by (x - c)
            RPoly q(p.size() - 1);
            Rational carry = p.back();
            for (std::size_t k = p.size() - 1; k-- > 0;) {
                q[k] = carry;
                carry = p[k] + carry * c;
            }
            p = std::move(q);
            rtrim(p);
        }
    }
    return roots;
}

// Monic rational quadratics dividing p (p primitive integer, no rational
// roots, degree >= 2), by Kronecker interpolation through x = 0, 1, -1.
std::vector<std::pair<Rational, Rational>> quadratic_factors(const RPoly& prat) {
    std::vector<std::pair<Rational, Rational>> out;  // (s, t) for x^2 + s x + t
    auto w = primitive_integer(prat);
    if (w.size() < 3) return out;
    auto at = [&](long x) {
        Integer v(0);
        for (std::size_t k = w.size(); k-- > 0;) v = v * x + w[k];
        return v;
    };
    Integer v0 = at(0), v1 = at(1), vm1 = at(-1);
    if (v0 == 0 || v1 == 0 || vm1 == 0) return out;  // rational roots were stripped
    auto d0 = divisors_of(v0);
    auto d1 = divisors_of(v1);
    auto dm1 = divisors_of(vm1);
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& a0 : d0)
        for (int s0 : {1, -1})
            for (const auto& a1 : d1)
                for (int s1 : {1, -1})
                    for (const auto& am : dm1)
                        for (int sm : {1, -1}) {
                            Integer g0 = s0 * a0, g1 = s1 * a1, gm = sm * am;
                            // g(x) = A x^2 + B x + C through (0,g0),(1,g1),(-1,gm)
                            Integer two_a = g1 + gm - 2 * g0;
                            Integer two_b = g1 - gm;
                            if (mpz_odd_p(two_a.get_mpz_t()) || mpz_odd_p(two_b.get_mpz_t())) continue;
                            Integer A = two_a / 2, B = two_b / 2, C = g0;
                            if (A == 0) continue;
                            Rational s(B, A), t(C, A);
                            s.canonicalize();
                            t.canonicalize();
                            auto key = std::make_pair(s, t);
                            if (!seen.insert(key).second) continue;
                            // trial division of prat by x^2 + s x + t
                            RPoly r = prat;
                            rtrim(r);
                            if (r.size() < 3) continue;
                            RPoly q(r.size() - 2);
                            bool ok = true;
                            for (std::size_t k = r.size(); k-- > 2;) {
                                Rational c = r[k];
                                q[k - 2] = c;
                                r[k] = 0;
                                r[k - 1] -= s * c;
                                r[k - 2] -= t * c;
                            }
                            if (r[0] != 0 || r[1] != 0) ok = false;
                            if (ok) out.push_back(key);
                        }
    return out;
}

}  // namespace

std::vector<QuadElem> roots_in_field(const QuadPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("roots_in_field: zero polynomial");
    long long d = f.d();
    std::vector<QuadElem> roots;
    auto add_if_root = [&](const QuadElem& r) {
        if (f.eval(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    };
    if (f.degree() <= 0) return roots;
    if (f.degree() == 1) {
        add_if_root(-f.coeff(0) / f.coeff(1));
        return roots;
    }
    if (f.degree() == 2) {
        QuadElem a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        QuadElem disc = b * b - QuadElem::from_rational(Rational(4), d) * a * c;
        if (disc.is_zero()) {
            add_if_root(-b / (a + a));
        } else if (auto s = sqrt_in_field(disc)) {
            add_if_root((-b + *s) / (a + a));
            add_if_root((-b - *s) / (a + a));
        }
        return roots;
    }
    // degree 3, 4: go through the rational norm polynomial
    RPoly H = norm_poly(f);
    auto rat_roots = strip_rational_roots(H);
    for (const auto& r : rat_roots) add_if_root(QuadElem(r, Rational(0), d));
    for (const auto& [s, t] : quadratic_factors(H)) {
        // roots of x^2 + s x + t in the field, if any
        Rational disc = s * s - Rational(4) * t;
        if (disc == 0) continue;  // double rational root, already handled
        QuadElem dd = QuadElem(disc, Rational(0), d);
        if (auto sq = sqrt_in_field(dd)) {
            QuadElem ms = QuadElem(-s, Rational(0), d);
            QuadElem two = QuadElem::from_rational(Rational(2), d);
            add_if_root((ms + *sq) / two);
            add_if_root((ms - *sq) / two);
        }
    }
    return roots;
}

namespace {

bool square_or_zero(const QuadElem& x) { return x.is_zero() || is_square(x); }

}  // namespace

bool is_irreducible(const QuadPoly& f) {
    if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("is_irreducible: need degree >= 1");
    if (f.degree() > 4) throw std::invalid_argument("is_irreducible: degree > 4 unsupported");
    long long d = f.d();
    if (f.degree() == 1) return true;
    if (f.degree() == 2) {
        QuadElem a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        QuadElem disc = b * b - QuadElem::from_rational(Rational(4), d) * a * c;
        if (disc.is_zero()) return false;
        return !is_square(disc);
    }
    if (!roots_in_field(f).empty()) return false;
    if (f.degree() == 3) return true;
    // Quartic with no root: check for a quadratic split via the resolvent
    // cubic of the depressed form u^4 + P u^2 + Q u + R.
    QuadPoly g = f.monic_scaled();
    QuadElem four = QuadElem::from_rational(Rational(4), d);
    QuadElem shift = -g.coeff(3) / four;
    // substitute u -> u + shift
    QuadPoly dep = QuadPoly::constant(QuadElem::zero(d));
    QuadPoly lin({shift, QuadElem::one(d)}, d);
    QuadPoly power = QuadPoly::constant(QuadElem::one(d));
    for (int k = 0; k <= g.degree(); ++k) {
        dep = dep + power * g.coeff(k);
        power = power * lin;
    }
    QuadElem P = dep.coeff(2), Q = dep.coeff(1), R = dep.coeff(0);
    // z^3 + 2P z^2 + (P^2 - 4R) z - Q^2, roots z = s^2 of quadratic splits
    QuadPoly resolvent({-Q * Q, P * P - four * R, P + P, QuadElem::one(d)}, d);
    for (const auto& z : roots_in_field(resolvent)) {
        if (z.is_zero()) {
            // split (u^2+t)(u^2+w): requires Q = 0 and P^2 - 4R a square
            if (Q.is_zero() && square_or_zero(P * P - four * R)) return false;
            continue;
        }
        if (is_square(z)) return false;  // s exists in the field, so t, w do too
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct PParser {
    const std::string& s;
    std::size_t i = 0;
    long long d;
    PParser(const std::string& str, long long dd) : s(str), d(dd) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + what);
    }

    QuadPoly parse_expr() {
        QuadPoly v = parse_term();
        for (;;) {
            skip();
            if (eat('+'))
                v = v + parse_term();
            else if (eat('-'))
                v = v - parse_term();
            else
                return v;
        }
    }
    QuadPoly parse_term() {
        QuadPoly v = parse_factor();
        for (;;) {
            skip();
            if (eat('*'))
                v = v * parse_factor();
            else
                return v;
        }
    }
    QuadPoly parse_factor() {
        QuadPoly v = parse_atom();
        skip();
        if (eat('^')) {
            skip();
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("expected exponent");
            long e = std::stol(s.substr(i, j - i));
            i = j;
            QuadPoly r = QuadPoly::constant(QuadElem::one(d));
            for (long t = 0; t < e; ++t) r = r * v;
            v = r;
        }
        return v;
    }
    QuadPoly parse_atom() {
        skip();
        if (eat('-')) return -parse_atom();
        if (eat('+')) return parse_atom();
        if (i < s.size() && (s[i] == 'u' || s[i] == 'x')) {
            ++i;
            return QuadPoly::monomial(d, 1, QuadElem::one(d));
        }
        if (eat('(')) {
            // quad-element subexpression (no u inside parens at this level)
            std::size_t depth = 1, j = i;
            while (j < s.size() && depth) {
                if (s[j] == '(') ++depth;
                if (s[j] == ')') --depth;
                ++j;
            }
            if (depth) fail("unbalanced parentheses");
            std::string inner = s.substr(i, j - i - 1);
            i = j;
            if (inner.find('u') != std::string::npos) {
                QuadPoly v = parse_quadpoly(inner, d);
                return v;
            }
            return QuadPoly::constant(parse_quad(inner, d));
        }
        if (s.compare(i, 4, "sqrt") == 0) {
            std::size_t j = s.find(')', i);
            if (j == std::string::npos) fail("unterminated sqrt");
            QuadElem c = parse_quad(s.substr(i, j + 1 - i), d);
            i = j + 1;
            return QuadPoly::constant(c);
        }
        std::size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        if (j == i) fail("expected a coefficient or u");
        QuadElem c = QuadElem(parse_rational(s.substr(i, j - i)), Rational(0), d);
        i = j;
        return QuadPoly::constant(c);
    }
};

}  // namespace

QuadPoly parse_quadpoly(const std::string& s, long long d) {
    validate_field_param(d);
    PParser p(s, d);
    QuadPoly v = p.parse_expr();
    p.skip();
    if (p.i != s.size()) p.fail("trailing input");
    return v;
}

}  // namespace gzb
