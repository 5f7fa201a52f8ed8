#include "gzb/quad.hpp"

#include <cctype>
#include <stdexcept>

namespace gzb {

void validate_field_param(long long d) {
    if (d == 0 || d == 1) throw std::invalid_argument("field parameter d must not be 0 or 1");
    if (squarefree_part(to_integer(d)) != to_integer(d))
        throw std::invalid_argument("field parameter d = " + std::to_string(d) + " is not squarefree");
}

QuadElem::QuadElem(Rational a, Rational b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ == 0 || d_ == 1) throw std::invalid_argument("QuadElem: d must not be 0 or 1");
}

void QuadElem::check_same_field(const QuadElem& o) const {
    if (d_ != o.d_) throw std::invalid_argument("QuadElem: mixed field parameters");
}

Rational QuadElem::norm() const { return a_ * a_ - to_rational(d_) * b_ * b_; }

QuadElem QuadElem::operator+(const QuadElem& o) const {
    check_same_field(o);
    return QuadElem(a_ + o.a_, b_ + o.b_, d_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
    check_same_field(o);
    return QuadElem(a_ - o.a_, b_ - o.b_, d_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
    check_same_field(o);
    return QuadElem(a_ * o.a_ + to_rational(d_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_);
}

QuadElem QuadElem::inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("QuadElem: inverse of zero");
    return QuadElem(a_ / n, -b_ / n, d_);
}

QuadElem QuadElem::operator/(const QuadElem& o) const { return *this * o.inverse(); }

QuadElem QuadElem::pow(long e) const {
    QuadElem base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    QuadElem r = one(d_);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool QuadElem::operator==(const QuadElem& o) const {
    check_same_field(o);
    return a_ == o.a_ && b_ == o.b_;
}

bool QuadElem::operator<(const QuadElem& o) const {
    check_same_field(o);
    if (a_ != o.a_) return a_ < o.a_;
    return b_ < o.b_;
}

std::string QuadElem::to_string() const {
    if (b_ == 0) return gzb::to_string(a_);
    std::string s;
    if (a_ != 0) s += gzb::to_string(a_);
    if (b_ > 0 && a_ != 0) s += "+";
    if (b_ == -1)
        s += "-";
    else if (b_ != 1)
        s += gzb::to_string(b_) + "*";
    s += "sqrt(" + std::to_string(d_) + ")";
    return s;
}

QuadElem quad(long long a, long long b, long long d) { return QuadElem(to_rational(a), to_rational(b), d); }

bool is_square(const QuadElem& x) { return sqrt_in_field(x).has_value(); }

std::optional<QuadElem> sqrt_in_field(const QuadElem& x) {
    if (x.is_zero()) throw std::invalid_argument("sqrt_in_field: zero input");
    long long d = x.d();
    if (x.is_rational()) {
        // x = e^2 or x = d f^2
        if (auto e = sqrt_rational(x.a())) return QuadElem(Rational(0) + *e, Rational(0), d);
        Rational fd = x.a() / to_rational(d);
        if (auto f = sqrt_rational(fd)) return QuadElem(Rational(0), *f, d);
        return std::nullopt;
    }
    auto n = sqrt_rational(x.norm());
    if (!n) return std::nullopt;
    for (int sgn : {1, -1}) {
        Rational esq = (x.a() + Rational(sgn) * *n) / 2;
        if (esq == 0) continue;  // the other sign carries the root
        if (auto e = sqrt_rational(esq)) {
            if (*e == 0) continue;
            Rational f = x.b() / (Rational(2) * *e);
            QuadElem r(*e, f, d);
            if (r * r == x) return r;
        }
    }
    return std::nullopt;
}

bool same_square_class(const QuadElem& x, const QuadElem& y) {
    if (x.is_zero() || y.is_zero()) throw std::invalid_argument("same_square_class: zero input");
    return is_square(x * y);
}

// ---------------------------------------------------------------------------
// Parsing: expression grammar over +, -, *, /, ^, parentheses, rational
// literals and sqrt(<integer>).
// ---------------------------------------------------------------------------

namespace {

struct QParser {
    const std::string& s;
    std::size_t i = 0;
    long long d;

    explicit QParser(const std::string& str, long long dd) : s(str), d(dd) {}

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

    QuadElem parse_expr() {
        QuadElem v = parse_term();
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

    QuadElem parse_term() {
        QuadElem v = parse_factor();
        for (;;) {
            skip();
            if (eat('*'))
                v = v * parse_factor();
            else if (eat('/')) {
                QuadElem w = parse_factor();
                if (w.is_zero()) fail("division by zero");
                v = v / w;
            } else
                return v;
        }
    }

    QuadElem parse_factor() {
        QuadElem v = parse_atom();
        skip();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("expected exponent");
            long e = std::stol(s.substr(i, j - i));
            i = j;
            v = v.pow(neg ? -e : e);
        }
        return v;
    }

    QuadElem parse_atom() {
        skip();
        if (eat('-')) return -parse_atom();
        if (eat('+')) return parse_atom();
        if (eat('(')) {
            QuadElem v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s.compare(i, 5, "sqrt(") == 0) {
            i += 5;
            skip();
            std::size_t j = i;
            if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("expected integer in sqrt()");
            Integer n(s.substr(i, j - i));
            i = j;
            if (!eat(')')) fail("expected ')' after sqrt argument");
            if (n == 0) return QuadElem::zero(d);
            Integer sf = squarefree_part(n);
            if (sf != to_integer(d)) {
                if (sf == 1) {  // perfect square
                    Integer r;
                    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
                    return QuadElem(Rational(r), Rational(0), d);
                }
                fail("sqrt(" + n.get_str() + ") does not lie in Q(sqrt(" + std::to_string(d) + "))");
            }
            Integer m = n / sf, r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            return QuadElem(Rational(0), Rational(r), d);
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected a value");
        std::string tok = s.substr(i, j - i);
        i = j;
        return QuadElem(Rational(Integer(tok)), Rational(0), d);
    }
};

}  // namespace

QuadElem parse_quad(const std::string& s, long long d) {
    validate_field_param(d);
    QParser p(s, d);
    QuadElem v = p.parse_expr();
    p.skip();
    if (p.i != s.size()) p.fail("trailing input");
    return v;
}

}  // namespace gzb
