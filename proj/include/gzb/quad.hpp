#pragma once

#include <optional>
#include <string>

#include "gzb/rational.hpp"

namespace gzb {

// Checks that d is a valid field parameter: squarefree integer, not 0 or 1.
// Throws std::invalid_argument otherwise.
void validate_field_param(long long d);

// An element a + b*sqrt(d) of the quadratic field Q(sqrt(d)); exact rationals
// a, b, fixed squarefree d != 0, 1 shared per context. Two elements
// interoperate only when their d agree (checked, throws on mismatch).
class QuadElem {
public:
    QuadElem(Rational a, Rational b, long long d);
    static QuadElem from_rational(Rational a, long long d) { return QuadElem(std::move(a), Rational(0), d); }
    static QuadElem sqrt_d(long long d) { return QuadElem(Rational(0), Rational(1), d); }
    static QuadElem zero(long long d) { return from_rational(Rational(0), d); }
    static QuadElem one(long long d) { return from_rational(Rational(1), d); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    // The image under the nontrivial automorphism of Q(sqrt(d))/Q: a - b*sqrt(d).
    QuadElem conj() const { return QuadElem(a_, -b_, d_); }
    // a^2 - d b^2, multiplicative.
    Rational norm() const;
    Rational trace() const { return a_ + a_; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;  // o nonzero
    QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }
    QuadElem inverse() const;
    QuadElem pow(long e) const;  // negative e inverts first

    bool operator==(const QuadElem& o) const;
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool operator<(const QuadElem& o) const;  // lexicographic, for map keys

    // Text form "a+b*sqrt(d)"; rational values print bare.
    std::string to_string() const;

private:
    Rational a_, b_;
    long long d_;
    void check_same_field(const QuadElem& o) const;
};

// Convenience "x + y*sqrt(d)" from long long parts.
QuadElem quad(long long a, long long b, long long d);

// true iff x is a square in Q(sqrt(d)). x must be nonzero.
// Decided exactly: x = (e+f*sqrt(d))^2 requires norm(x) = n^2 for rational n,
// and then (a+n)/2 or (a-n)/2 a nonzero rational square (the other part is
// forced); the b = 0 case degenerates to "x or x/d a rational square".
bool is_square(const QuadElem& x);

// A square root in Q(sqrt(d)) when one exists.
std::optional<QuadElem> sqrt_in_field(const QuadElem& x);

// Square-class equality: x ~ y in F*/F*^2 (both nonzero).
bool same_square_class(const QuadElem& x, const QuadElem& y);

// Parses "a+b*sqrt(D)" style expressions (sums/products of rationals and
// sqrt(<integer>) terms; sqrt arguments are normalized by extracting square
// parts and must land in the square class of d). Throws on mismatch.
QuadElem parse_quad(const std::string& s, long long d);

}  // namespace gzb
