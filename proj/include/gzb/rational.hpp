#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

// Exact integer/rational substrate. Everything in this layer is a pure
// function on immutable values; no floating point anywhere.

namespace gzb {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" or "p"; denominator must be nonzero. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

inline Integer num(const Rational& q) { return q.get_num(); }
inline Integer den(const Rational& q) { return q.get_den(); }

// gmpxx has no long long constructors; the desk caps keep everything in range
inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

bool is_square_integer(const Integer& n);

// true iff x = y^2 for rational y; 0 counts as a square.
bool is_square_rational(const Rational& x);

// Nonnegative exact square root, if one exists.
std::optional<Rational> sqrt_rational(const Rational& x);

// p-adic valuation. n (resp. q) must be nonzero.
long valuation(const Integer& n, const Integer& p);
long valuation(const Rational& q, const Integer& p);

bool is_prime(const Integer& n);

// Factorization of |n| (n != 0): map prime -> exponent. Trial division with
// a bound, Pollard rho fallback.
std::map<Integer, int> factorize(const Integer& n);

// Signed squarefree representative of the square class of n (resp. q).
// squarefree_part(-36) = -1, squarefree_part(8) = 2, squarefree_part(1/4) = 1.
Integer squarefree_part(const Integer& n);
Integer squarefree_part(const Rational& q);

// Ascending primes dividing |n|.
std::vector<Integer> prime_divisors(const Integer& n);

// Quadratic residue symbol via Euler's criterion; p must be an odd prime.
int legendre_symbol(const Integer& a, const Integer& p);

// A square root of a mod p (odd prime, a a QR), via Tonelli-Shanks.
std::optional<Integer> sqrt_mod(const Integer& a, const Integer& p);

// Places of Q: a finite prime or the real place.
struct PlaceQ {
    bool is_real_infinity = false;
    Integer p;  // the prime when finite

    static PlaceQ prime(Integer q) { return PlaceQ{false, std::move(q)}; }
    static PlaceQ real_infinity() { return PlaceQ{true, Integer(0)}; }

    bool operator==(const PlaceQ& o) const {
        return is_real_infinity == o.is_real_infinity && (is_real_infinity || p == o.p);
    }
    bool operator<(const PlaceQ& o) const {
        if (is_real_infinity != o.is_real_infinity) return !is_real_infinity;  // finite < infinity
        if (is_real_infinity) return false;
        return p < o.p;
    }
    std::string to_string() const { return is_real_infinity ? "inf" : p.get_str(); }
};

// Hilbert symbol (a,b)_v in {-1,+1}: +1 iff z^2 = a x^2 + b y^2 has a
// nontrivial solution over the completion at v. a, b nonzero.
// Odd p: (-1)^(alpha*beta*eps(p)) * (u|p)^beta * (w|p)^alpha on unit parts.
// p = 2: (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u)).
// Real place: -1 iff a < 0 and b < 0.
int hilbert_symbol(const Rational& a, const Rational& b, const PlaceQ& v);

// Places where (a,b)_v could be nontrivial: the real place and the primes
// dividing 2*num(a)*den(a)*num(b)*den(b).
std::vector<PlaceQ> hilbert_relevant_places(const Rational& a, const Rational& b);

}  // namespace gzb
