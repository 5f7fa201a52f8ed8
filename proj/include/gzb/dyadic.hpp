#pragma once

#include <optional>
#include <string>
#include <utility>

#include "gzb/rational.hpp"

namespace gzb {

// A 2-power-denominator rational taken mod 1, representative in [0,1).
// Normal form: value = num/2^k with num odd, 0 <= num < 2^k, or num = 0, k = 0.
// Models elements of Q_2/Z_2 (2-primary local invariants).
class Dyadic {
public:
    Dyadic() : num_(0), k_(0) {}
    Dyadic(Integer numerator, long k);  // numerator/2^k mod 1, normalized

    static Dyadic half() { return Dyadic(Integer(1), 1); }
    static Dyadic zero() { return Dyadic(); }

    // Accepts "m/n" with n a power of two (or an integer, which is 0 mod 1).
    static Dyadic parse(const std::string& s);

    const Integer& numerator() const { return num_; }
    long exponent() const { return k_; }
    bool is_zero() const { return num_ == 0; }

    // Order of the element in Q/Z is 2^exponent().
    long order_exponent() const { return k_; }

    Rational to_rational() const;

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator-() const;
    Dyadic times_pow2(long j) const;  // multiply by 2^j, j >= 0

    // The two solutions of 2y = x.
    std::pair<Dyadic, Dyadic> halves() const;
    // Canonical choice of y with 2^j y = x: num/2^(k+j). Fixed once, used
    // wherever a construction says "some element yielding x under 2^j".
    Dyadic div_pow2_canonical(long j) const;

    bool operator==(const Dyadic& o) const { return num_ == o.num_ && k_ == o.k_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const {  // order for map keys
        return k_ != o.k_ ? k_ < o.k_ : num_ < o.num_;
    }

    std::string to_string() const;  // "num/2^k" as plain fraction, e.g. "3/8"

private:
    Integer num_;
    long k_;
    void normalize();
};

}  // namespace gzb
