#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gzb/dyadic.hpp"
#include "gzb/place.hpp"

// 2-primary Brauer classes of l = Q(sqrt(d)) as finite vectors of local
// invariants: a finitely supported map from places of l to Q/Z values of
// 2-power order, summing to zero, with the archimedean constraints
// (real places carry 0 or 1/2; complex places carry 0).

namespace gzb::brauer {

using LocalInv = Dyadic;

class BrauerElem {
public:
    explicit BrauerElem(long long d) : d_(d) {}
    // Throws unless the data satisfies sum-zero and the archimedean rules.
    BrauerElem(long long d, std::map<PlaceL, LocalInv> inv);

    long long d() const { return d_; }
    const std::map<PlaceL, LocalInv>& invariants() const { return inv_; }
    LocalInv at(const PlaceL& p) const;
    bool is_zero() const { return inv_.empty(); }

    // Least e with 2^e * this = 0.
    long order_exponent() const;

    BrauerElem operator+(const BrauerElem& o) const;
    BrauerElem operator-(const BrauerElem& o) const;
    BrauerElem operator-() const;
    BrauerElem times_pow2(long j) const;
    bool operator==(const BrauerElem& o) const { return d_ == o.d_ && inv_ == o.inv_; }
    bool operator!=(const BrauerElem& o) const { return !(*this == o); }

    // "d=2; 7.0:1/4, 7.1:3/4, 3:1/2"
    std::string to_string() const;
    static BrauerElem parse(const std::string& s);

private:
    long long d_;
    std::map<PlaceL, LocalInv> inv_;
    void validate() const;
};

// The Galois action on invariants: swap within each split/real pair, fix
// inert/ramified/complex entries. Involution, preserves sum-zero.
BrauerElem galois_act(const BrauerElem& b);

// b - galois_act(b): vanishes at inert/ramified/archimedean places and is
// sigma-negated.
BrauerElem one_minus_sigma(const BrauerElem& b);

// Divisibility in the 2-primary Brauer group: all archimedean invariants
// vanish (finite invariants halve freely; sum-zero is repaired at a finite
// place). halve() returns a witness y with 2y = b when divisible.
bool is_divisible(const BrauerElem& b);
std::optional<BrauerElem> halve(const BrauerElem& b);

// Construction of beta_i with 2^i beta_i = beta and (1-sigma)beta_i = 2z:
// split pairs get (2 z + y/2^i, y/2^i); inert/ramified places divide
// canonically except a balancing place q (smallest admissible inert/ramified
// place with beta_q = 0) which absorbs the sum. beta must vanish at
// archimedean places; z_map gives z at the index-0 member of each split pair
// carrying data, and must satisfy 2^(i+1) z = ((1-sigma)beta)_p (checked).
BrauerElem construct_beta_i(const BrauerElem& beta, const std::map<PlaceL, Dyadic>& z_map, long i,
                            std::size_t universe = 20);

// From a sigma-negated gamma' supported on split pairs: gamma with
// gamma_(p1) = gamma'_(p1), gamma_(p2) = 0, balanced at fresh inert or
// ramified places one per pair; (1-sigma)gamma = gamma' on pairs and
// order(gamma) <= order(gamma').
BrauerElem construct_gamma(const BrauerElem& gamma_prime, std::size_t universe = 20);

}  // namespace gzb::brauer
