#pragma once

#include <string>
#include <vector>

#include "gzb/rational.hpp"

namespace gzb::brauer {

using gzb::PlaceQ;

enum class SplitKind { Split, Inert, Ramified, RealPair, Complex };

std::string to_string(SplitKind k);

// How the place of Q sits in Q(sqrt(d)): odd p not dividing d splits iff
// legendre(d,p) = +1, else inert; odd p | d ramifies; p = 2 by d mod 8
// (1: split, 5: inert, else ramified); the real place gives a RealPair for
// d > 0 and a Complex place for d < 0. d squarefree, != 0, 1.
SplitKind splitting_type(const PlaceQ& base, long long d);

// A place of l = Q(sqrt(d)): base place, kind, and an index distinguishing
// the two places over a split/real-pair base (0 otherwise). For split odd p,
// index 0 denotes the place where sqrt(d) maps to the smaller square root of
// d mod p; for p = 2 (split), the root congruent to 1 mod 4.
struct PlaceL {
    PlaceQ base;
    SplitKind kind;
    int index = 0;

    bool operator==(const PlaceL& o) const { return base == o.base && index == o.index; }
    bool operator<(const PlaceL& o) const {
        if (!(base == o.base)) return base < o.base;
        return index < o.index;
    }
    bool is_archimedean() const { return base.is_real_infinity; }
    bool is_split_pair() const { return kind == SplitKind::Split; }
    bool is_swapped_by_galois() const { return kind == SplitKind::Split || kind == SplitKind::RealPair; }

    // "7.0", "7.1", "3", "inf.0"
    std::string to_string() const;
};

PlaceL place_over(const PlaceQ& base, long long d, int index = 0);

// The distinguished root of X^2 = d mod p at the index-0 place (split odd p,
// or p = 2 with the 2-adic normalization). Documentation-level helper.
Integer split_root_normalization(const Integer& p, long long d);

// Ascending finite places of l over primes enumerated from 2, filtered to
// inert-or-ramified, first `count` of them.
std::vector<PlaceL> inert_or_ramified_places(long long d, std::size_t count);

}  // namespace gzb::brauer
