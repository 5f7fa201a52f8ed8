#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gzb/quad.hpp"

// The genus zero conic 1 = c x^2 + d y^2: splitting of the attached
// quaternion algebra, rational point search, and the u-line parametrization
// over Q(sqrt(d)).

namespace gzb::brauer {

struct SplittingReport {
    bool splits;
    std::vector<PlaceQ> witnesses;  // places with symbol -1 (even count when nonempty)
};

// (c,d) splits iff the Hilbert symbol is +1 at the real place and at every
// prime dividing 2*num*den of c and d (all other symbols are +1).
SplittingReport quaternion_splits(const Rational& c, const Rational& d);

struct ConicPoint {
    Rational x, y;
};

// Brute-force rational point with numerators and denominators bounded by
// `height_bound` (both coordinates), enumerating x by height and testing
// (1 - c x^2)/d for a rational square. Never contradicts quaternion_splits.
std::optional<ConicPoint> conic_point_search(const Rational& c, const Rational& d, long height_bound);

// x = 2/(u + c/u), y = (2u/(u + c/u) - 1)/sqrt(d): a point over Q(sqrt(d))
// for any u != 0 with u^2 != -c. Throws on the excluded parameter values.
std::pair<QuadElem, QuadElem> conic_parametrize(const QuadElem& u0, const Rational& c);

// The inverse map u = (1 + sqrt(d) y)/x; x must be nonzero.
QuadElem conic_uncoordinate(const QuadElem& x, const QuadElem& y);

}  // namespace gzb::brauer
