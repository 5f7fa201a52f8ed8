#include "gzb/conic.hpp"

#include <numeric>
#include <stdexcept>

namespace gzb::brauer {

SplittingReport quaternion_splits(const Rational& c, const Rational& d) {
    if (c == 0 || d == 0) throw std::invalid_argument("quaternion_splits: zero input");
    SplittingReport r{true, {}};
    for (const auto& v : hilbert_relevant_places(c, d)) {
        if (hilbert_symbol(c, d, v) == -1) {
            r.splits = false;
            r.witnesses.push_back(v);
        }
    }
    return r;
}

namespace {

// rationals ordered by height max(|num|, den), deterministic within a height
std::vector<Rational> rationals_of_height(long h) {
    std::vector<Rational> out;
    if (h == 0) {
        out.emplace_back(0);
        return out;
    }
    for (long dnm = 1; dnm <= h; ++dnm) {
        if (std::gcd(h, dnm) != 1) continue;
        out.emplace_back(Rational(h, dnm));
        out.emplace_back(Rational(-h, dnm));
    }
    for (long nm = 1; nm < h; ++nm) {
        if (std::gcd(nm, h) != 1) continue;
        out.emplace_back(Rational(nm, h));
        out.emplace_back(Rational(-nm, h));
    }
    for (auto& q : out) q.canonicalize();
    return out;
}

long height_of(const Rational& q) {
    Integer n = abs(num(q)), d = den(q);
    Integer h = n > d ? n : d;
    return h.get_si();
}

}  // namespace

std::optional<ConicPoint> conic_point_search(const Rational& c, const Rational& d, long height_bound) {
    if (height_bound < 1) throw std::invalid_argument("conic_point_search: bound must be >= 1");
    if (c == 0 || d == 0) throw std::invalid_argument("conic_point_search: zero coefficient");
    for (long h = 0; h <= height_bound; ++h) {
        for (const auto& x : rationals_of_height(h)) {
            Rational ysq = (Rational(1) - c * x * x) / d;
            if (ysq < 0) continue;
            auto y = sqrt_rational(ysq);
            if (!y) continue;
            if (height_of(*y) > height_bound) continue;
            return ConicPoint{x, *y};
        }
    }
    return std::nullopt;
}

std::pair<QuadElem, QuadElem> conic_parametrize(const QuadElem& u0, const Rational& c) {
    if (u0.is_zero()) throw std::invalid_argument("conic_parametrize: u must be nonzero");
    long long d = u0.d();
    QuadElem cq = QuadElem(c, Rational(0), d);
    QuadElem denom = u0 + cq / u0;  // u + c/u
    if (denom.is_zero()) throw std::invalid_argument("conic_parametrize: u^2 = -c is excluded");
    QuadElem two = QuadElem::from_rational(Rational(2), d);
    QuadElem x = two / denom;
    QuadElem y = (two * u0 / denom - QuadElem::one(d)) / QuadElem::sqrt_d(d);
    // exact identity check: 1 = c x^2 + d y^2
    QuadElem lhs = cq * x * x + QuadElem::from_rational(to_rational(d), d) * y * y;
    if (!(lhs == QuadElem::one(d))) throw std::logic_error("conic_parametrize: identity failed");
    return {x, y};
}

QuadElem conic_uncoordinate(const QuadElem& x, const QuadElem& y) {
    if (x.is_zero()) throw std::invalid_argument("conic_uncoordinate: x must be nonzero");
    long long d = x.d();
    return (QuadElem::one(d) + QuadElem::sqrt_d(d) * y) / x;
}

}  // namespace gzb::brauer
