#include "gzb/place.hpp"

#include <stdexcept>

#include "gzb/quad.hpp"

namespace gzb::brauer {

std::string to_string(SplitKind k) {
    switch (k) {
        case SplitKind::Split: return "split";
        case SplitKind::Inert: return "inert";
        case SplitKind::Ramified: return "ramified";
        case SplitKind::RealPair: return "real-pair";
        default: return "complex";
    }
}

SplitKind splitting_type(const PlaceQ& base, long long d) {
    validate_field_param(d);
    if (base.is_real_infinity) return d > 0 ? SplitKind::RealPair : SplitKind::Complex;
    const Integer& p = base.p;
    if (!is_prime(p)) throw std::invalid_argument("splitting_type: base must be prime or inf");
    if (p == 2) {
        long long m = ((d % 8) + 8) % 8;
        if (m == 1) return SplitKind::Split;
        if (m == 5) return SplitKind::Inert;
        return SplitKind::Ramified;
    }
    if (mpz_divisible_p(to_integer(d).get_mpz_t(), p.get_mpz_t())) return SplitKind::Ramified;
    return legendre_symbol(to_integer(d), p) == 1 ? SplitKind::Split : SplitKind::Inert;
}

std::string PlaceL::to_string() const {
    std::string b = base.is_real_infinity ? "inf" : base.p.get_str();
    if (is_swapped_by_galois()) return b + "." + std::to_string(index);
    return b;
}

PlaceL place_over(const PlaceQ& base, long long d, int index) {
    SplitKind k = splitting_type(base, d);
    bool paired = (k == SplitKind::Split || k == SplitKind::RealPair);
    if (!paired && index != 0) throw std::invalid_argument("place index must be 0 at a non-split place");
    if (paired && index != 0 && index != 1) throw std::invalid_argument("place index must be 0 or 1");
    return PlaceL{base, k, index};
}

Integer split_root_normalization(const Integer& p, long long d) {
    if (p == 2) {
        // d = 1 mod 8: the square roots of d in Z/8 congruent to 1 mod 4 is
        // the class of the 2-adic root picked as index 0
        long long m = ((d % 8) + 8) % 8;
        if (m != 1) throw std::invalid_argument("2 does not split");
        return Integer(1);
    }
    Integer dm = to_integer(d) % p;
    if (dm < 0) dm += p;
    auto r = sqrt_mod(dm, p);
    if (!r) throw std::invalid_argument("place is not split");
    Integer other = p - *r;
    return *r < other ? *r : other;
}

std::vector<PlaceL> inert_or_ramified_places(long long d, std::size_t count) {
    std::vector<PlaceL> out;
    Integer p = 2;
    while (out.size() < count) {
        SplitKind k = splitting_type(PlaceQ::prime(p), d);
        if (k == SplitKind::Inert || k == SplitKind::Ramified) out.push_back(PlaceL{PlaceQ::prime(p), k, 0});
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return out;
}

}  // namespace gzb::brauer
