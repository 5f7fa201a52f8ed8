#include "gzb/dyadic.hpp"

#include <stdexcept>

namespace gzb {

void Dyadic::normalize() {
    if (k_ < 0) throw std::invalid_argument("Dyadic: negative exponent");
    Integer mod = Integer(1) << k_;
    num_ %= mod;
    if (num_ < 0) num_ += mod;
    while (k_ > 0 && mpz_even_p(num_.get_mpz_t())) {
        num_ /= 2;
        --k_;
    }
    if (num_ == 0) k_ = 0;
}

Dyadic::Dyadic(Integer numerator, long k) : num_(std::move(numerator)), k_(k) { normalize(); }

Dyadic Dyadic::parse(const std::string& s) {
    Rational q = parse_rational(s);
    Integer d = den(q);
    long k = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++k;
    }
    if (d != 1) throw std::invalid_argument("Dyadic::parse: denominator not a power of 2 in '" + s + "'");
    return Dyadic(num(q), k);
}

Rational Dyadic::to_rational() const {
    Rational r(num_, Integer(1) << k_);
    r.canonicalize();
    return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    long k = std::max(k_, o.k_);
    Integer n = (num_ << (k - k_)) + (o.num_ << (k - o.k_));
    return Dyadic(n, k);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator-() const { return Dyadic(-num_, k_); }

Dyadic Dyadic::times_pow2(long j) const {
    if (j < 0) throw std::invalid_argument("times_pow2: negative power");
    return Dyadic(num_ << j, k_);
}

std::pair<Dyadic, Dyadic> Dyadic::halves() const {
    Dyadic h(num_, k_ + 1);
    return {h, h + half()};
}

Dyadic Dyadic::div_pow2_canonical(long j) const {
    if (j < 0) throw std::invalid_argument("div_pow2_canonical: negative power");
    return Dyadic(num_, k_ + j);
}

std::string Dyadic::to_string() const {
    if (num_ == 0) return "0";
    return num_.get_str() + "/" + Integer(Integer(1) << k_).get_str();
}

}  // namespace gzb
