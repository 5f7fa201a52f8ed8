#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gzb/quad.hpp"

namespace gzb {

// Polynomial in u over Q(sqrt(d)). Coefficients ascending; leading
// coefficient nonzero unless the polynomial is zero (empty coefficient list).
class QuadPoly {
public:
    explicit QuadPoly(long long d) : d_(d) {}
    QuadPoly(std::vector<QuadElem> coeffs, long long d);

    static QuadPoly zero(long long d) { return QuadPoly(d); }
    static QuadPoly constant(const QuadElem& c);
    static QuadPoly from_roots(const std::vector<QuadElem>& roots, long long d);  // monic
    // u^k
    static QuadPoly monomial(long long d, int k, const QuadElem& c);

    long long d() const { return d_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const QuadElem& lc() const;
    QuadElem coeff(int k) const;  // zero beyond degree
    const std::vector<QuadElem>& coeffs() const { return coeffs_; }
    bool is_monic() const { return !is_zero() && lc() == QuadElem::one(d_); }

    QuadElem eval(const QuadElem& x) const;
    QuadElem constant_term() const { return coeff(0); }

    QuadPoly conj_coeffs() const;  // apply the field automorphism coefficientwise
    QuadPoly monic_scaled() const;  // divide by lc
    QuadPoly derivative() const;

    QuadPoly operator+(const QuadPoly& o) const;
    QuadPoly operator-(const QuadPoly& o) const;
    QuadPoly operator*(const QuadPoly& o) const;
    QuadPoly operator*(const QuadElem& c) const;
    QuadPoly operator-() const;
    bool operator==(const QuadPoly& o) const;
    bool operator!=(const QuadPoly& o) const { return !(*this == o); }
    bool operator<(const QuadPoly& o) const;  // for map keys

    // Exact division with remainder over the field; g nonzero.
    static std::pair<QuadPoly, QuadPoly> divmod(const QuadPoly& f, const QuadPoly& g);
    QuadPoly mod(const QuadPoly& g) const { return divmod(*this, g).second; }

    // Monic gcd (zero for gcd(0,0)).
    static QuadPoly gcd(QuadPoly f, QuadPoly g);

    std::string to_string() const;  // e.g. "u^2 - (1+1*sqrt(2))*u + 3"

private:
    std::vector<QuadElem> coeffs_;
    long long d_;
    void trim();
    void check_same_field(const QuadPoly& o) const;
};

// Resultant, Sylvester-determinant orientation:
//   Res(f,g) = lc(f)^deg(g) * prod over roots r of f of g(r).
// So Res(u^2-3, u) = -3, Res(u-a, u-b) = a-b, Res(f, 1) = 1.
// Computed by exact Euclidean reduction over the field. f, g nonzero.
QuadElem resultant(const QuadPoly& f, const QuadPoly& g);

// Roots of f lying in Q(sqrt(d)) (f nonzero, degree <= 4), via the rational
// norm polynomial f*conj(f): every root in the field has a degree <= 2
// minimal polynomial over Q dividing it; candidates come from rational root
// enumeration plus Kronecker interpolation of quadratic integer factors.
std::vector<QuadElem> roots_in_field(const QuadPoly& f);

// Irreducibility over Q(sqrt(d)); supported for degree 1..4 (throws above).
// deg 2: discriminant nonsquare; deg 3: no root; deg 4: no root and no
// quadratic factorization (decided through the resolvent cubic).
bool is_irreducible(const QuadPoly& f);

// Inverse of f modulo m (gcd(f, m) = 1), monic m.
QuadPoly invert_mod(const QuadPoly& f, const QuadPoly& m);

// Parses polynomial text over Q(sqrt(d)), e.g. "u^2 - (1+1*sqrt(2))*u + 3".
QuadPoly parse_quadpoly(const std::string& s, long long d);

}  // namespace gzb
