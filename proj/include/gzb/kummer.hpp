#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gzb/brauer.hpp"
#include "gzb/quadpoly.hpp"

// Exponent-2 character layer over l = Q(sqrt(d)) and its finite extensions
// l(a_p): Kummer square-class representatives, the p -> ptilde map, the
// induced action on the function-field decomposition, corestriction via
// norms, and the fixed-point conditions.

namespace gzb::kummer {

using gzb::QuadElem;
using gzb::QuadPoly;
using gzb::Rational;
using gzb::brauer::BrauerElem;

// Monic irreducible p in l[u], p != u (so p(0) != 0); degree <= 4 supported
// by the irreducibility tester; the action maps need degree <= 2.
class IrredPoly {
public:
    explicit IrredPoly(QuadPoly p);
    const QuadPoly& poly() const { return p_; }
    int degree() const { return p_.degree(); }
    long long d() const { return p_.d(); }
    QuadElem constant_term() const { return p_.constant_term(); }
    bool operator==(const IrredPoly& o) const { return p_ == o.p_; }
    bool operator<(const IrredPoly& o) const { return p_ < o.p_; }
    std::string to_string() const { return p_.to_string(); }

private:
    QuadPoly p_;
};

// Order-2 character of l by Kummer representative e (nonsquare); equality is
// square-class equality.
class Char2L {
public:
    explicit Char2L(QuadElem e);
    const QuadElem& rep() const { return e_; }
    bool same_class(const Char2L& o) const;
    Char2L times(const Char2L& o) const { return Char2L(e_ * o.e_); }
    std::string to_string() const { return e_.to_string(); }

private:
    QuadElem e_;
};

// Character of order <= 2 of l(a_p): Kummer representative f (a polynomial
// in the generator, reduced mod p, nonzero mod p; a square representative
// encodes the trivial character).
class Char2P {
public:
    Char2P(IrredPoly p, QuadPoly f);
    const IrredPoly& p() const { return p_; }
    const QuadPoly& f() const { return f_; }
    std::string to_string() const { return "chi[" + p_.to_string() + "; " + f_.to_string() + "]"; }

private:
    IrredPoly p_;
    QuadPoly f_;
};

// Text form "chi[<p>; <f>]" with both parts in polynomial syntax over l.
Char2P parse_char2p(const std::string& s, long long d);

// Is g (nonzero mod p) a square in l(a_p)? deg p <= 2. For deg 2 the
// question descends the tower l(a_p) = l(sqrt(disc p)): norm down to l and
// apply the quadratic-extension square criterion with exact arithmetic.
bool is_square_mod(const QuadPoly& g, const IrredPoly& p);
bool same_class_mod(const QuadPoly& f, const QuadPoly& g, const IrredPoly& p);

// The involution p -> ptilde: X^deg(p) * conj(p)(c/X) / conj(p(0)), monic;
// roots {c/sigma(root)}. c nonzero rational.
IrredPoly tilde_poly(const IrredPoly& p, const Rational& c);
bool is_self_tilde(const IrredPoly& p, const Rational& c);

// unit * u^u_exp * prod p^e_p in l(u)^*, the multiplicative decomposition
// the order-2 action is triangular on.
struct FactoredRF {
    QuadElem unit;
    long u_exp = 0;
    std::map<IrredPoly, long> factors;

    static FactoredRF one(long long d) { return FactoredRF{QuadElem::one(d), 0, {}}; }
    FactoredRF times(const FactoredRF& o) const;
    bool operator==(const FactoredRF& o) const;
    std::string to_string() const;
};

// The order-2 action on the decomposition:
//   unit -> conj(unit) * c^u_exp * prod conj(p(0))^e_p
//   u_exp -> -u_exp - sum e_p deg p
//   p -> ptilde (same exponents)
FactoredRF s_action_factored(const FactoredRF& x, const Rational& c);

// Galois action on order-2 characters of l (the sign is immaterial at
// exponent 2: -sigma(chi) = sigma(chi)).
Char2L sigma_char(const Char2L& chi);

// Corestriction at exponent 2: e = N(f mod p) = resultant(p, f); absent when
// e is a square in l (the character dies).
std::optional<Char2L> cor_char(const Char2P& chi);

// sigma(cor(chi)), the component map into characters of l.
std::optional<Char2L> s_pu_star(const Char2P& chi);

// For self-tilde p (deg <= 2): the action f(a_p) -> conj(f)(c/a_p) reduced
// mod p, square-class normalized (odd powers of a_p multiply the class by
// the class of a_p).
Char2P s_pp_star(const Char2P& chi, const Rational& c);

// The p != ptilde relabeling: transports the representative along the
// semilinear field isomorphism l(a_p) -> l(a_ptilde).
Char2P s_p_tilde_star(const Char2P& chi, const Rational& c);

// Classification of l(sqrt(e))/Q for nonsquare e:
//   NotGalois: sigma(e)/e not a square in l;
//   KleinW:    Galois with norm(e) a rational square (biquadratic);
//   Cyclic4:   Galois otherwise.
enum class WClass { NotGalois, Cyclic4, KleinW };
std::string to_string(WClass w);
WClass w_membership(const QuadElem& e);

// For KleinW inputs: a rational representative r of the square class of e
// (e * square = r), constructed via trace(e) +- 2*sqrt(norm(e)) and verified.
Rational klein_rational_representative(const QuadElem& e);

// Element of the decomposed function-field Brauer group at exponent 2:
// beta + chi_u + sum chi_p.
struct BrLUElem {
    BrauerElem beta;
    std::optional<Char2L> chi_u;
    std::map<IrredPoly, Char2P> chis;

    explicit BrLUElem(long long d) : beta(d) {}
};

// Pluggable table for the two component maps into the Brauer summand that
// have no closed form here (the map must send exponent-2 character data to
// 2-torsion sum-zero invariant vectors; involution compatibility of the
// assembled action is enforced as a checked postcondition).
using S1Table = std::function<BrauerElem(const std::optional<Char2L>&, const std::map<IrredPoly, Char2P>&)>;
S1Table zero_table(long long d);

// The assembled triangular action at exponent 2:
//   new beta  = galois_act(beta) + table(chi_u, chis)
//   new chi_u = sigma(chi_u) * prod sigma(cor(chi_p))      (square classes)
//   new chis  = { ptilde : transport of chi_p }
// Degree <= 2 required for every p. apply twice = identity is checked when
// `check_involution` is set (throws std::logic_error on violation).
BrLUElem apply_s_star(const BrLUElem& x, const Rational& c, const S1Table& table, bool check_involution = true);

// Fixed-point conditions at exponent 2:
//   (i)  transport of chi_p lands on chi_ptilde for every p;
//   (ii) norm(chi_u rep) ~ prod cor(chi_p) reps as square classes in l;
//   (iii) one_minus_sigma(beta) = table(chi_u + sum chi_p).
struct FixedReport {
    bool cond_i = false, cond_ii = false, cond_iii = false;
    std::string witness_i, witness_ii, witness_iii;
    bool all() const { return cond_i && cond_ii && cond_iii; }
};
FixedReport check_fixed_conditions(const BrLUElem& x, const Rational& c, const S1Table& table);

// cor(transport of chi) ~ sigma(cor chi) as square classes (deg p <= 2).
bool cor_identity_check(const Char2P& chi, const Rational& c);

}  // namespace gzb::kummer
