#include "gzb/kummer.hpp"

#include <sstream>
#include <stdexcept>

namespace gzb::kummer {

using gzb::brauer::galois_act;
using gzb::brauer::one_minus_sigma;

IrredPoly::IrredPoly(QuadPoly p) : p_(std::move(p)) {
    if (p_.is_zero() || p_.degree() < 1) throw std::invalid_argument("IrredPoly: need degree >= 1");
    if (!p_.is_monic()) p_ = p_.monic_scaled();
    if (p_.constant_term().is_zero()) throw std::invalid_argument("IrredPoly: p = u (zero constant term) excluded");
    if (!is_irreducible(p_)) throw std::invalid_argument("IrredPoly: polynomial is reducible");
}

Char2L::Char2L(QuadElem e) : e_(std::move(e)) {
    if (e_.is_zero()) throw std::invalid_argument("Char2L: zero representative");
    if (is_square(e_)) throw std::invalid_argument("Char2L: representative is a square (trivial character)");
}

bool Char2L::same_class(const Char2L& o) const { return is_square(e_ * o.e_); }

Char2P::Char2P(IrredPoly p, QuadPoly f) : p_(std::move(p)), f_(f.mod(p_.poly())) {
    // a square representative is allowed: it encodes the trivial character
    // (order 1), which corestriction and the component maps send to "absent"
    if (f_.is_zero()) throw std::invalid_argument("Char2P: representative is 0 mod p");
}

Char2P parse_char2p(const std::string& s, long long d) {
    auto open = s.find("chi[");
    auto semi = s.find(';');
    auto close = s.rfind(']');
    if (open == std::string::npos || semi == std::string::npos || close == std::string::npos || semi < open ||
        close < semi)
        throw std::invalid_argument("parse_char2p: expected 'chi[<p>; <f>]'");
    QuadPoly p = gzb::parse_quadpoly(s.substr(open + 4, semi - open - 4), d);
    QuadPoly f = gzb::parse_quadpoly(s.substr(semi + 1, close - semi - 1), d);
    return Char2P(IrredPoly(p), f);
}

bool is_square_mod(const QuadPoly& g, const IrredPoly& p) {
    QuadPoly r = g.mod(p.poly());
    if (r.is_zero()) throw std::invalid_argument("is_square_mod: zero element");
    long long d = p.d();
    if (p.degree() == 1) return is_square(r.coeff(0));
    if (p.degree() != 2) throw std::invalid_argument("is_square_mod: degree > 2 unsupported");
    // l(a_p) = l(sqrt(D)), D = b^2 - 4 p0; write r = x + y sqrt(D).
    QuadElem b = p.poly().coeff(1), p0 = p.poly().coeff(0);
    QuadElem four = QuadElem::from_rational(Rational(4), d);
    QuadElem two = QuadElem::from_rational(Rational(2), d);
    QuadElem D = b * b - four * p0;
    QuadElem A = r.coeff(0), B = r.coeff(1);
    QuadElem x = A - B * b / two, y = B / two;
    if (y.is_zero()) {
        // x in l: square in the extension iff x or x/D is a square in l
        return is_square(x) || is_square(x / D);
    }
    auto n = sqrt_in_field(x * x - D * y * y);
    if (!n) return false;
    for (int sgn : {1, -1}) {
        QuadElem esq = (sgn == 1 ? x + *n : x - *n) / two;
        if (esq.is_zero()) continue;
        if (is_square(esq)) return true;  // f = y/(2e) then forced
    }
    return false;
}

bool same_class_mod(const QuadPoly& f, const QuadPoly& g, const IrredPoly& p) {
    return is_square_mod((f * g).mod(p.poly()), p);
}

IrredPoly tilde_poly(const IrredPoly& p, const Rational& c) {
    if (c == 0) throw std::invalid_argument("tilde_poly: c must be nonzero");
    long long d = p.d();
    int n = p.degree();
    QuadElem p0c = p.constant_term().conj();
    QuadElem cq = QuadElem(c, Rational(0), d);
    std::vector<QuadElem> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        coeffs.push_back(p.poly().coeff(n - j).conj() * cq.pow(n - j) / p0c);
    return IrredPoly(QuadPoly(std::move(coeffs), d));
}

bool is_self_tilde(const IrredPoly& p, const Rational& c) { return tilde_poly(p, c).poly() == p.poly(); }

FactoredRF FactoredRF::times(const FactoredRF& o) const {
    FactoredRF r{unit * o.unit, u_exp + o.u_exp, factors};
    for (const auto& [p, e] : o.factors) {
        r.factors[p] += e;
        if (r.factors[p] == 0) r.factors.erase(p);
    }
    return r;
}

bool FactoredRF::operator==(const FactoredRF& o) const {
    return unit == o.unit && u_exp == o.u_exp && factors == o.factors;
}

std::string FactoredRF::to_string() const {
    std::ostringstream os;
    os << unit.to_string();
    if (u_exp != 0) os << " * u^" << u_exp;
    for (const auto& [p, e] : factors) os << " * (" << p.to_string() << ")^" << e;
    return os.str();
}

FactoredRF s_action_factored(const FactoredRF& x, const Rational& c) {
    if (c == 0) throw std::invalid_argument("s_action_factored: c must be nonzero");
    long long d = x.unit.d();
    QuadElem cq = QuadElem(c, Rational(0), d);
    FactoredRF out{x.unit.conj() * cq.pow(x.u_exp), -x.u_exp, {}};
    for (const auto& [p, e] : x.factors) {
        out.unit = out.unit * p.constant_term().conj().pow(e);
        out.u_exp -= e * p.degree();
        out.factors[tilde_poly(p, c)] += e;
    }
    return out;
}

Char2L sigma_char(const Char2L& chi) { return Char2L(chi.rep().conj()); }

std::optional<Char2L> cor_char(const Char2P& chi) {
    QuadElem e = resultant(chi.p().poly(), chi.f());
    if (e.is_zero()) throw std::logic_error("cor_char: resultant vanished on coprime inputs");
    if (is_square(e)) return std::nullopt;
    return Char2L(e);
}

std::optional<Char2L> s_pu_star(const Char2P& chi) {
    auto cor = cor_char(chi);
    if (!cor) return std::nullopt;
    return sigma_char(*cor);
}

namespace {

// Transport of f along the semilinear map into the target q = ptilde: the
// generator of the source field maps to c/a_q, which inside l(a_q) is
// (c/q0)(-b_q - a_q).
Char2P transport_char(const Char2P& chi, const Rational& c, const IrredPoly& target) {
    long long d = chi.p().d();
    if (chi.p().degree() > 2) throw std::invalid_argument("character transport: degree > 2 unsupported");
    QuadPoly f = chi.f();
    QuadElem A = f.coeff(0).conj();
    if (chi.p().degree() == 1) return Char2P(target, QuadPoly::constant(A));
    QuadElem B = f.coeff(1).conj();
    QuadElem q0 = target.constant_term(), bq = target.poly().coeff(1);
    QuadElem cq = QuadElem(c, Rational(0), d);
    QuadElem scale = cq / q0;  // c/a_q = scale * (-b_q - a_q)
    QuadPoly img({A - B * scale * bq, -(B * scale)}, d);
    return Char2P(target, img);
}

}  // namespace

Char2P s_pp_star(const Char2P& chi, const Rational& c) {
    if (chi.p().degree() > 2) throw std::invalid_argument("s_pp_star: degree > 2 unsupported");
    if (!is_self_tilde(chi.p(), c)) throw std::invalid_argument("s_pp_star: p is not self-tilde");
    return transport_char(chi, c, chi.p());
}

Char2P s_p_tilde_star(const Char2P& chi, const Rational& c) {
    return transport_char(chi, c, tilde_poly(chi.p(), c));
}

std::string to_string(WClass w) {
    switch (w) {
        case WClass::NotGalois: return "NotGalois";
        case WClass::Cyclic4: return "Cyclic4";
        default: return "KleinW";
    }
}

WClass w_membership(const QuadElem& e) {
    if (e.is_zero()) throw std::invalid_argument("w_membership: zero input");
    if (is_square(e)) throw std::invalid_argument("w_membership: e is a square (trivial character)");
    Rational n = e.norm();
    // sigma(e)/e = norm(e)/e^2, a square in l iff norm(e) is
    bool galois = is_square_rational(n) || is_square_rational(n / to_rational(e.d()));
    if (!galois) return WClass::NotGalois;
    return is_square_rational(n) ? WClass::KleinW : WClass::Cyclic4;
}

Rational klein_rational_representative(const QuadElem& e) {
    if (w_membership(e) != WClass::KleinW) throw std::invalid_argument("not a Klein-type class");
    if (e.is_rational()) return e.a();
    auto n = sqrt_rational(e.norm());
    for (int sgn : {1, -1}) {
        Rational r = e.trace() + Rational(2 * sgn) * *n;
        if (r == 0) continue;
        if (is_square(e * QuadElem(r, Rational(0), e.d()))) return r;
    }
    throw std::logic_error("klein_rational_representative: construction failed");
}

S1Table zero_table(long long d) {
    return [d](const std::optional<Char2L>&, const std::map<IrredPoly, Char2P>&) { return BrauerElem(d); };
}

namespace {

std::optional<Char2L> combine_chi_u(const std::optional<Char2L>& base, const std::vector<Char2L>& extra,
                                    long long d) {
    QuadElem acc = base ? base->rep() : QuadElem::one(d);
    for (const auto& chi : extra) acc = acc * chi.rep();
    if (is_square(acc)) return std::nullopt;
    return Char2L(acc);
}

bool chis_equal(const std::map<IrredPoly, Char2P>& a, const std::map<IrredPoly, Char2P>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [p, chi] : a) {
        auto it = b.find(p);
        if (it == b.end()) return false;
        if (!same_class_mod(chi.f(), it->second.f(), p)) return false;
    }
    return true;
}

bool brlu_equal(const BrLUElem& x, const BrLUElem& y) {
    if (!(x.beta == y.beta)) return false;
    if (x.chi_u.has_value() != y.chi_u.has_value()) return false;
    if (x.chi_u && !x.chi_u->same_class(*y.chi_u)) return false;
    return chis_equal(x.chis, y.chis);
}

}  // namespace

BrLUElem apply_s_star(const BrLUElem& x, const Rational& c, const S1Table& table, bool check_involution) {
    long long d = x.beta.d();
    BrLUElem out(d);
    for (const auto& [p, chi] : x.chis) {
        if (p.degree() > 2) throw std::invalid_argument("apply_s_star: degree > 2 unsupported");
        Char2P img = s_p_tilde_star(chi, c);
        out.chis.emplace(img.p(), img);
    }
    std::vector<Char2L> pu;
    for (const auto& [p, chi] : x.chis)
        if (auto v = s_pu_star(chi)) pu.push_back(*v);
    std::optional<Char2L> su = x.chi_u ? std::optional<Char2L>(sigma_char(*x.chi_u)) : std::nullopt;
    out.chi_u = combine_chi_u(su, pu, d);
    out.beta = galois_act(x.beta) + table(x.chi_u, x.chis);
    if (check_involution) {
        BrLUElem twice = apply_s_star(out, c, table, false);
        if (!brlu_equal(twice, x)) throw std::logic_error("apply_s_star: table violates involutivity");
    }
    return out;
}

FixedReport check_fixed_conditions(const BrLUElem& x, const Rational& c, const S1Table& table) {
    long long d = x.beta.d();
    FixedReport rep;
    // (i) transports land on the recorded characters
    rep.cond_i = true;
    for (const auto& [p, chi] : x.chis) {
        Char2P img = s_p_tilde_star(chi, c);
        auto it = x.chis.find(img.p());
        if (it == x.chis.end()) {
            rep.cond_i = false;
            rep.witness_i = "no character at " + img.p().to_string();
            break;
        }
        if (!same_class_mod(img.f(), it->second.f(), img.p())) {
            rep.cond_i = false;
            rep.witness_i = "transport of chi at " + p.to_string() + " misses the class at " + img.p().to_string();
            break;
        }
    }
    // (ii) (1+sigma)chi_u ~ product of corestrictions
    QuadElem lhs = QuadElem::one(d);
    if (x.chi_u) lhs = QuadElem(x.chi_u->rep().norm(), Rational(0), d);
    QuadElem rhs = QuadElem::one(d);
    for (const auto& [p, chi] : x.chis)
        if (auto cor = cor_char(chi)) rhs = rhs * cor->rep();
    rep.cond_ii = is_square(lhs * rhs);
    if (!rep.cond_ii)
        rep.witness_ii = "norm class " + lhs.to_string() + " vs corestriction class " + rhs.to_string();
    // (iii) (1-sigma)beta = table image
    BrauerElem want = table(x.chi_u, x.chis);
    rep.cond_iii = one_minus_sigma(x.beta) == want;
    if (!rep.cond_iii)
        rep.witness_iii = "(1-sigma)beta = " + one_minus_sigma(x.beta).to_string() + ", table gives " + want.to_string();
    return rep;
}

bool cor_identity_check(const Char2P& chi, const Rational& c) {
    Char2P img = s_p_tilde_star(chi, c);
    auto cor_img = cor_char(img);
    auto cor_chi = cor_char(chi);
    if (cor_img.has_value() != cor_chi.has_value()) return false;
    if (!cor_img) return true;
    return cor_img->same_class(sigma_char(*cor_chi));
}

}  // namespace gzb::kummer
