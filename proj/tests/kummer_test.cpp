#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gzb/kummer.hpp"

using namespace gzb;
using namespace gzb::kummer;

namespace {

std::mt19937_64 rng(0x833a57ULL);

long rnd(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }

QuadElem rq(long long d, long cap = 4) { return QuadElem(Rational(rnd(-cap, cap)), Rational(rnd(-cap, cap)), d); }

IrredPoly rnd_irred(long long d, int deg) {
    for (;;) {
        std::vector<QuadElem> cs;
        for (int i = 0; i < deg; ++i) cs.push_back(rq(d));
        cs.push_back(QuadElem::one(d));
        try {
            QuadPoly p(cs, d);
            if (p.constant_term().is_zero()) continue;
            return IrredPoly(p);
        } catch (const std::invalid_argument&) {
        }
    }
}

IrredPoly rnd_self_tilde(long long d, const Rational& c) {
    const QuadElem unit = quad(3, 2, d);  // norm-one fundamental square
    for (;;) {
        int j = static_cast<int>(rnd(-1, 1));
        QuadElem c0 = QuadElem(c, Rational(0), d) * unit.pow(j);
        QuadElem y = rq(d, 3);
        QuadElem b = y + y.conj() * c0 / QuadElem(c, Rational(0), d);
        try {
            IrredPoly p(QuadPoly({c0, b, QuadElem::one(d)}, d));
            if (is_self_tilde(p, c)) return p;
        } catch (const std::invalid_argument&) {
        }
    }
}

// brute-force square-root search in l(a_p) with small coefficients: oracle
// for is_square_mod on degree-2 moduli
bool has_small_sqrt_mod(const QuadPoly& g, const IrredPoly& p, long cap) {
    long long d = p.d();
    for (long a1 = -cap; a1 <= cap; ++a1)
        for (long b1 = -cap; b1 <= cap; ++b1)
            for (long a2 = -cap; a2 <= cap; ++a2)
                for (long b2 = -cap; b2 <= cap; ++b2) {
                    QuadPoly h({QuadElem(Rational(a1), Rational(b1), d), QuadElem(Rational(a2), Rational(b2), d)}, d);
                    if (h.is_zero()) continue;
                    if ((h * h - g).mod(p.poly()).is_zero()) return true;
                }
    return false;
}

}  // namespace

TEST_CASE("character text form round trip") {
    IrredPoly p(parse_quadpoly("u^2 - (1+1*sqrt(2))*u + 3", 2));
    Char2P chi(p, parse_quadpoly("u", 2));
    Char2P back = parse_char2p(chi.to_string(), 2);
    CHECK(back.p().poly() == p.poly());
    CHECK(back.f() == chi.f());
    CHECK_THROWS_AS(parse_char2p("chi[u^2-3]", 2), std::invalid_argument);
}

TEST_CASE("irreducible poly wrapper") {
    CHECK_THROWS_AS(IrredPoly(parse_quadpoly("u^2 - 2", 2)), std::invalid_argument);  // reducible
    CHECK_THROWS_AS(IrredPoly(parse_quadpoly("u", 2)), std::invalid_argument);        // p = u excluded
    IrredPoly p(parse_quadpoly("2*u^2 - 6", 2));
    CHECK(p.poly().is_monic());  // scaled to monic
    CHECK(p.degree() == 2);
}

TEST_CASE("square classes modulo p") {
    IrredPoly p(parse_quadpoly("u^2 - 3", 2));
    // a_p^2 = 3 is a square; a_p itself is not
    CHECK(is_square_mod(parse_quadpoly("3", 2), p));
    CHECK_FALSE(is_square_mod(parse_quadpoly("u", 2), p));
    CHECK(is_square_mod(parse_quadpoly("2", 2), p));   // sqrt(2) lives in l
    CHECK(is_square_mod(parse_quadpoly("6", 2), p));   // sqrt(2)*a_p
    CHECK_FALSE(is_square_mod(parse_quadpoly("-1", 2), p));  // the quartic field is real
    // random squares are recognized, and agree with a bounded search
    for (int t = 0; t < 25; ++t) {
        QuadPoly h({rq(2, 2), rq(2, 2)}, 2);
        if (h.mod(p.poly()).is_zero()) continue;
        QuadPoly sq = (h * h).mod(p.poly());
        CHECK(is_square_mod(sq, p));
        CHECK(same_class_mod(sq, parse_quadpoly("1", 2), p));
    }
    for (int t = 0; t < 10; ++t) {
        QuadPoly g({rq(2, 2), rq(2, 2)}, 2);
        if (g.mod(p.poly()).is_zero()) continue;
        if (!is_square_mod(g, p)) CHECK_FALSE(has_small_sqrt_mod(g, p, 3));
    }
    // degree-1 modulus descends to the base field
    IrredPoly lin(parse_quadpoly("u - 7", 2));
    CHECK(is_square_mod(parse_quadpoly("2", 2), lin));
    CHECK_FALSE(is_square_mod(parse_quadpoly("3", 2), lin));
}

TEST_CASE("tilde poly") {
    // u - (1+sqrt(2)) with c = 3: root-level 3/conj(1+sqrt(2)) = -3-3 sqrt(2)
    IrredPoly p(parse_quadpoly("u - (1+1*sqrt(2))", 2));
    IrredPoly pt = tilde_poly(p, Rational(3));
    CHECK(pt.poly() == parse_quadpoly("u + 3 + 3*sqrt(2)", 2));
    // u - 1 with c = 1 is a fixed point
    IrredPoly q(parse_quadpoly("u - 1", 2));
    CHECK(tilde_poly(q, Rational(1)).poly() == q.poly());
    CHECK(is_self_tilde(q, Rational(1)));
    CHECK_THROWS_AS(tilde_poly(q, Rational(0)), std::invalid_argument);
    // involution on 100 random monic irreducible quadratics over Q(sqrt(2))
    for (int t = 0; t < 100; ++t) {
        IrredPoly r = rnd_irred(2, 2);
        Rational c(rnd(1, 7));
        IrredPoly rt = tilde_poly(r, c);
        CHECK(rt.degree() == r.degree());
        CHECK(tilde_poly(rt, c).poly() == r.poly());
    }
}

TEST_CASE("triangular action on the factored decomposition") {
    // s(u) = 3 * u^-1
    FactoredRF u{QuadElem::one(2), 1, {}};
    FactoredRF su = s_action_factored(u, Rational(3));
    CHECK(su.unit == quad(3, 0, 2));
    CHECK(su.u_exp == -1);
    CHECK(su.factors.empty());

    // s(u + a) = conj(a) * u^-1 * (u + c/conj(a))
    QuadElem a = quad(1, 1, 2);
    IrredPoly lin(QuadPoly({a, QuadElem::one(2)}, 2));  // u + a, constant term a
    FactoredRF x{QuadElem::one(2), 0, {{lin, 1}}};
    FactoredRF sx = s_action_factored(x, Rational(3));
    CHECK(sx.unit == a.conj());
    CHECK(sx.u_exp == -1);
    REQUIRE(sx.factors.size() == 1);
    QuadElem expect_c0 = QuadElem(Rational(3), Rational(0), 2) / a.conj();
    CHECK(sx.factors.begin()->first.poly() == QuadPoly({expect_c0, QuadElem::one(2)}, 2));

    // involution and multiplicativity on random elements
    for (int t = 0; t < 40; ++t) {
        Rational c(rnd(1, 7));
        FactoredRF f{rq(2), rnd(-3, 3), {}};
        while (f.unit.is_zero()) f.unit = rq(2);
        int nf = static_cast<int>(rnd(0, 2));
        for (int i = 0; i < nf; ++i) f.factors[rnd_irred(2, 1 + static_cast<int>(rnd(0, 1)))] += rnd(1, 2);
        FactoredRF g{rq(2), rnd(-2, 2), {}};
        while (g.unit.is_zero()) g.unit = rq(2);
        CHECK(s_action_factored(s_action_factored(f, c), c) == f);
        CHECK(s_action_factored(f.times(g), c) == s_action_factored(f, c).times(s_action_factored(g, c)));
    }
}

TEST_CASE("character of the base field") {
    Char2L three(quad(3, 0, 2));
    CHECK(sigma_char(three).same_class(three));
    Char2L e(quad(2, 1, 2));
    CHECK(sigma_char(e).rep() == quad(2, -1, 2));
    CHECK(sigma_char(sigma_char(e)).same_class(e));
    CHECK_THROWS_AS(Char2L(quad(4, 0, 2)), std::invalid_argument);  // square
    CHECK_THROWS_AS(Char2L(QuadElem::zero(2)), std::invalid_argument);
}

TEST_CASE("corestriction via norms") {
    IrredPoly p(parse_quadpoly("u^2 - 3", 2));
    Char2P chi(p, parse_quadpoly("u", 2));
    auto e = cor_char(chi);
    REQUIRE(e.has_value());
    CHECK(e->rep() == quad(-3, 0, 2));
    // the trivial character dies
    Char2P triv(p, parse_quadpoly("1", 2));
    CHECK_FALSE(cor_char(triv).has_value());
    // squares die: norm multiplicativity means cor(chi^2) is trivial
    for (int t = 0; t < 20; ++t) {
        QuadPoly h({rq(2, 3), rq(2, 3)}, 2);
        if (h.mod(p.poly()).is_zero()) continue;
        Char2P sq(p, (h * h).mod(p.poly()));
        CHECK_FALSE(cor_char(sq).has_value());
    }
    // multiplicativity at the class level
    for (int t = 0; t < 20; ++t) {
        QuadPoly f1({rq(2, 3), rq(2, 3)}, 2), f2({rq(2, 3), rq(2, 3)}, 2);
        if (f1.mod(p.poly()).is_zero() || f2.mod(p.poly()).is_zero()) continue;
        QuadElem e1 = resultant(p.poly(), f1), e2 = resultant(p.poly(), f2);
        QuadElem e12 = resultant(p.poly(), (f1 * f2).mod(p.poly()));
        CHECK(same_square_class(e12, e1 * e2));
    }
    // s_pu composes the conjugation on top
    auto spu = s_pu_star(chi);
    REQUIRE(spu.has_value());
    CHECK(spu->same_class(Char2L(quad(-3, 0, 2))));
}

TEST_CASE("self-tilde action") {
    // constant representative: coefficient conjugation only
    IrredPoly p(parse_quadpoly("u^2 - 3", 2));
    REQUIRE(is_self_tilde(p, Rational(3)));
    Char2P cchi(p, parse_quadpoly("1+1*sqrt(2)", 2));
    Char2P cimg = s_pp_star(cchi, Rational(3));
    CHECK(same_class_mod(cimg.f(), parse_quadpoly("1-1*sqrt(2)", 2), p));

    // p = u^2 - c, f = a_p: c/a_p = a_p exactly
    Char2P uchi(p, parse_quadpoly("u", 2));
    Char2P uimg = s_pp_star(uchi, Rational(3));
    CHECK(uimg.f() == parse_quadpoly("u", 2));

    CHECK_THROWS_AS(s_pp_star(uchi, Rational(5)), std::invalid_argument);  // not self-tilde for c = 5

    // involution on square classes for 50 random self-tilde instances
    for (int t = 0; t < 50; ++t) {
        Rational c(3);
        IrredPoly sp = rnd_self_tilde(2, c);
        QuadPoly f({rq(2, 3), rq(2, 3)}, 2);
        if (f.mod(sp.poly()).is_zero()) continue;
        Char2P chi(sp, f);
        Char2P twice = s_pp_star(s_pp_star(chi, c), c);
        CHECK(same_class_mod(twice.f(), chi.f(), sp));
    }
}

TEST_CASE("transport between a polynomial and its tilde") {
    Rational c(3);
    for (int t = 0; t < 30; ++t) {
        IrredPoly p = rnd_irred(2, 2);
        Char2P chi(p, QuadPoly({rq(2, 3), rq(2, 3)}, 2).mod(p.poly()).is_zero()
                          ? parse_quadpoly("u", 2)
                          : QuadPoly({rq(2, 3), rq(2, 3)}, 2));
        Char2P img = s_p_tilde_star(chi, c);
        CHECK(img.p().poly() == tilde_poly(p, c).poly());
        // the roundtrip transport is the identity map on the source field
        Char2P back = s_p_tilde_star(img, c);
        CHECK(back.p().poly() == p.poly());
        CHECK(same_class_mod(back.f(), chi.f(), p));
        CHECK(cor_identity_check(chi, c));
    }
    // pinned: p = u^2 - 3, f = a_p, c = 1
    IrredPoly p(parse_quadpoly("u^2 - 3", 2));
    Char2P chi(p, parse_quadpoly("u", 2));
    CHECK(cor_identity_check(chi, Rational(1)));
    Char2P triv(p, parse_quadpoly("1", 2));
    CHECK(cor_identity_check(triv, Rational(3)));
}

TEST_CASE("w membership") {
    CHECK(w_membership(quad(3, 0, 2)) == WClass::KleinW);
    CHECK(w_membership(quad(2, 1, 2)) == WClass::Cyclic4);
    CHECK(w_membership(quad(0, 1, 2)) == WClass::NotGalois);
    CHECK_THROWS_AS(w_membership(quad(4, 0, 2)), std::invalid_argument);  // square
    // invariance under multiplying by squares
    for (int t = 0; t < 40; ++t) {
        QuadElem e = rq(2);
        if (e.is_zero() || is_square(e)) continue;
        QuadElem s = rq(2);
        if (s.is_zero()) continue;
        CHECK(w_membership(e) == w_membership(e * s * s));
    }
    // Klein classes admit verified rational representatives
    QuadElem irr = quad(9, 6, 2);  // 3 * (1+sqrt(2))^2
    REQUIRE(w_membership(irr) == WClass::KleinW);
    Rational rep = klein_rational_representative(irr);
    CHECK(is_square(irr * QuadElem(rep, Rational(0), 2)));
    CHECK(klein_rational_representative(quad(3, 0, 2)) == Rational(3));
}

namespace {

// admissible nonzero table: T = R - sigma(R(s*_X(.))), with R keyed off a
// cheap fingerprint of the character data
S1Table make_admissible_table(long long d, const Rational& c) {
    auto R = [d](const std::optional<Char2L>& chi_u, const std::map<IrredPoly, Char2P>& chis) {
        long bits = chi_u ? 1 : 0;
        for (const auto& [p, chi] : chis) bits += p.degree() + chi.f().degree() + 2;
        if (bits % 2 == 0) return gzb::brauer::BrauerElem(d);
        using gzb::brauer::PlaceL;
        using gzb::brauer::place_over;
        std::map<PlaceL, Dyadic> m{{place_over(PlaceQ::prime(Integer(7)), d, 0), Dyadic::half()},
                                   {place_over(PlaceQ::prime(Integer(7)), d, 1), Dyadic::half()}};
        return gzb::brauer::BrauerElem(d, m);
    };
    return [R, d, c](const std::optional<Char2L>& chi_u, const std::map<IrredPoly, Char2P>& chis) {
        BrLUElem x(d);
        x.chi_u = chi_u;
        x.chis = chis;
        BrLUElem sx = apply_s_star(x, c, zero_table(d), false);
        return R(chi_u, chis) - gzb::brauer::galois_act(R(sx.chi_u, sx.chis));
    };
}

BrLUElem brlu_sum(const BrLUElem& x, const BrLUElem& y, long long d) {
    BrLUElem out(d);
    out.beta = x.beta + y.beta;
    QuadElem acc = QuadElem::one(d);
    if (x.chi_u) acc = acc * x.chi_u->rep();
    if (y.chi_u) acc = acc * y.chi_u->rep();
    if (!is_square(acc)) out.chi_u = Char2L(acc);
    out.chis = x.chis;
    for (const auto& [p, chi] : y.chis) {
        auto it = out.chis.find(p);
        if (it == out.chis.end())
            out.chis.emplace(p, chi);
        else {
            QuadPoly prod = (it->second.f() * chi.f()).mod(p.poly());
            out.chis.erase(it);
            out.chis.emplace(p, Char2P(p, prod));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("assembled action and fixed conditions") {
    const long long d = 2;
    const Rational c(3);
    auto zt = zero_table(d);

    // pure invariant part: the action is the Galois action
    BrLUElem b(d);
    b.beta = gzb::brauer::BrauerElem::parse("d=2; 7.0:1/4, 7.1:3/4");
    BrLUElem sb = apply_s_star(b, c, zt);
    CHECK(sb.beta == gzb::brauer::galois_act(b.beta));
    CHECK_FALSE(sb.chi_u.has_value());
    CHECK(sb.chis.empty());

    // pure chi_u with the zero table: conjugation
    BrLUElem xu(d);
    xu.chi_u = Char2L(quad(2, 1, 2));
    BrLUElem sxu = apply_s_star(xu, c, zt);
    CHECK(sxu.beta.is_zero());
    REQUIRE(sxu.chi_u.has_value());
    CHECK(sxu.chi_u->same_class(Char2L(quad(2, -1, 2))));

    // involution under random admissible tables
    auto table = make_admissible_table(d, c);
    for (int t = 0; t < 25; ++t) {
        BrLUElem x(d);
        x.beta = gzb::brauer::BrauerElem::parse("d=2; 17.0:1/4, 17.1:1/4, 3:1/2");
        if (rnd(0, 1)) x.chi_u = Char2L(quad(2, 1, 2));
        IrredPoly p = rnd_irred(d, 2);
        QuadPoly f({rq(d, 3), rq(d, 3)}, d);
        if (!f.mod(p.poly()).is_zero()) x.chis.emplace(p, Char2P(p, f));
        BrLUElem twice = apply_s_star(apply_s_star(x, c, table), c, table);
        CHECK(twice.beta == x.beta);  // full equality checked inside apply_s_star too
    }

    // fixed conditions: zero element passes
    auto rep0 = check_fixed_conditions(BrLUElem(d), c, zt);
    CHECK(rep0.all());

    // x + s*(x) is fixed (exponent 2), so it passes all three conditions
    for (int t = 0; t < 20; ++t) {
        BrLUElem x(d);
        x.beta = gzb::brauer::BrauerElem::parse("d=2; 7.0:1/8, 7.1:3/8, 3:1/2");
        x.chi_u = Char2L(quad(2, 1, 2));
        IrredPoly p = rnd_self_tilde(d, c);
        QuadPoly f({rq(d, 3), rq(d, 3)}, d);
        if (f.mod(p.poly()).is_zero()) continue;
        x.chis.emplace(p, Char2P(p, f));
        BrLUElem sx = apply_s_star(x, c, zt);
        BrLUElem y = brlu_sum(x, sx, d);
        auto rep = check_fixed_conditions(y, c, zt);
        CHECK(rep.cond_i);
        CHECK(rep.cond_ii);
        CHECK(rep.cond_iii);
        // the table output on fixed inputs is sigma-negated (trivially for
        // the zero table; meaningfully for admissible ones)
        auto out = table(y.chi_u, y.chis);
        CHECK(gzb::brauer::galois_act(out) == -out);

        // corrupting chi_u by a norm-class twist breaks condition (ii)
        if (y.chi_u) {
            BrLUElem bad = y;
            QuadElem twisted = y.chi_u->rep() * quad(1, 1, 2);  // norm -1 flips the class
            if (!is_square(twisted)) {
                bad.chi_u = Char2L(twisted);
                auto brep = check_fixed_conditions(bad, c, zt);
                CHECK_FALSE(brep.cond_ii);
                CHECK_FALSE(brep.witness_ii.empty());
            }
        }
    }
}
