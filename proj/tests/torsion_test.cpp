#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gzb/inp.hpp"
#include "gzb/lifting.hpp"
#include "gzb/truncation.hpp"

using namespace gzb;
using namespace gzb::torsion;

namespace {

std::mt19937_64 rng(0x70f51011ULL);

long rnd(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }

DescriptorPtr desc_of(const std::string& s) { return std::make_shared<const GroupDescriptor>(parse_descriptor(s)); }

GroupElem random_elem(const DescriptorPtr& d, int max_exp = 5) {
    GroupElem e = GroupElem::zero(d);
    for (std::size_t i = 0; i < d->size(); ++i) {
        const auto& s = d->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: e.set_cyclic(i, Integer(rnd(0, (1L << s.n) - 1))); break;
            case SummandKind::Tag::Pruefer: e.set_pruefer(i, Dyadic(Integer(rnd(0, 63)), rnd(0, max_exp))); break;
            case SummandKind::Tag::GenPruefer: {
                int k = static_cast<int>(rnd(1, 3));
                e.set_gen_a(i, k, Integer(rnd(0, (1L << k) - 1)));
                e.set_gen_t(i, Integer(rnd(0, (1L << s.n) - 1)));
                break;
            }
        }
    }
    return e;
}

// per-summand projection of x (zero elsewhere)
GroupElem project_summand(const GroupElem& x, std::size_t i) {
    GroupElem m = GroupElem::zero(x.descriptor());
    const auto& s = x.descriptor()->summands()[i];
    if (s.tag == SummandKind::Tag::Cyclic)
        m.set_cyclic(i, std::get<Integer>(x.coords()[i]));
    else if (s.tag == SummandKind::Tag::Pruefer)
        m.set_pruefer(i, std::get<Dyadic>(x.coords()[i]));
    else {
        const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
        for (const auto& [k, v] : g.a) m.set_gen_a(i, k, v);
        m.set_gen_t(i, g.t);
    }
    return m;
}

}  // namespace

TEST_CASE("descriptor parsing") {
    auto d = parse_descriptor("C1+C3+P | fixed,fixed,neg");
    CHECK(d.size() == 3);
    CHECK(d.summands()[0] == SummandKind::cyclic(1));
    CHECK(d.summands()[2] == SummandKind::pruefer());
    CHECK(d.to_string() == "C1+C3+P | fixed,fixed,neg");
    auto g = parse_descriptor("G2");
    CHECK(g.summands()[0] == SummandKind::gen_pruefer(2));
    auto sw = parse_descriptor("P+P | swap(0,1)");
    CHECK(sw.action().has_value());
    auto mx = parse_descriptor("P+P | matrix [[0,1],[1,0]]");
    CHECK(mx.action()->is_matrix());
    CHECK_THROWS_WITH_AS(parse_descriptor("C1+Q"), doctest::Contains("position"), std::invalid_argument);
    CHECK_THROWS_AS(parse_descriptor("C0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_descriptor("P+P | swap(0,2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_descriptor("C1+P | swap(0,1)"), std::invalid_argument);  // kinds differ
    CHECK_THROWS_AS(parse_descriptor("P+P | matrix [[0,2],[1,0]]"), std::invalid_argument);  // not involution
    CHECK_THROWS_AS(parse_descriptor("C1+P | matrix [[1,0],[0,1]]"), std::invalid_argument);  // not all-Pruefer
}

TEST_CASE("element addition in normal form") {
    auto z8 = desc_of("C3");
    GroupElem a = GroupElem::zero(z8);
    a.set_cyclic(0, Integer(5));
    CHECK(std::get<Integer>(elem_add(a, a).coords()[0]) == 2);

    auto p = desc_of("P");
    GroupElem b = GroupElem::zero(p);
    b.set_pruefer(0, Dyadic::parse("3/4"));
    GroupElem c = GroupElem::zero(p);
    c.set_pruefer(0, Dyadic::parse("1/2"));
    CHECK(std::get<Dyadic>(elem_add(b, c).coords()[0]) == Dyadic::parse("1/4"));

    // GenPruefer(1): 2 e_2 + 2 e_2 = 4 e_2 = x, so (a_2 = 0, t = 1)
    auto g1 = desc_of("G1");
    GroupElem e = GroupElem::zero(g1);
    e.set_gen_a(0, 2, Integer(2));
    GroupElem s = elem_add(e, e);
    const auto& gc = std::get<GenPrueferCoord>(s.coords()[0]);
    CHECK(gc.a.empty());
    CHECK(gc.t == 1);
    // cross-check through the truncation coordinates
    TruncatedGroup tg(g1, 8);
    auto ce = tg.to_coords(e);
    std::vector<Integer> doubled(ce.size());
    for (std::size_t i = 0; i < ce.size(); ++i) doubled[i] = 2 * ce[i];
    CHECK(tg.from_coords(doubled) == s);
    CHECK(mul_pow2(e, 1) == s);
    CHECK(elem_sub(s, e) == e);
    CHECK(elem_add(s, elem_neg(s)).is_zero());
    CHECK_THROWS_AS(elem_add(GroupElem::zero(z8), GroupElem::zero(p)), std::invalid_argument);
}

TEST_CASE("truncation coordinates round trip") {
    for (const char* ds : {"C3", "P", "G1", "G2", "C2+G1+P"}) {
        auto d = desc_of(ds);
        TruncatedGroup tg(d, 9);
        for (int t = 0; t < 20; ++t) {
            GroupElem x = random_elem(d);
            CHECK(tg.from_coords(tg.to_coords(x)) == x);
        }
    }
}

TEST_CASE("halves") {
    auto z4 = desc_of("C2");
    GroupElem zero = GroupElem::zero(z4);
    auto hs = halves(zero);
    REQUIRE(hs.size() == 2);
    std::set<Integer> vals;
    for (const auto& h : hs) vals.insert(std::get<Integer>(h.coords()[0]));
    CHECK(vals == std::set<Integer>{Integer(0), Integer(2)});

    GroupElem one = zero;
    one.set_cyclic(0, Integer(1));
    CHECK(halves(one).empty());

    auto p = desc_of("P");
    GroupElem half = GroupElem::zero(p);
    half.set_pruefer(0, Dyadic::half());
    auto ph = halves(half);
    REQUIRE(ph.size() == 2);
    std::set<std::string> reps;
    for (const auto& h : ph) reps.insert(std::get<Dyadic>(h.coords()[0]).to_string());
    CHECK(reps == std::set<std::string>{"1/4", "3/4"});

    // every returned half doubles back, in every summand shape
    for (const char* ds : {"C3+P", "G1+C2", "G2"}) {
        auto d = desc_of(ds);
        for (int t = 0; t < 12; ++t) {
            GroupElem x = random_elem(d);
            for (const auto& h : halves(x, 5)) CHECK(mul_pow2(h, 1) == x);
        }
    }
}

TEST_CASE("height symbolic values") {
    auto z8 = desc_of("C3");
    GroupElem a = GroupElem::zero(z8);
    a.set_cyclic(0, Integer(4));
    CHECK(height(a) == Ordinal::finite(2));
    CHECK(height(GroupElem::zero(z8)) == Ordinal::infinity());  // zero is divisible by convention

    auto g1 = desc_of("G1");
    GroupElem top = GroupElem::zero(g1);
    top.set_gen_t(0, Integer(1));
    CHECK(height(top) == Ordinal::omega_plus(0));
    CHECK(oracle_height(top, 12) == Ordinal::omega_plus(0));

    auto mix = desc_of("C3+P");
    GroupElem m = GroupElem::zero(mix);
    m.set_cyclic(0, Integer(4));
    m.set_pruefer(1, Dyadic::half());
    CHECK(height(m) == Ordinal::finite(2));
    CHECK(oracle_height(m, 12) == Ordinal::finite(2));
}

TEST_CASE("height bruteforce certification") {
    // exhaustive 2^6-torsion of C1+C3+P at K = 10
    auto d = desc_of("C1+C3+P");
    long checked = 0;
    for (long c1 = 0; c1 < 2; ++c1)
        for (long c3 = 0; c3 < 8; ++c3)
            for (long pv = 0; pv < 64; ++pv) {
                GroupElem e = GroupElem::zero(d);
                e.set_cyclic(0, Integer(c1));
                e.set_cyclic(1, Integer(c3));
                e.set_pruefer(2, Dyadic(Integer(pv), 6));
                CHECK(height(e) == oracle_height(e, 10));
                ++checked;
            }
    CHECK(checked == 1024);

    // zero element reported divisible at every K
    for (int K : {4, 8, 16, 24}) {
        HeightBound hb = height_bruteforce(GroupElem::zero(d), K);
        CHECK(hb.is_zero_image);
        CHECK_FALSE(hb.certified);
    }

    // GenPruefer(2) with t = 2: stabilizes transfinite, refines to omega+1
    auto g2 = desc_of("G2");
    GroupElem x = GroupElem::zero(g2);
    x.set_gen_t(0, Integer(2));
    HeightBound hb = height_bruteforce(x, 12);
    CHECK_FALSE(hb.certified);
    CHECK(hb.value == 10);
    CHECK(oracle_height(x, 12) == Ordinal::omega_plus(1));
    CHECK(height(x) == Ordinal::omega_plus(1));
}

TEST_CASE("height laws") {
    for (const char* ds : {"C2+C4", "C3+P", "C4+G1", "G2+P"}) {
        auto d = desc_of(ds);
        for (int t = 0; t < 40; ++t) {
            GroupElem x = random_elem(d);
            GroupElem x0 = project_summand(x, 0), x1 = project_summand(x, 1);
            CHECK(height(x) == min(height(x0), height(x1)));
            GroupElem dx = mul_pow2(x, 1);
            if (!dx.is_zero()) {
                Ordinal hx = height(x), hdx = height(dx);
                if (hx.is_finite()) CHECK(hdx >= hx.successor());
            }
        }
    }
}

TEST_CASE("divisible subgroup membership vs halving search") {
    auto d = desc_of("C2+P");
    for (long c = 0; c < 4; ++c)
        for (long pv = 0; pv < 16; ++pv) {
            GroupElem e = GroupElem::zero(d);
            e.set_cyclic(0, Integer(c));
            e.set_pruefer(1, Dyadic(Integer(pv), 4));
            bool structural = in_divisible_subgroup(e);
            bool searched = divisible_search(e, 8);
            CHECK(structural == searched);
            CHECK(structural == (height(e) == Ordinal::infinity()));
        }
}

TEST_CASE("ulm invariants") {
    auto d = parse_descriptor("C1+C3+P");
    CHECK(ulm_invariant(d, Ordinal::finite(0)) == 1);
    CHECK(ulm_invariant(d, Ordinal::finite(1)) == 0);
    CHECK(ulm_invariant(d, Ordinal::finite(2)) == 1);
    CHECK(d.divisible_rank() == 1);
    auto p = parse_descriptor("P");
    for (long m = 0; m <= 6; ++m) CHECK(ulm_invariant(p, Ordinal::finite(m)) == 0);
    auto g1 = parse_descriptor("G1");
    for (long m = 0; m <= 6; ++m) CHECK(ulm_invariant(g1, Ordinal::finite(m)) == 1);
    CHECK(ulm_invariant(g1, Ordinal::omega_plus(0)) == 1);
    CHECK(ulm_invariant(g1, Ordinal::omega_plus(1)) == 0);
    CHECK(ulm_length(g1) == Ordinal::omega_plus(1));
    CHECK(ulm_length(p) == Ordinal::finite(0));
    CHECK_THROWS_AS(ulm_invariant(p, Ordinal::infinity()), std::invalid_argument);

    // additivity over direct sums against the truncation oracle, K = 8
    const std::vector<std::string> atoms{"C1", "C2", "C3", "C4", "P", "G1", "G2"};
    for (int t = 0; t < 25; ++t) {
        int n = static_cast<int>(rnd(1, 5));
        std::string s;
        std::vector<std::string> parts;
        for (int i = 0; i < n; ++i) {
            parts.push_back(atoms[static_cast<std::size_t>(rnd(0, 6))]);
            s += (i ? "+" : "") + parts.back();
        }
        auto whole = parse_descriptor(s);
        for (const Ordinal& lam : {Ordinal::finite(rnd(0, 4)), Ordinal::omega_plus(rnd(0, 1))}) {
            long sum = 0;
            for (const auto& part : parts) sum += ulm_invariant(parse_descriptor(part), lam);
            CHECK(ulm_invariant(whole, lam) == sum);
            CHECK(ulm_invariant(whole, lam) == ulm_invariant_oracle(whole, lam, 8));
        }
    }
}

TEST_CASE("involution application") {
    auto d = desc_of("C2+C2+P | swap(0,1),neg");
    GroupElem e = GroupElem::zero(d);
    e.set_cyclic(0, Integer(1));
    e.set_cyclic(1, Integer(3));
    e.set_pruefer(2, Dyadic::parse("3/8"));
    GroupElem s = apply_action(e);
    CHECK(std::get<Integer>(s.coords()[0]) == 3);
    CHECK(std::get<Integer>(s.coords()[1]) == 1);
    CHECK(std::get<Dyadic>(s.coords()[2]) == Dyadic::parse("5/8"));
    CHECK(apply_action(s) == e);
}

TEST_CASE("tower verification") {
    auto p = desc_of("P");
    Tower zero;
    for (int i = 0; i < 6; ++i) zero.entries.push_back(GroupElem::zero(p));
    CHECK(verify_tower(zero, 5));

    Tower t;
    for (int i = 0; i < 8; ++i) {
        GroupElem e = GroupElem::zero(p);
        e.set_pruefer(0, Dyadic(Integer(1), i + 1));
        t.entries.push_back(e);
    }
    CHECK(verify_tower(t, 7));
    t.entries[4].set_pruefer(0, Dyadic(Integer(3), 5));
    CHECK_FALSE(verify_tower(t, 7));
}

TEST_CASE("inp decomposition pinned cases") {
    auto dec_id = inp_decompose(IntMatrix::identity(2), 12);
    CHECK(dec_id.I.size() == 2);
    CHECK(dec_id.N.empty());
    CHECK(dec_id.P.empty());
    CHECK(verify_inp(dec_id, 10));

    IntMatrix neg = IntMatrix::identity(2);
    neg.at(0, 0) = -1;
    neg.at(1, 1) = -1;
    auto dec_neg = inp_decompose(neg, 12);
    CHECK(dec_neg.N.size() == 2);
    CHECK(dec_neg.I.empty());
    CHECK(verify_inp(dec_neg, 10));

    IntMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    auto dec_swap = inp_decompose(swap, 12);
    CHECK(dec_swap.P.size() == 1);
    CHECK(dec_swap.I.empty());
    CHECK(dec_swap.N.empty());
    CHECK(verify_inp(dec_swap, 10));

    IntMatrix bad(2, 2);
    bad.at(0, 1) = 2;
    CHECK_THROWS_AS(inp_decompose(bad, 8), std::invalid_argument);

    // a shear conjugate of diag(1,-1)
    IntMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(1, 0) = 3;
    m.at(1, 1) = -1;
    REQUIRE((m * m).is_identity());
    auto dec = inp_decompose(m, 12);
    CHECK(verify_inp(dec, 10));
    CHECK(dec.I.size() + dec.N.size() + 2 * dec.P.size() == 2);
    // exhaustive reconstruction on the 2^4-torsion
    for (long x0 = 0; x0 < 16; ++x0)
        for (long x1 = 0; x1 < 16; ++x1) {
            GroupElem v = GroupElem::zero(dec.desc);
            v.set_pruefer(0, Dyadic(Integer(x0), 4));
            v.set_pruefer(1, Dyadic(Integer(x1), 4));
            CHECK(inp_reconstructs(dec, v, 4));
        }
}

TEST_CASE("fixed-condition tower construction") {
    auto dom = make_descriptor(std::vector<SummandKind>(2, SummandKind::pruefer()));
    auto tgt = INPTargets::make(1, 1, 1);
    const int depth = 12;

    auto make_tower = [&](long n0, long n1) {
        GroupElem top = GroupElem::zero(dom);
        top.set_pruefer(0, Dyadic(Integer(n0), depth + 3));
        top.set_pruefer(1, Dyadic(Integer(n1), depth + 3));
        Tower t;
        for (int i = 0; i <= depth + 1; ++i) t.entries.push_back(mul_pow2(top, depth + 1 - i));
        return t;
    };

    CorTable cor;
    cor.mat = IntMatrix(4, 2);
    cor.mat.at(0, 0) = 1;  // I row
    cor.mat.at(2, 1) = 1;  // P pair rows duplicated
    cor.mat.at(3, 1) = 1;

    // zero input tower -> zero output
    auto zt = build_fixed_tower(cor, tgt, make_tower(0, 0), depth);
    for (const auto& e : zt.u_part.entries) CHECK(e.is_zero());

    // zero corestriction -> zero u-part
    CorTable zerocor;
    zerocor.mat = IntMatrix(4, 2);
    auto zc = build_fixed_tower(zerocor, tgt, make_tower(3, 5), depth);
    for (const auto& e : zc.u_part.entries) CHECK(e.is_zero());

    // random instances: construction self-verifies (throws on failure)
    for (int t = 0; t < 25; ++t) {
        CorTable c2;
        c2.mat = IntMatrix(4, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            c2.mat.at(0, j) = rnd(-2, 2);
            Integer pv = rnd(-2, 2);
            c2.mat.at(2, j) = pv;
            c2.mat.at(3, j) = pv;
        }
        auto ft = build_fixed_tower(c2, tgt, make_tower(rnd(0, 7), rnd(0, 7)), depth);
        CHECK(verify_tower(ft.u_part, ft.u_part.size() - 1));
        CHECK(verify_tower(ft.neq_part, ft.neq_part.size() - 1));
    }

    // sigma-invariance violation rejected: a nonzero N row makes the image
    // non-invariant on generic towers
    CorTable badcor;
    badcor.mat = IntMatrix(4, 2);
    badcor.mat.at(1, 0) = 1;
    CHECK_THROWS_AS(build_fixed_tower(badcor, tgt, make_tower(1, 0), depth), std::invalid_argument);
}

TEST_CASE("quotient model and tower lifting") {
    auto dom = make_descriptor({SummandKind::cyclic(1), SummandKind::pruefer()});
    auto cod = make_descriptor({SummandKind::pruefer()});
    QuotientModel proj{dom, cod, IntMatrix(1, 2)};
    proj.map.at(0, 1) = 1;
    proj.validate();

    // zero tower lifts to the zero tower
    GroupElem zero = GroupElem::zero(dom);
    Tower zdown;
    for (int i = 0; i < 20; ++i) zdown.entries.push_back(GroupElem::zero(cod));
    Tower zl = lift_tower(proj, zero, zdown, 16);
    for (const auto& e : zl.entries) CHECK(e.is_zero());

    // project C1+P -> P, alpha in the P part, depth 16
    GroupElem alpha = GroupElem::zero(dom);
    alpha.set_pruefer(1, Dyadic(Integer(3), 3));
    GroupElem down0 = proj.apply(alpha);
    Tower down;
    for (int i = 0; i < 19; ++i) {
        GroupElem e = GroupElem::zero(cod);
        e.set_pruefer(0, std::get<Dyadic>(down0.coords()[0]).div_pow2_canonical(i));
        down.entries.push_back(e);
    }
    Tower lifted = lift_tower(proj, alpha, down, 16);
    CHECK(verify_tower(lifted, 16));
    for (std::size_t i = 0; i <= 16; ++i) CHECK(proj.apply(lifted.entries[i]) == down.entries[i]);

    // two preimage selections differing by the exponent-2 kernel double to
    // the same element
    auto pre = preimage(proj, down.entries[5], 24);
    REQUIRE(pre.has_value());
    GroupElem pre2 = *pre;
    pre2.set_cyclic(0, std::get<Integer>(pre->coords()[0]) + 1);  // add the kernel generator
    CHECK(proj.apply(pre2) == down.entries[5]);
    CHECK(mul_pow2(*pre, 1) == mul_pow2(pre2, 1));

    // kernel of exponent > 2 is rejected
    auto dom2 = make_descriptor({SummandKind::cyclic(2)});
    QuotientModel badmodel{dom2, cod, IntMatrix(1, 1)};
    CHECK_THROWS_AS(badmodel.validate(), std::invalid_argument);  // zero map, kernel Z/4

    QuotientModel doubling{dom, cod, IntMatrix(1, 2)};
    doubling.map.at(0, 1) = 2;
    doubling.validate();
    GroupElem odd = GroupElem::zero(cod);
    odd.set_pruefer(0, Dyadic(Integer(1), 1));
    CHECK(preimage(doubling, odd, 12).has_value());  // 1/2 = 2 * (1/4)
}

TEST_CASE("ordinal order and printing") {
    CHECK(Ordinal::finite(3) < Ordinal::omega_plus(0));
    CHECK(Ordinal::omega_plus(7) < Ordinal::omega2());
    CHECK(Ordinal::omega2() < Ordinal::infinity());
    CHECK(Ordinal::finite(2) < Ordinal::finite(5));
    CHECK(Ordinal::omega_plus(0).to_string() == "ω");
    CHECK(Ordinal::omega_plus(2).to_string() == "ω+2");
    CHECK(Ordinal::omega2().to_string() == "ω2");
    CHECK(Ordinal::finite(4).successor() == Ordinal::finite(5));
    CHECK_THROWS_AS(Ordinal::omega2().successor(), std::domain_error);
}
