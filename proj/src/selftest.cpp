#include "gzb/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "gzb/brauer.hpp"
#include "gzb/conic.hpp"
#include "gzb/inp.hpp"
#include "gzb/kummer.hpp"
#include "gzb/lifting.hpp"
#include "gzb/oracle/isotropy.hpp"
#include "gzb/pipeline.hpp"
#include "gzb/truncation.hpp"

namespace gzb::harness {

namespace {

using gzb::brauer::BrauerElem;
using gzb::brauer::galois_act;
using gzb::brauer::one_minus_sigma;
using gzb::brauer::PlaceL;
using gzb::brauer::SplitKind;
using gzb::kummer::Char2L;
using gzb::kummer::Char2P;
using gzb::kummer::IrredPoly;
using gzb::torsion::GroupElem;
using gzb::torsion::SummandKind;
using gzb::torsion::Tower;

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

struct Failure {
    bool failed = false;
    std::string witness;
    void note(const std::string& w) {
        if (!failed) witness = w;
        failed = true;
    }
};

long rnd_range(Rng& rng, long lo, long hi) {  // inclusive
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational rnd_nonzero_rational(Rng& rng, long cap) {
    long n = 0;
    while (n == 0) n = rnd_range(rng, -cap, cap);
    long d = rnd_range(rng, 1, cap);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// ------------------------------------------------------------------
// 1. Hilbert product formula + brute-force agreement
// ------------------------------------------------------------------

CriterionResult criterion_hilbert(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed);
    long product_checked = 0;
    for (int t = 0; t < 200 && !fail.failed; ++t) {
        Rational a = rnd_nonzero_rational(rng, 10000), b = rnd_nonzero_rational(rng, 10000);
        int prod = 1;
        for (const auto& v : hilbert_relevant_places(a, b)) prod *= hilbert_symbol(a, b, v);
        if (prod != 1)
            fail.note("product formula failed at a=" + gzb::to_string(a) + " b=" + gzb::to_string(b));
        ++product_checked;
    }

    const std::vector<long long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::vector<std::pair<long long, long long>> pairs;
    for (long long a = -30; a <= 30; ++a) {
        if (a == 0) continue;
        for (long long b = a; b <= 30; ++b) {
            if (b == 0) continue;
            pairs.emplace_back(a, b);
        }
    }
    struct Task {
        long long p;
        std::size_t lo, hi;
    };
    std::vector<Task> tasks;
    const std::size_t chunk = 80;
    for (long long p : primes)
        for (std::size_t lo = 0; lo < pairs.size(); lo += chunk)
            tasks.push_back({p, lo, std::min(lo + chunk, pairs.size())});

    unsigned hw = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::string> task_fail(tasks.size());
    std::atomic<long> agree_count{0};
    bool corrupt = opts.corrupt_fixture;
    auto worker = [&]() {
        gzb::oracle::IsotropyWorkspace ws;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& tk = tasks[i];
            for (std::size_t j = tk.lo; j < tk.hi; ++j) {
                auto [a, b] = pairs[j];
                PlaceQ v = PlaceQ::prime(to_integer(tk.p));
                int sym = hilbert_symbol(to_rational(a), to_rational(b), v);
                if (corrupt && a == 2 && b == 3 && tk.p == 3) sym = -sym;
                int sym_ba = hilbert_symbol(to_rational(b), to_rational(a), v);
                int oracle = gzb::oracle::hilbert_symbol_bruteforce(a, b, tk.p, &ws);
                if (sym != oracle || sym_ba != oracle) {
                    std::ostringstream os;
                    os << "disagreement at (" << a << "," << b << ")_" << tk.p << ": symbol " << sym << ", search "
                       << oracle;
                    task_fail[i] = os.str();
                    return;
                }
                agree_count.fetch_add(1);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& w : task_fail)
        if (!w.empty()) fail.note(w);

    std::ostringstream detail;
    detail << product_checked << " product-formula pairs, " << agree_count.load()
           << " brute-force agreements (|a|,|b| <= 30, p <= 50)";
    return {1, "hilbert product formula + mod-p^k brute force", !fail.failed,
            fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 2. Conic / symbol consistency
// ------------------------------------------------------------------

CriterionResult criterion_conic(const SelftestOptions&) {
    Failure fail;
    std::vector<long long> sf;
    for (long long v = -20; v <= 20; ++v) {
        if (v == 0 || v == 1) continue;
        if (squarefree_part(to_integer(v)) == to_integer(v)) sf.push_back(v);
    }
    sf.push_back(1);
    long split_count = 0, nonsplit_count = 0;
    for (long long c : sf)
        for (long long d : sf) {
            if (fail.failed) break;
            auto rep = gzb::brauer::quaternion_splits(to_rational(c), to_rational(d));
            if (rep.splits) {
                ++split_count;
                auto pt = gzb::brauer::conic_point_search(to_rational(c), to_rational(d), 10000);
                if (!pt) {
                    fail.note("split (" + std::to_string(c) + "," + std::to_string(d) +
                              ") but no point of height <= 10^4");
                    continue;
                }
                if (to_rational(c) * pt->x * pt->x + to_rational(d) * pt->y * pt->y != 1)
                    fail.note("search returned a non-point");
            } else {
                ++nonsplit_count;
                if (rep.witnesses.empty() || rep.witnesses.size() % 2 != 0)
                    fail.note("nonsplit (" + std::to_string(c) + "," + std::to_string(d) +
                              ") without an even nonempty witness set");
                if (gzb::brauer::conic_point_search(to_rational(c), to_rational(d), 50))
                    fail.note("point found on a nonsplit conic (" + std::to_string(c) + "," + std::to_string(d) + ")");
            }
        }
    std::ostringstream detail;
    detail << split_count << " split conics solved, " << nonsplit_count << " nonsplit with even witness sets";
    return {2, "conic point search vs quaternion splitting", !fail.failed,
            fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 3. Galois action on local invariants
// ------------------------------------------------------------------

BrauerElem random_brauer(Rng& rng, long long d, int max_pairs = 3, int max_k = 4) {
    std::map<PlaceL, Dyadic> m;
    Dyadic sum;
    // split pairs
    Integer p = 2;
    int pairs = 0, want_pairs = static_cast<int>(rng() % (max_pairs + 1));
    std::vector<PlaceL> inert;
    while (pairs < want_pairs || inert.size() < 3) {
        PlaceQ base = PlaceQ::prime(p);
        SplitKind k = gzb::brauer::splitting_type(base, d);
        if (k == SplitKind::Split && pairs < want_pairs) {
            for (int idx = 0; idx < 2; ++idx) {
                Dyadic v(Integer(rng() % 16), rnd_range(rng, 0, max_k));
                if (!v.is_zero()) {
                    m[gzb::brauer::place_over(base, d, idx)] = v;
                    sum = sum + v;
                }
            }
            ++pairs;
        } else if (k != SplitKind::Split) {
            inert.push_back(gzb::brauer::place_over(base, d, 0));
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    // a couple of inert/ramified entries
    for (std::size_t i = 0; i + 1 < inert.size() && i < 2; ++i) {
        Dyadic v(Integer(rng() % 16), rnd_range(rng, 0, max_k));
        if (!v.is_zero()) {
            m[inert[i]] = v;
            sum = sum + v;
        }
    }
    // balance at the last inert place
    if (!sum.is_zero()) {
        PlaceL q = inert.back();
        m[q] = -sum + (m.count(q) ? m[q] : Dyadic());
        if (m[q].is_zero()) m.erase(q);
    }
    return BrauerElem(d, std::move(m));
}

CriterionResult criterion_galois_action(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 3);
    const std::vector<long long> ds{2, 3, 5, -1, -2, 6};
    for (int t = 0; t < 500 && !fail.failed; ++t) {
        long long d = ds[rng() % ds.size()];
        BrauerElem b = random_brauer(rng, d);
        BrauerElem c = random_brauer(rng, d);
        if (!(galois_act(galois_act(b)) == b)) fail.note("involution failed: " + b.to_string());
        if (!(galois_act(b + c) == galois_act(b) + galois_act(c)))
            fail.note("homomorphism failed: " + b.to_string());
        BrauerElem oms = one_minus_sigma(b);
        Dyadic total;
        for (const auto& [pl, v] : oms.invariants()) {
            if (!pl.is_split_pair() && !v.is_zero())
                fail.note("(1-sigma) nonzero at non-split place " + pl.to_string());
            total = total + v;
        }
        if (!total.is_zero()) fail.note("sum-zero violated by (1-sigma)");
        if (!(galois_act(oms) == -oms)) fail.note("(1-sigma) image not sigma-negated");
    }
    return {3, "galois action involutive homomorphism on invariants", !fail.failed,
            fail.failed ? fail.witness : "500 random invariant vectors over 6 fields", 0};
}

// ------------------------------------------------------------------
// 4. Factored action / tilde involutions
// ------------------------------------------------------------------

QuadElem rnd_quad(Rng& rng, long long d, long cap = 5) {
    return QuadElem(Rational(rnd_range(rng, -cap, cap)), Rational(rnd_range(rng, -cap, cap)), d);
}

QuadElem rnd_quad_nonzero(Rng& rng, long long d, long cap = 5) {
    for (;;) {
        QuadElem q = rnd_quad(rng, d, cap);
        if (!q.is_zero()) return q;
    }
}

IrredPoly rnd_irred(Rng& rng, long long d, int deg) {
    for (;;) {
        std::vector<QuadElem> cs;
        for (int i = 0; i < deg; ++i) cs.push_back(rnd_quad(rng, d, 4));
        cs.push_back(QuadElem::one(d));
        try {
            QuadPoly p(cs, d);
            if (p.constant_term().is_zero()) continue;
            return IrredPoly(p);
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
}

CriterionResult criterion_factored_action(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 4);
    const long long d = 2;
    const std::vector<Rational> cs{Rational(3), Rational(5), Rational(7)};
    for (int t = 0; t < 100 && !fail.failed; ++t) {
        Rational c = cs[t % cs.size()];
        // tilde involution on irreducible polys of degree 1 and 2
        for (int deg : {1, 2}) {
            IrredPoly p = rnd_irred(rng, d, deg);
            IrredPoly pt = gzb::kummer::tilde_poly(p, c);
            IrredPoly ptt = gzb::kummer::tilde_poly(pt, c);
            if (!(ptt.poly() == p.poly())) fail.note("tilde not an involution at " + p.to_string());
            if (pt.degree() != p.degree()) fail.note("tilde changed degree");
            // root-level cross-check through symmetric functions
            if (deg == 1) {
                QuadElem a = -p.poly().coeff(0);
                QuadElem root = QuadElem(c, Rational(0), d) / a.conj();
                if (!(pt.poly() == QuadPoly({-root, QuadElem::one(d)}, d)))
                    fail.note("deg-1 root formula mismatch at " + p.to_string());
            } else {
                QuadElem b = p.poly().coeff(1), c0 = p.poly().coeff(0);
                QuadElem cq = QuadElem(c, Rational(0), d);
                // roots c/sigma(r1), c/sigma(r2): sum c*sigma(b)/sigma(c0)
                // (note sigma(r1+r2) = -sigma(b)), product c^2/sigma(c0)
                QuadElem sum = -(cq * b.conj() / c0.conj());
                QuadElem prod = cq * cq / c0.conj();
                if (!(pt.poly() == QuadPoly({prod, -sum, QuadElem::one(d)}, d)))
                    fail.note("deg-2 symmetric-function mismatch at " + p.to_string());
            }
        }
        // s on the factored decomposition: involution, and the two displayed rules
        gzb::kummer::FactoredRF x{rnd_quad_nonzero(rng, d), rnd_range(rng, -3, 3), {}};
        int nf = static_cast<int>(rng() % 4);
        for (int i = 0; i < nf; ++i) {
            long e = rnd_range(rng, -2, 2);
            if (e) x.factors[rnd_irred(rng, d, 1 + static_cast<int>(rng() % 2))] += e;
        }
        for (auto it = x.factors.begin(); it != x.factors.end();)
            it = it->second == 0 ? x.factors.erase(it) : std::next(it);
        auto sx = gzb::kummer::s_action_factored(x, c);
        if (!(gzb::kummer::s_action_factored(sx, c) == x)) fail.note("s not an involution on " + x.to_string());
        auto y = gzb::kummer::FactoredRF{rnd_quad_nonzero(rng, d), rnd_range(rng, -2, 2), {}};
        auto sxy = gzb::kummer::s_action_factored(x.times(y), c);
        if (!(sxy == sx.times(gzb::kummer::s_action_factored(y, c)))) fail.note("s not multiplicative");
    }
    // the pinned rule s(u) = c/u
    gzb::kummer::FactoredRF u{QuadElem::one(2), 1, {}};
    auto su = gzb::kummer::s_action_factored(u, Rational(3));
    if (!(su.unit == gzb::quad(3, 0, 2)) || su.u_exp != -1 || !su.factors.empty())
        fail.note("s(u) != 3/u");
    return {4, "triangular action and tilde involutions", !fail.failed,
            fail.failed ? fail.witness : "100 random instances over Q(sqrt(2)), c in {3,5,7}", 0};
}

// ------------------------------------------------------------------
// 5. Component maps: corestriction identities
// ------------------------------------------------------------------

IrredPoly rnd_self_tilde(Rng& rng, long long d, const Rational& c) {
    // u^2 + b u + c0 with c0 = c * unit^j (unit = 3+2sqrt(2), norm 1) and
    // b = y + conj(y) c0 / c, which forces conj(b) = b c / c0.
    const QuadElem unit = gzb::quad(3, 2, d);
    for (int attempt = 0; attempt < 200; ++attempt) {
        int j = static_cast<int>(rng() % 3) - 1;
        QuadElem c0 = QuadElem(c, Rational(0), d) * unit.pow(j);
        QuadElem y = rnd_quad(rng, d, 3);
        QuadElem b = y + y.conj() * c0 / QuadElem(c, Rational(0), d);
        try {
            IrredPoly p(QuadPoly({c0, b, QuadElem::one(d)}, d));
            if (gzb::kummer::is_self_tilde(p, c)) return p;
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::logic_error("could not build a self-tilde instance");
}

Char2P rnd_char_on(Rng& rng, const IrredPoly& p) {
    long long d = p.d();
    for (int attempt = 0; attempt < 200; ++attempt) {
        QuadPoly f = QuadPoly({rnd_quad(rng, d, 4), rnd_quad(rng, d, 2)}, d);
        try {
            return Char2P(p, f);
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::logic_error("could not build a character");
}

CriterionResult criterion_component_maps(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 5);
    const long long d = 2;
    const Rational c(3);
    int cor_checks = 0, family_checks = 0;
    for (int t = 0; t < 100 && !fail.failed; ++t) {
        IrredPoly p = rnd_self_tilde(rng, d, c);
        Char2P chi = rnd_char_on(rng, p);
        if (!gzb::kummer::cor_identity_check(chi, c)) fail.note("corestriction identity failed at " + chi.to_string());
        ++cor_checks;
        Char2P twice = gzb::kummer::s_pp_star(gzb::kummer::s_pp_star(chi, c), c);
        if (!gzb::kummer::same_class_mod(twice.f(), chi.f(), p)) fail.note("s_pp not an involution on classes");
        // a non-self-tilde pair instance
        IrredPoly q = rnd_irred(rng, d, 2);
        if (gzb::kummer::is_self_tilde(q, c)) continue;
        Char2P chiq = rnd_char_on(rng, q);
        if (!gzb::kummer::cor_identity_check(chiq, c)) fail.note("corestriction identity failed on a swapped pair");
        // sigma-fixedness of the total corestriction class on a family
        // satisfying the transport condition: a fixed character on u^2 - c
        // plus a swapped pair (chi_q, transport of chi_q)
        QuadElem total = QuadElem::one(d);
        Char2P chi_fixed(IrredPoly(QuadPoly({QuadElem(-c, Rational(0), d), QuadElem::zero(d), QuadElem::one(d)}, d)),
                         QuadPoly::monomial(d, 1, QuadElem::one(d)));
        if (auto e = gzb::kummer::cor_char(chi_fixed)) total = total * e->rep();
        Char2P moved = gzb::kummer::s_p_tilde_star(chiq, c);
        if (auto e1 = gzb::kummer::cor_char(chiq)) total = total * e1->rep();
        if (auto e2 = gzb::kummer::cor_char(moved)) total = total * e2->rep();
        if (!is_square(total * total.conj())) fail.note("total corestriction class not sigma-fixed");
        ++family_checks;
    }
    std::ostringstream detail;
    detail << cor_checks << " self-tilde instances, " << family_checks << " sigma-fixedness families";
    return {5, "corestriction component identities", !fail.failed, fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 6. Fixed/negated/swapped decomposition of divisible towers
// ------------------------------------------------------------------

IntMatrix rnd_involution(Rng& rng, std::size_t r) {
    // conjugate a diagonal of +-1 (or a signed permutation) by a random
    // unimodular matrix built from integer shears
    IntMatrix D(r, r);
    std::vector<std::size_t> perm(r);
    for (std::size_t i = 0; i < r; ++i) perm[i] = i;
    if (rng() % 2) {  // swap two slots to seed permutation blocks
        for (std::size_t i = 0; i + 1 < r; i += 2)
            if (rng() % 2) std::swap(perm[i], perm[i + 1]);
    }
    for (std::size_t i = 0; i < r; ++i) D.at(i, perm[i]) = (rng() % 2) ? 1 : -1;
    // ensure D itself is an involution: for permutation parts use +1 signs
    for (std::size_t i = 0; i < r; ++i)
        if (perm[i] != i) {
            D.at(i, perm[i]) = 1;
        }
    IntMatrix U = IntMatrix::identity(r), Uinv = IntMatrix::identity(r);
    for (int k = 0; k < 6; ++k) {
        std::size_t i = rng() % r, j = rng() % r;
        if (i == j) continue;
        Integer cshear = static_cast<long>(rng() % 3) - 1;
        if (cshear == 0) continue;
        // U <- E U (row op), Uinv <- Uinv E^{-1} (column op)
        for (std::size_t col = 0; col < r; ++col) U.at(i, col) += cshear * U.at(j, col);
        for (std::size_t row = 0; row < r; ++row) Uinv.at(row, j) -= cshear * Uinv.at(row, i);
    }
    return Uinv * D * U;
}

CriterionResult criterion_inp(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 6);
    long verified = 0;
    // exhaustive small-entry involutions for r <= 2 (and a filtered sweep at r = 3)
    for (std::size_t r = 1; r <= 2 && !fail.failed; ++r) {
        std::size_t cells = r * r;
        std::vector<long> v(cells, -2);
        for (;;) {
            IntMatrix M(r, r);
            for (std::size_t i = 0; i < cells; ++i) M.a[i] = v[i];
            if ((M * M).is_identity()) {
                auto dec = gzb::torsion::inp_decompose(M, 12);
                if (!gzb::torsion::verify_inp(dec, 10)) fail.note("verification failed for M=" + M.to_string());
                ++verified;
            }
            std::size_t i = 0;
            while (i < cells && ++v[i] > 2) {
                v[i] = -2;
                ++i;
            }
            if (i == cells || fail.failed) break;
        }
    }
    // r = 3: signed permutations plus shear conjugates (exhaustive over the
    // 48 signed permutation involutions, then random conjugates)
    {
        std::vector<std::size_t> perm{0, 1, 2};
        do {
            // permutation must be an involution
            bool inv = true;
            for (std::size_t i = 0; i < 3; ++i) inv = inv && perm[perm[i]] == i;
            if (!inv) continue;
            for (int smask = 0; smask < 8 && !fail.failed; ++smask) {
                IntMatrix M(3, 3);
                bool ok = true;
                for (std::size_t i = 0; i < 3; ++i) {
                    int sign = (smask >> i) & 1 ? -1 : 1;
                    M.at(i, perm[i]) = sign;
                }
                if (!(M * M).is_identity()) ok = false;
                if (!ok) continue;
                auto dec = gzb::torsion::inp_decompose(M, 12);
                if (!gzb::torsion::verify_inp(dec, 10)) fail.note("verification failed for M=" + M.to_string());
                ++verified;
            }
        } while (std::next_permutation(perm.begin(), perm.end()) && !fail.failed);
    }
    // random involutions up to rank 6
    for (int t = 0; t < 1000 && !fail.failed; ++t) {
        std::size_t r = 1 + (rng() % 6);
        IntMatrix M = rnd_involution(rng, r);
        if (!(M * M).is_identity()) {
            fail.note("generator produced a non-involution");
            break;
        }
        auto dec = gzb::torsion::inp_decompose(M, 12);
        if (!gzb::torsion::verify_inp(dec, 10)) fail.note("verification failed for M=" + M.to_string());
        ++verified;
    }
    // element-wise exhaustive reconstruction on the 2^4-torsion, r <= 2
    {
        IntMatrix swap2(2, 2);
        swap2.at(0, 1) = 1;
        swap2.at(1, 0) = 1;
        for (const IntMatrix& M : {IntMatrix::identity(2), swap2}) {
            auto dec = gzb::torsion::inp_decompose(M, 12);
            for (long x0 = 0; x0 < 16 && !fail.failed; ++x0)
                for (long x1 = 0; x1 < 16; ++x1) {
                    GroupElem v = GroupElem::zero(dec.desc);
                    v.set_pruefer(0, Dyadic(Integer(x0), 4));
                    v.set_pruefer(1, Dyadic(Integer(x1), 4));
                    if (!gzb::torsion::inp_reconstructs(dec, v, 4)) {
                        fail.note("reconstruction failed on the 2^4-torsion of M=" + M.to_string());
                        break;
                    }
                }
        }
    }
    return {6, "divisible decomposition under involutions", !fail.failed,
            fail.failed ? fail.witness : std::to_string(verified) + " involutions decomposed and verified at 2^10", 0};
}

// ------------------------------------------------------------------
// 7. Height / Ulm oracle equivalence
// ------------------------------------------------------------------

std::vector<GroupElem> summand_elements(const gzb::torsion::DescriptorPtr& desc, std::size_t i) {
    const SummandKind& s = desc->summands()[i];
    std::vector<GroupElem> out;
    GroupElem z = GroupElem::zero(desc);
    switch (s.tag) {
        case SummandKind::Tag::Cyclic: {
            long n = std::min(s.n, 6);
            for (long v = 0; v < (1L << n); ++v) {
                GroupElem e = z;
                e.set_cyclic(i, Integer(v) << (s.n - n));
                out.push_back(e);
            }
            break;
        }
        case SummandKind::Tag::Pruefer: {
            for (long v = 0; v < 8; ++v) {
                GroupElem e = z;
                e.set_pruefer(i, Dyadic(Integer(v), 3));
                out.push_back(e);
            }
            break;
        }
        case SummandKind::Tag::GenPruefer: {
            for (long a1 = 0; a1 < 2; ++a1)
                for (long a2 = 0; a2 < 4; ++a2)
                    for (long t = 0; t < (1L << std::min(s.n, 2)); ++t) {
                        GroupElem e = z;
                        if (a1) e.set_gen_a(i, 1, Integer(a1));
                        if (a2) e.set_gen_a(i, 2, Integer(a2));
                        if (t) e.set_gen_t(i, Integer(t) << (s.n - std::min(s.n, 2)));
                        out.push_back(e);
                    }
            break;
        }
    }
    return out;
}

CriterionResult criterion_height_ulm(const SelftestOptions&) {
    Failure fail;
    const std::vector<SummandKind> kinds{SummandKind::cyclic(1),      SummandKind::cyclic(2),
                                         SummandKind::cyclic(3),      SummandKind::cyclic(4),
                                         SummandKind::pruefer(),      SummandKind::gen_pruefer(1),
                                         SummandKind::gen_pruefer(2)};
    long element_checks = 0, ulm_checks = 0, descriptors = 0;
    // all multisets of size 1..4
    std::vector<std::vector<std::size_t>> multisets;
    for (std::size_t a = 0; a < kinds.size(); ++a) {
        multisets.push_back({a});
        for (std::size_t b = a; b < kinds.size(); ++b) {
            multisets.push_back({a, b});
            for (std::size_t c = b; c < kinds.size(); ++c) {
                multisets.push_back({a, b, c});
                for (std::size_t d2 = c; d2 < kinds.size(); ++d2) multisets.push_back({a, b, c, d2});
            }
        }
    }
    const int K = 12;
    for (const auto& ms : multisets) {
        if (fail.failed) break;
        ++descriptors;
        std::vector<SummandKind> sm;
        for (auto idx : ms) sm.push_back(kinds[idx]);
        auto desc = gzb::torsion::make_descriptor(sm);
        // element family: cartesian product of per-summand lists, strided to ~6000
        std::vector<std::vector<GroupElem>> lists;
        std::size_t total = 1;
        for (std::size_t i = 0; i < sm.size(); ++i) {
            lists.push_back(summand_elements(desc, i));
            total *= lists.back().size();
        }
        std::size_t stride = std::max<std::size_t>(1, total / 6000);
        for (std::size_t flat = 0; flat < total; flat += stride) {
            std::size_t rem = flat;
            GroupElem e = GroupElem::zero(desc);
            for (std::size_t i = 0; i < lists.size(); ++i) {
                const auto& opt = lists[i][rem % lists[i].size()];
                rem /= lists[i].size();
                e = gzb::torsion::elem_add(e, opt);
            }
            Ordinal sym = gzb::torsion::height(e);
            Ordinal orc = gzb::torsion::oracle_height(e, K);
            if (!(sym == orc)) {
                fail.note("height mismatch on " + e.to_string() + " in " + desc->to_string() + ": symbolic " +
                          sym.to_string() + ", oracle " + orc.to_string());
                break;
            }
            ++element_checks;
        }
        // Ulm invariants
        std::vector<Ordinal> lambdas;
        for (long m = 0; m <= 5; ++m) lambdas.push_back(Ordinal::finite(m));
        lambdas.push_back(Ordinal::omega_plus(0));
        lambdas.push_back(Ordinal::omega_plus(1));
        for (const auto& lam : lambdas) {
            long table = gzb::torsion::ulm_invariant(*desc, lam);
            long oracle = gzb::torsion::ulm_invariant_oracle(*desc, lam, 10);
            if (table != oracle) {
                fail.note("ulm mismatch at " + lam.to_string() + " on " + desc->to_string());
                break;
            }
            ++ulm_checks;
        }
    }
    std::ostringstream detail;
    detail << element_checks << " heights and " << ulm_checks << " Ulm values across " << descriptors
           << " descriptors";
    return {7, "height and Ulm invariants vs truncation oracle", !fail.failed,
            fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 8. Invariant-level constructions
// ------------------------------------------------------------------

CriterionResult criterion_constructions(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 8);
    const std::vector<long long> ds{2, -1, 5, 3};
    long beta_checks = 0, gamma_checks = 0;
    for (int t = 0; t < 200 && !fail.failed; ++t) {
        long long d = ds[rng() % ds.size()];
        // beta with zero archimedean part, supported on pairs + inert places
        BrauerElem beta = random_brauer(rng, d);
        long i = rnd_range(rng, 0, 4);
        std::map<PlaceL, Dyadic> zmap;
        BrauerElem oms = one_minus_sigma(beta);
        for (const auto& [pl, v] : oms.invariants()) {
            if (pl.kind != SplitKind::Split || pl.index != 0) continue;
            Dyadic z = v.div_pow2_canonical(i + 1) + Dyadic(Integer(rng() % 4), i + 1);
            zmap[pl] = z;
        }
        try {
            BrauerElem bi = gzb::brauer::construct_beta_i(beta, zmap, i);
            if (!(bi.times_pow2(i) == beta)) fail.note("2^i beta_i != beta");
            ++beta_checks;
            if (t % 4 == 0) {  // balancing-place independence
                BrauerElem bi2 = gzb::brauer::construct_beta_i(beta, zmap, i, 25);
                if (!(bi2.times_pow2(i) == beta)) fail.note("alternate balancing broke 2^i beta_i = beta");
            }
        } catch (const std::invalid_argument& e) {
            fail.note(std::string("construct_beta_i rejected a valid instance: ") + e.what());
        }
        // gamma' sigma-negated on pairs
        std::map<PlaceL, Dyadic> gm;
        Integer p = 2;
        int want = 1 + static_cast<int>(rng() % 2);
        while (want > 0) {
            PlaceQ base = PlaceQ::prime(p);
            if (gzb::brauer::splitting_type(base, d) == SplitKind::Split) {
                Dyadic v(Integer(rng() % 8), rnd_range(rng, 1, 3));
                if (!v.is_zero()) {
                    gm[gzb::brauer::place_over(base, d, 0)] = v;
                    gm[gzb::brauer::place_over(base, d, 1)] = -v;
                }
                --want;
            }
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        }
        BrauerElem gp(d, gm);
        BrauerElem g = gzb::brauer::construct_gamma(gp);
        if (g.order_exponent() > gp.order_exponent()) fail.note("order grew in construct_gamma");
        ++gamma_checks;
    }
    std::ostringstream detail;
    detail << beta_checks << " beta_i and " << gamma_checks << " gamma constructions verified";
    return {8, "invariant-level division constructions", !fail.failed,
            fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 9. Tower machinery
// ------------------------------------------------------------------

CriterionResult criterion_towers(const SelftestOptions& opts) {
    Failure fail;
    Rng rng(opts.seed + 9);
    long fixed_checks = 0, lift_checks = 0;
    for (int t = 0; t < 100 && !fail.failed; ++t) {
        // fixed-condition towers on a rank-2 domain
        auto dom = gzb::torsion::make_descriptor(
            std::vector<SummandKind>(2, SummandKind::pruefer()));
        int depth = 12;
        GroupElem top = GroupElem::zero(dom);
        for (std::size_t i2 = 0; i2 < 2; ++i2)
            top.set_pruefer(i2, Dyadic(Integer(rng() % 8), 2 + depth + 1));
        Tower chi;
        for (int i2 = 0; i2 <= depth + 1; ++i2)
            chi.entries.push_back(gzb::torsion::mul_pow2(top, depth + 1 - i2));
        auto tgt = gzb::torsion::INPTargets::make(1, 1, 1);
        gzb::torsion::CorTable cor;
        cor.mat = IntMatrix(4, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            cor.mat.at(0, j) = rnd_range(rng, -2, 2);  // I row free
            Integer pv = rnd_range(rng, -2, 2);        // P rows duplicated
            cor.mat.at(2, j) = pv;
            cor.mat.at(3, j) = pv;                     // N row stays zero
        }
        try {
            auto ft = gzb::torsion::build_fixed_tower(cor, tgt, chi, depth);
            if (!gzb::torsion::verify_tower(ft.u_part, ft.u_part.size() - 1)) fail.note("u-part tower law");
            ++fixed_checks;
        } catch (const std::exception& e) {
            fail.note(std::string("build_fixed_tower failed: ") + e.what());
        }
        // lifting through an exponent-2 kernel
        auto dsc = gzb::torsion::make_descriptor(
            {SummandKind::cyclic(1), SummandKind::pruefer(), SummandKind::pruefer()});
        auto cod = gzb::torsion::make_descriptor(std::vector<SummandKind>(2, SummandKind::pruefer()));
        gzb::torsion::QuotientModel model{dsc, cod, IntMatrix(2, 3)};
        model.map.at(0, 1) = 1;
        model.map.at(1, 2) = 1;
        model.map.at(0, 0) = static_cast<long>(rng() % 2);  // C1 feeds 2-torsion only
        model.validate();
        GroupElem alpha = GroupElem::zero(dsc);
        alpha.set_cyclic(0, Integer(rng() % 2));
        alpha.set_pruefer(1, Dyadic(Integer(rng() % 16), 4));
        alpha.set_pruefer(2, Dyadic(Integer(rng() % 16), 4));
        GroupElem down0 = model.apply(alpha);
        Tower down;
        int ldepth = 16;
        for (int i2 = 0; i2 <= ldepth + 1; ++i2) {
            GroupElem e = GroupElem::zero(cod);
            for (std::size_t j = 0; j < 2; ++j) {
                Dyadic v = std::get<Dyadic>(down0.coords()[j]);
                e.set_pruefer(j, v.div_pow2_canonical(i2));
            }
            down.entries.push_back(e);
        }
        try {
            Tower lifted = gzb::torsion::lift_tower(model, alpha, down, ldepth);
            if (!gzb::torsion::verify_tower(lifted, lifted.size() - 1)) fail.note("lifted tower law");
            ++lift_checks;
        } catch (const std::exception& e) {
            fail.note(std::string("lift_tower failed: ") + e.what());
        }
    }
    std::ostringstream detail;
    detail << fixed_checks << " fixed-condition towers, " << lift_checks << " lifts, depth 16";
    return {9, "tower construction and lifting", !fail.failed, fail.failed ? fail.witness : detail.str(), 0};
}

// ------------------------------------------------------------------
// 10. End-to-end verdicts
// ------------------------------------------------------------------

CriterionResult criterion_verdicts(const SelftestOptions&) {
    Failure fail;
    auto expect = [&](const Rational& c, const Rational& d, Verdict v) {
        auto res = run_check(c, d);
        if (res.verdict != v)
            fail.note("verdict for (" + gzb::to_string(c) + "," + gzb::to_string(d) + ") was " + to_string(res.verdict));
        if (!replay_certificate(res.certificate))
            fail.note("certificate replay failed for (" + gzb::to_string(c) + "," + gzb::to_string(d) + ")");
        return res;
    };
    auto r32 = expect(Rational(3), Rational(2), Verdict::IsomorphicToBrQt);
    std::set<std::string> wit;
    for (const auto& w : r32.witnesses) wit.insert(w.to_string());
    if (wit != std::set<std::string>{"2", "3"}) fail.note("witness set for (3,2) is not {2,3}");
    expect(Rational(1), Rational(2), Verdict::RationalConic);
    expect(Rational(3), Rational(5), Verdict::OutOfScope);
    if (gzb::kummer::w_membership(gzb::quad(2, 1, 2)) != gzb::kummer::WClass::Cyclic4)
        fail.note("2+sqrt(2) is not classified cyclic quartic");
    return {10, "end-to-end verdicts and certificate replay", !fail.failed,
            fail.failed ? fail.witness : "3 verdicts, witness set {2,3}, certificates replayed", 0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SelftestOptions& opts) {
    using Fn = CriterionResult (*)(const SelftestOptions&);
    const std::vector<Fn> fns{criterion_hilbert,      criterion_conic,        criterion_galois_action,
                              criterion_factored_action, criterion_component_maps, criterion_inp,
                              criterion_height_ulm,   criterion_constructions, criterion_towers,
                              criterion_verdicts};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        int idx = static_cast<int>(i) + 1;
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), idx) == opts.only.end()) continue;
        auto start = Clock::now();
        CriterionResult r;
        try {
            r = fns[i](opts);
        } catch (const std::exception& e) {
            r = {idx, "criterion " + std::to_string(idx), false, std::string("exception: ") + e.what(), 0};
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

bool all_passed(const std::vector<CriterionResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CriterionResult& r) { return r.pass; });
}

nlohmann::ordered_json acceptance_report_json(const std::vector<CriterionResult>& rs) {
    nlohmann::ordered_json out;
    out["criteria"] = nlohmann::ordered_json::array();
    for (const auto& r : rs)
        out["criteria"].push_back({{"index", r.index},
                                   {"name", r.name},
                                   {"pass", r.pass},
                                   {"detail", r.detail},
                                   {"seconds", r.seconds}});
    out["all_passed"] = all_passed(rs);
    return out;
}

}  // namespace gzb::harness
