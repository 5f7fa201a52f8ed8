#include "gzb/inp.hpp"

#include <algorithm>
#include <stdexcept>

namespace gzb::torsion {

namespace {

using F2Vec = std::vector<int>;  // 0/1 entries

F2Vec mat_apply_f2(const IntMatrix& m, const F2Vec& v) {
    F2Vec out(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        long acc = 0;
        for (std::size_t j = 0; j < m.cols; ++j)
            acc += static_cast<long>(mpz_odd_p(m.at(i, j).get_mpz_t()) ? 1 : 0) * v[j];
        out[i] = static_cast<int>(acc & 1);
    }
    return out;
}

std::size_t f2_pivot(const F2Vec& v) {
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    return p;
}

// Maintains rows in echelon form (distinct ascending pivots). Reduces w
// in place; returns true if w became zero (was in the span).
bool f2_reduce(const std::vector<F2Vec>& echelon, F2Vec& w) {
    for (const auto& r : echelon) {
        std::size_t p = f2_pivot(r);
        if (p < w.size() && w[p])
            for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= r[k];
    }
    return std::all_of(w.begin(), w.end(), [](int b) { return b == 0; });
}

void f2_insert(std::vector<F2Vec>& echelon, F2Vec w) {
    std::size_t p = f2_pivot(w);
    auto it = echelon.begin();
    while (it != echelon.end() && f2_pivot(*it) < p) ++it;
    echelon.insert(it, std::move(w));
}

std::vector<F2Vec> f2_echelon(const std::vector<F2Vec>& vecs) {
    std::vector<F2Vec> rows;
    for (const auto& v : vecs) {
        F2Vec w = v;
        if (!f2_reduce(rows, w)) f2_insert(rows, std::move(w));
    }
    return rows;
}

// Independent subset of the input, originals kept (first-come pivots).
std::vector<F2Vec> f2_basis(const std::vector<F2Vec>& vecs) {
    std::vector<F2Vec> rows, chosen;
    for (const auto& v : vecs) {
        F2Vec w = v;
        if (!f2_reduce(rows, w)) {
            f2_insert(rows, std::move(w));
            chosen.push_back(v);
        }
    }
    return chosen;
}

bool f2_in_span(const std::vector<F2Vec>& vecs, const F2Vec& v) {
    auto rows = f2_echelon(vecs);
    F2Vec w = v;
    return f2_reduce(rows, w);
}

// Dyadic vector (coordinates of (Q2/Z2)^r) as a GroupElem over desc.
GroupElem vec_to_elem(const DescriptorPtr& desc, const std::vector<Dyadic>& v) {
    GroupElem e = GroupElem::zero(desc);
    for (std::size_t i = 0; i < v.size(); ++i) e.set_pruefer(i, v[i]);
    return e;
}

// Tower over w inside the image of A on (Q2/Z2)^r. w must be expressed as
// A-image 2-torsion via the diagonalization: w = L (sum c_i e_i / 2) over
// the nonzero diagonal positions; entries alpha_j = L (sum c_i e_i / 2^(j+1)).
Tower tower_in_image(const DescriptorPtr& desc, const IntMatrix& L, const std::vector<int>& support_coords,
                     const F2Vec& c, int depth) {
    Tower t;
    for (int j = 0; j < depth; ++j) {
        std::vector<Dyadic> v(L.rows);
        for (std::size_t row = 0; row < L.rows; ++row) {
            Dyadic acc;
            for (std::size_t idx = 0; idx < support_coords.size(); ++idx) {
                if (!c[idx]) continue;
                std::size_t col = static_cast<std::size_t>(support_coords[idx]);
                Integer coeff = L.at(row, col);
                if (coeff == 0) continue;
                bool neg = coeff < 0;
                if (neg) coeff = -coeff;
                Dyadic term(coeff, j + 1);
                acc = acc + (neg ? -term : term);
            }
            v[row] = acc;
        }
        t.entries.push_back(vec_to_elem(desc, v));
    }
    return t;
}

// Tower over a plain 2-torsion vector inside the full group.
Tower tower_plain(const DescriptorPtr& desc, const F2Vec& v, int depth) {
    Tower t;
    for (int j = 0; j < depth; ++j) {
        std::vector<Dyadic> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) w[i] = Dyadic(Integer(1), j + 1);
        t.entries.push_back(vec_to_elem(desc, w));
    }
    return t;
}

}  // namespace

INPDecomposition inp_decompose(const IntMatrix& M, int depth) {
    if (M.rows != M.cols) throw std::invalid_argument("inp_decompose: square matrix required");
    if (!(M * M).is_identity()) throw std::invalid_argument("inp_decompose: matrix is not an involution");
    std::size_t r = M.rows;
    InvolutionSpec spec;
    spec.mat = M;
    auto desc = make_descriptor(std::vector<SummandKind>(r, SummandKind::pruefer()), spec);

    // 2-torsion V = F2^r with sigma acting via M mod 2.
    std::vector<F2Vec> unit_vecs;
    for (std::size_t i = 0; i < r; ++i) {
        F2Vec e(r, 0);
        e[i] = 1;
        unit_vecs.push_back(e);
    }
    // W = im(1+sigma) on V; V_P = preimages of a basis of W.
    std::vector<F2Vec> images, preimages;
    for (const auto& e : unit_vecs) {
        F2Vec im = mat_apply_f2(M, e);
        for (std::size_t k = 0; k < r; ++k) im[k] ^= e[k];
        images.push_back(im);
    }
    std::vector<F2Vec> w_basis;  // basis of W with matching preimages
    std::vector<F2Vec> vp_basis;
    {
        std::vector<F2Vec> seen;
        for (std::size_t i = 0; i < r; ++i) {
            if (std::all_of(images[i].begin(), images[i].end(), [](int b) { return !b; })) continue;
            if (!f2_in_span(f2_basis(seen), images[i])) {
                seen.push_back(images[i]);
                w_basis.push_back(images[i]);
                vp_basis.push_back(unit_vecs[i]);
            }
        }
    }
    std::vector<F2Vec> sigma_vp;
    for (const auto& v : vp_basis) sigma_vp.push_back(mat_apply_f2(M, v));

    // 2-torsion bases of the divisible images (1+sigma)M and (1-sigma)M via
    // integer diagonalization: nonzero diagonal columns of L = U^{-1}.
    auto image_2torsion = [&](const IntMatrix& A) {
        SmithResult s = smith_normal_form(A);
        std::vector<int> support;
        for (std::size_t i = 0; i < r && i < s.D.cols; ++i)
            if (s.D.at(i, i) != 0) support.push_back(static_cast<int>(i));
        std::vector<F2Vec> basis;
        for (int col : support) {
            F2Vec v(r, 0);
            for (std::size_t row = 0; row < r; ++row)
                v[row] = mpz_odd_p(s.Uinv.at(row, static_cast<std::size_t>(col)).get_mpz_t()) ? 1 : 0;
            basis.push_back(v);
        }
        return std::make_tuple(s.Uinv, support, basis);
    };
    IntMatrix plus = IntMatrix::identity(r) + M;
    IntMatrix minus = IntMatrix::identity(r) - M;
    auto [Lplus, sup_plus, tor_plus] = image_2torsion(plus);
    auto [Lminus, sup_minus, tor_minus] = image_2torsion(minus);

    // W_1: complement of (V_P + sigma V_P) ∩ im(1+sigma) inside the
    // 2-torsion of im(1+sigma); likewise W_{-1} on the minus side.
    auto complement_in = [&](const std::vector<F2Vec>& ambient_basis) {
        std::vector<F2Vec> pp;
        for (const auto& v : vp_basis) pp.push_back(v);
        for (const auto& v : sigma_vp) pp.push_back(v);
        auto ppb = f2_basis(pp);
        auto ambient_ech = f2_echelon(ambient_basis);
        // exhaustive span of pp filtered to the ambient subspace
        std::vector<F2Vec> inter_ech;
        std::size_t n = ppb.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            F2Vec v(r, 0);
            for (std::size_t b = 0; b < n; ++b)
                if (mask & (std::size_t(1) << b))
                    for (std::size_t k = 0; k < r; ++k) v[k] ^= ppb[b][k];
            F2Vec w = v;
            if (!f2_reduce(ambient_ech, w)) continue;  // outside the ambient span
            F2Vec u = v;
            if (!f2_reduce(inter_ech, u)) f2_insert(inter_ech, std::move(u));
        }
        // extend the intersection basis to the ambient span; the added
        // ambient vectors form the complement
        std::vector<F2Vec> acc = inter_ech, comp;
        for (const auto& v : ambient_basis) {
            F2Vec w = v;
            if (!f2_reduce(acc, w)) {
                f2_insert(acc, std::move(w));
                comp.push_back(v);
            }
        }
        return comp;
    };
    std::vector<F2Vec> w1 = complement_in(tor_plus);
    std::vector<F2Vec> wm1 = complement_in(tor_minus);

    // express a 2-torsion vector in the image as coefficients over the
    // diagonal support (solve L * (sum c_i e_i/2) = v over F2)
    auto coords_in_image = [&](const IntMatrix& L, const std::vector<int>& support, const F2Vec& v) {
        // F2 solve: columns of L (mod 2) restricted to support
        std::size_t n = support.size();
        std::vector<F2Vec> cols(n, F2Vec(r, 0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < r; ++i)
                cols[j][i] = mpz_odd_p(L.at(i, static_cast<std::size_t>(support[j])).get_mpz_t()) ? 1 : 0;
        // Gaussian elimination on [cols | v]
        std::vector<F2Vec> aug;
        for (std::size_t i = 0; i < r; ++i) {
            F2Vec row(n + 1, 0);
            for (std::size_t j = 0; j < n; ++j) row[j] = cols[j][i];
            row[n] = v[i];
            aug.push_back(row);
        }
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < aug.size(); ++col) {
            std::size_t sel = rank;
            while (sel < aug.size() && !aug[sel][col]) ++sel;
            if (sel == aug.size()) continue;
            std::swap(aug[sel], aug[rank]);
            for (std::size_t i2 = 0; i2 < aug.size(); ++i2)
                if (i2 != rank && aug[i2][col])
                    for (std::size_t k = 0; k <= n; ++k) aug[i2][k] ^= aug[rank][k];
            pivot_col.push_back(col);
            ++rank;
        }
        for (std::size_t i2 = rank; i2 < aug.size(); ++i2)
            if (aug[i2][n]) throw std::logic_error("coords_in_image: vector outside image 2-torsion");
        F2Vec c(n, 0);
        for (std::size_t i2 = 0; i2 < rank; ++i2) c[pivot_col[i2]] = aug[i2][n];
        return c;
    };

    INPDecomposition out;
    out.desc = desc;
    out.depth = depth;
    for (const auto& v : w1)
        out.I.push_back(tower_in_image(desc, Lplus, sup_plus, coords_in_image(Lplus, sup_plus, v), depth));
    for (const auto& v : wm1)
        out.N.push_back(tower_in_image(desc, Lminus, sup_minus, coords_in_image(Lminus, sup_minus, v), depth));
    for (const auto& v : vp_basis) {
        Tower t = tower_plain(desc, v, depth);
        Tower ct;
        for (const auto& e : t.entries) ct.entries.push_back(apply_action(e));
        out.P.emplace_back(std::move(t), std::move(ct));
    }
    return out;
}

namespace {

std::vector<const Tower*> all_towers(const INPDecomposition& dec) {
    std::vector<const Tower*> ts;
    for (const auto& t : dec.I) ts.push_back(&t);
    for (const auto& t : dec.N) ts.push_back(&t);
    for (const auto& [a, b] : dec.P) {
        ts.push_back(&a);
        ts.push_back(&b);
    }
    return ts;
}

// generator matrix mod 2^T: column g = coordinates (numerator scaled to
// denominator 2^T) of tower entry at depth T-1
IntMatrix generator_matrix(const INPDecomposition& dec, int T) {
    auto ts = all_towers(dec);
    std::size_t r = dec.desc->size();
    if (ts.size() != r) throw std::logic_error("generator count != rank");
    IntMatrix G(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        const GroupElem& e = ts[j]->entries.at(static_cast<std::size_t>(T - 1));
        for (std::size_t i = 0; i < r; ++i) {
            const Dyadic& v = std::get<Dyadic>(e.coords()[i]);
            if (v.exponent() > T) throw std::logic_error("generator exceeds 2^T-torsion");
            G.at(i, j) = v.numerator() << (T - v.exponent());
        }
    }
    return G;
}

// inverse of G mod 2^T (entries must form an odd-determinant matrix)
std::optional<IntMatrix> invert_mod_pow2(const IntMatrix& G, int T) {
    std::size_t n = G.rows;
    Integer mod = Integer(1) << T;
    IntMatrix A = G, inv = IntMatrix::identity(n);
    auto reduce = [&](Integer& x) {
        x %= mod;
        if (x < 0) x += mod;
    };
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && mpz_even_p(A.at(sel, col).get_mpz_t())) ++sel;
        if (sel == n) return std::nullopt;  // no odd pivot: not invertible
        if (sel != col)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(A.at(sel, k), A.at(col, k));
                std::swap(inv.at(sel, k), inv.at(col, k));
            }
        Integer pinv;
        mpz_invert(pinv.get_mpz_t(), A.at(col, col).get_mpz_t(), mod.get_mpz_t());
        for (std::size_t k = 0; k < n; ++k) {
            A.at(col, k) *= pinv;
            reduce(A.at(col, k));
            inv.at(col, k) *= pinv;
            reduce(inv.at(col, k));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || A.at(i, col) == 0) continue;
            Integer f = A.at(i, col);
            for (std::size_t k = 0; k < n; ++k) {
                A.at(i, k) -= f * A.at(col, k);
                reduce(A.at(i, k));
                inv.at(i, k) -= f * inv.at(col, k);
                reduce(inv.at(i, k));
            }
        }
    }
    return inv;
}

}  // namespace

bool verify_inp(const INPDecomposition& dec, int T) {
    for (const auto& t : dec.I) {
        if (!verify_tower(t, t.size() - 1)) return false;
        for (const auto& e : t.entries)
            if (!(apply_action(e) == e)) return false;
    }
    for (const auto& t : dec.N) {
        if (!verify_tower(t, t.size() - 1)) return false;
        for (const auto& e : t.entries)
            if (!(apply_action(e) == elem_neg(e))) return false;
    }
    for (const auto& [a, b] : dec.P) {
        if (!verify_tower(a, a.size() - 1) || !verify_tower(b, b.size() - 1)) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            if (!(apply_action(a.entries[i]) == b.entries[i])) return false;
            if (!(apply_action(b.entries[i]) == a.entries[i])) return false;
        }
    }
    if (dec.I.size() + dec.N.size() + 2 * dec.P.size() != dec.desc->size()) return false;
    if (T > dec.depth) return false;
    IntMatrix G = generator_matrix(dec, T);
    return invert_mod_pow2(G, T).has_value();
}

bool inp_reconstructs(const INPDecomposition& dec, const GroupElem& v, int T) {
    IntMatrix G = generator_matrix(dec, T);
    auto inv = invert_mod_pow2(G, T);
    if (!inv) return false;
    Integer mod = Integer(1) << T;
    std::size_t r = dec.desc->size();
    std::vector<Integer> target(r);
    for (std::size_t i = 0; i < r; ++i) {
        const Dyadic& x = std::get<Dyadic>(v.coords()[i]);
        if (x.exponent() > T) return false;
        target[i] = x.numerator() << (T - x.exponent());
    }
    std::vector<Integer> coef(r, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) coef[i] += inv->at(i, j) * target[j];
        coef[i] %= mod;
        if (coef[i] < 0) coef[i] += mod;
    }
    // rebuild: sum coef_j * generator_j
    auto ts = all_towers(dec);
    GroupElem acc = GroupElem::zero(dec.desc);
    for (std::size_t j = 0; j < r; ++j) {
        const GroupElem& g = ts[j]->entries.at(static_cast<std::size_t>(T - 1));
        // coef * g: repeated doubling on dyadic coordinates
        GroupElem term = GroupElem::zero(dec.desc);
        for (std::size_t i = 0; i < r; ++i) {
            const Dyadic& x = std::get<Dyadic>(g.coords()[i]);
            if (x.is_zero()) continue;
            term.set_pruefer(i, Dyadic(x.numerator() * coef[j], x.exponent()));
        }
        acc = elem_add(acc, term);
    }
    return acc == v;
}

// ---------------------------------------------------------------------------
// Fixed-condition towers
// ---------------------------------------------------------------------------

INPTargets INPTargets::make(std::size_t n_i, std::size_t n_n, std::size_t n_pairs) {
    std::size_t rank = n_i + n_n + 2 * n_pairs;
    InvolutionSpec spec;
    spec.tags.reserve(rank);
    INPTargets t;
    for (std::size_t k = 0; k < n_i; ++k) {
        t.i_idx.push_back(spec.tags.size());
        spec.tags.emplace_back(InvolutionSpec::Fixed{});
    }
    for (std::size_t k = 0; k < n_n; ++k) {
        t.n_idx.push_back(spec.tags.size());
        spec.tags.emplace_back(InvolutionSpec::Negated{});
    }
    for (std::size_t k = 0; k < n_pairs; ++k) {
        std::size_t a = spec.tags.size(), b = a + 1;
        t.p_pairs.emplace_back(a, b);
        spec.tags.emplace_back(InvolutionSpec::SwapPair{static_cast<int>(b)});
        spec.tags.emplace_back(InvolutionSpec::SwapPair{static_cast<int>(a)});
    }
    t.desc = make_descriptor(std::vector<SummandKind>(rank, SummandKind::pruefer()), spec);
    return t;
}

GroupElem CorTable::apply(const INPTargets& tgt, const GroupElem& x) const {
    std::size_t rows = mat.rows, cols = mat.cols;
    if (cols != x.descriptor()->size() || rows != tgt.desc->size())
        throw std::invalid_argument("CorTable: dimension mismatch");
    GroupElem out = GroupElem::zero(tgt.desc);
    for (std::size_t i = 0; i < rows; ++i) {
        Dyadic acc;
        for (std::size_t j = 0; j < cols; ++j) {
            const Dyadic& xj = std::get<Dyadic>(x.coords()[j]);
            Integer c = mat.at(i, j);
            if (c == 0 || xj.is_zero()) continue;
            bool neg = c < 0;
            if (neg) c = -c;
            Dyadic term(xj.numerator() * c, xj.exponent());
            acc = acc + (neg ? -term : term);
        }
        out.set_pruefer(i, acc);
    }
    return out;
}

namespace {

GroupElem project(const INPTargets& tgt, const GroupElem& x, const std::vector<std::size_t>& idxs) {
    GroupElem out = GroupElem::zero(tgt.desc);
    for (std::size_t i : idxs) out.set_pruefer(i, std::get<Dyadic>(x.coords()[i]));
    return out;
}

}  // namespace

FixedTower build_fixed_tower(const CorTable& cor, const INPTargets& target, const Tower& chi_neq, int depth) {
    if (chi_neq.size() < static_cast<std::size_t>(depth) + 1)
        throw std::invalid_argument("build_fixed_tower: input tower needs depth+1 entries");
    if (!verify_tower(chi_neq, depth)) throw std::invalid_argument("build_fixed_tower: input is not a tower");

    std::vector<std::size_t> phat;
    for (const auto& [a, b] : target.p_pairs) phat.push_back(a);

    // precompute -Cor(chi_(i)) and check sigma-invariance of the image
    std::vector<GroupElem> neg_cor;
    for (int i = 0; i <= depth; ++i) {
        GroupElem c = elem_neg(cor.apply(target, chi_neq.entries[static_cast<std::size_t>(i)]));
        if (!(apply_action(c) == c))
            throw std::invalid_argument("build_fixed_tower: corestriction image is not sigma-invariant");
        neg_cor.push_back(std::move(c));
    }

    FixedTower out;
    for (int i = 0; i < depth; ++i) {
        GroupElem ui = elem_add(project(target, neg_cor[static_cast<std::size_t>(i) + 1], target.i_idx),
                                project(target, neg_cor[static_cast<std::size_t>(i)], phat));
        out.u_part.entries.push_back(std::move(ui));
        out.neq_part.entries.push_back(chi_neq.entries[static_cast<std::size_t>(i)]);
    }
    // postconditions
    if (!verify_tower(out.u_part, out.u_part.size() - 1)) throw std::logic_error("u-part tower law failed");
    for (std::size_t i = 0; i < out.u_part.size(); ++i) {
        GroupElem lhs = elem_add(out.u_part.entries[i], apply_action(out.u_part.entries[i]));
        if (!(lhs == neg_cor[i])) throw std::logic_error("fixed condition (1+sigma)u = -Cor chi failed");
    }
    return out;
}

}  // namespace gzb::torsion
