#include "gzb/lifting.hpp"

#include <stdexcept>

namespace gzb::torsion {

namespace {

long coord_cap(const SummandKind& s, int T) {
    switch (s.tag) {
        case SummandKind::Tag::Cyclic: return s.n;
        case SummandKind::Tag::Pruefer: return T;
        default: throw std::invalid_argument("QuotientModel supports Cyclic and Pruefer summands only");
    }
}

Dyadic coord_as_dyadic(const SummandKind& s, const Coord& c) {
    if (s.tag == SummandKind::Tag::Cyclic) return Dyadic(std::get<Integer>(c), s.n);
    if (s.tag == SummandKind::Tag::Pruefer) return std::get<Dyadic>(c);
    throw std::invalid_argument("QuotientModel supports Cyclic and Pruefer summands only");
}

void set_coord_from_dyadic(GroupElem& e, std::size_t i, const SummandKind& s, const Dyadic& v) {
    if (s.tag == SummandKind::Tag::Cyclic) {
        if (v.exponent() > s.n) throw std::invalid_argument("image leaves the cyclic summand");
        e.set_cyclic(i, v.numerator() << (s.n - v.exponent()));
    } else {
        e.set_pruefer(i, v);
    }
}

Dyadic scale_dyadic(const Integer& c, const Dyadic& v) {
    if (c == 0 || v.is_zero()) return Dyadic();
    Integer k = c < 0 ? Integer(-c) : c;
    Dyadic t(v.numerator() * k, v.exponent());
    return c < 0 ? -t : t;
}

}  // namespace

GroupElem QuotientModel::apply(const GroupElem& x) const {
    if (!(*x.descriptor() == *domain)) throw std::invalid_argument("QuotientModel: domain mismatch");
    GroupElem out = GroupElem::zero(codomain);
    for (std::size_t i = 0; i < codomain->size(); ++i) {
        Dyadic acc;
        for (std::size_t j = 0; j < domain->size(); ++j) {
            const Integer& c = map.at(i, j);
            if (c == 0) continue;
            acc = acc + scale_dyadic(c, coord_as_dyadic(domain->summands()[j], x.coords()[j]));
        }
        set_coord_from_dyadic(out, i, codomain->summands()[i], acc);
    }
    return out;
}

void QuotientModel::validate() const {
    if (map.rows != codomain->size() || map.cols != domain->size())
        throw std::invalid_argument("QuotientModel: matrix dimensions do not match descriptors");
    // well-defined: a Cyclic(n) generator 1/2^n must map into the codomain
    // (order dividing 2^n, and landing inside cyclic summand bounds)
    for (std::size_t j = 0; j < domain->size(); ++j) {
        GroupElem gen = GroupElem::zero(domain);
        const auto& s = domain->summands()[j];
        if (s.tag == SummandKind::Tag::Cyclic)
            gen.set_cyclic(j, Integer(1));
        else
            gen.set_pruefer(j, Dyadic(Integer(1), 8));  // spot order; Pruefer maps are always fine
        apply(gen);  // throws if ill-formed
        if (s.tag == SummandKind::Tag::Cyclic) {
            GroupElem img = apply(gen);
            if (!mul_pow2(img, s.n).is_zero())
                throw std::invalid_argument("QuotientModel: image order exceeds source order");
        }
    }
    // kernel exponent 2: scan the domain 4-torsion; an order-4 kernel element
    // would certify a kernel of exponent > 2 (any deeper kernel element has an
    // order-4 multiple also in the kernel).
    std::vector<std::vector<Coord>> coord_options;
    for (std::size_t j = 0; j < domain->size(); ++j) {
        const auto& s = domain->summands()[j];
        std::vector<Coord> opts;
        long cap = std::min<long>(2, coord_cap(s, 2));
        for (long v = 0; v < (1L << cap); ++v) {
            if (s.tag == SummandKind::Tag::Cyclic)
                opts.emplace_back(Integer(v) << (s.n - cap));
            else
                opts.emplace_back(Dyadic(Integer(v), cap));
        }
        coord_options.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(domain->size(), 0);
    for (;;) {
        GroupElem e = GroupElem::zero(domain);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const auto& s = domain->summands()[j];
            if (s.tag == SummandKind::Tag::Cyclic)
                e.set_cyclic(j, std::get<Integer>(coord_options[j][idx[j]]));
            else
                e.set_pruefer(j, std::get<Dyadic>(coord_options[j][idx[j]]));
        }
        if (apply(e).is_zero() && !mul_pow2(e, 1).is_zero())
            throw std::invalid_argument("QuotientModel: kernel has an element of order > 2");
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == coord_options[j].size()) {
            idx[j] = 0;
            ++j;
        }
        if (j == idx.size()) break;
    }
}

std::optional<GroupElem> preimage(const QuotientModel& m, const GroupElem& y, int T) {
    // Solve sum_j map[i][j] * x_j = y_i over Q/Z with x_j of denominator
    // dividing 2^cap_j. Scale to integers mod 2^T: unknowns z_j in Z/2^(cap_j),
    // equations sum_j map[i][j] 2^(T-cap_j) z_j = 2^T y_i (mod 2^T).
    std::vector<long> caps;
    for (const auto& s : m.domain->summands()) caps.push_back(coord_cap(s, T));
    Integer mod = Integer(1) << T;
    std::size_t rows = m.codomain->size(), cols = m.domain->size();
    // augmented matrix over Z/2^T
    std::vector<std::vector<Integer>> A(rows, std::vector<Integer>(cols + 1, Integer(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            Integer c = m.map.at(i, j) << (T - caps[j]);
            c %= mod;
            if (c < 0) c += mod;
            A[i][j] = c;
        }
        Dyadic yi = coord_as_dyadic(m.codomain->summands()[i], y.coords()[i]);
        if (yi.exponent() > T) return std::nullopt;
        Integer t = yi.numerator() << (T - yi.exponent());
        A[i][cols] = t % mod;
    }
    // Elimination over Z/2^T with global minimum-valuation pivot selection:
    // each step picks the remaining entry of least 2-adic valuation, so every
    // entry below it in unused rows is divisible by the pivot.
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col) in order
    for (;;) {
        long bestv = -1;
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_used[j] || A[i][j] == 0) continue;
                long v = valuation(A[i][j], Integer(2));
                if (bestv < 0 || v < bestv) {
                    bestv = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == rows) break;
        // normalize the pivot row so the pivot becomes exactly 2^bestv
        Integer odd = A[pi][pj] >> bestv, oddinv;
        mpz_invert(oddinv.get_mpz_t(), odd.get_mpz_t(), mod.get_mpz_t());
        for (auto& e : A[pi]) {
            e = e * oddinv % mod;
            if (e < 0) e += mod;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pi || row_used[i] || A[i][pj] == 0) continue;
            Integer f = (A[i][pj] >> bestv) % mod;
            for (std::size_t k = 0; k <= cols; ++k) {
                A[i][k] = (A[i][k] - f * A[pi][k]) % mod;
                if (A[i][k] < 0) A[i][k] += mod;
            }
        }
        row_used[pi] = true;
        col_used[pj] = true;
        pivots.emplace_back(pi, pj);
    }
    // rows without a pivot must have become fully zero with zero rhs
    for (std::size_t i = 0; i < rows; ++i) {
        if (row_used[i]) continue;
        for (std::size_t j = 0; j < cols; ++j)
            if (A[i][j] != 0) throw std::logic_error("preimage: elimination left a nonzero unused entry");
        if (A[i][cols] != 0) return std::nullopt;
    }
    // back-substitute in reverse pivot order; free variables zero. A pivot
    // row has zero coefficients at earlier pivot columns, so every term it
    // references is already known.
    std::vector<Integer> z(cols, Integer(0));
    for (std::size_t t2 = pivots.size(); t2-- > 0;) {
        auto [i, col] = pivots[t2];
        Integer rhs = A[i][cols];
        for (std::size_t k = 0; k < cols; ++k) {
            if (k == col) continue;
            rhs -= A[i][k] * z[k];
        }
        rhs %= mod;
        if (rhs < 0) rhs += mod;
        if (rhs == 0) {
            z[col] = 0;
            continue;
        }
        long v = valuation(A[i][col], Integer(2));
        if (valuation(rhs, Integer(2)) < v) return std::nullopt;
        z[col] = (rhs >> v) % mod;
    }
    // check + build element
    GroupElem x = GroupElem::zero(m.domain);
    for (std::size_t j = 0; j < cols; ++j) {
        const auto& s = m.domain->summands()[j];
        Integer val = z[j] % (Integer(1) << caps[j]);
        if (val < 0) val += Integer(1) << caps[j];
        if (s.tag == SummandKind::Tag::Cyclic)
            x.set_cyclic(j, val);
        else
            x.set_pruefer(j, Dyadic(val, caps[j]));
    }
    if (!(m.apply(x) == y)) return std::nullopt;
    return x;
}

Tower lift_tower(const QuotientModel& m, const GroupElem& alpha, const Tower& tower_down, int depth) {
    if (tower_down.size() < static_cast<std::size_t>(depth) + 2)
        throw std::invalid_argument("lift_tower: tower_down needs depth+2 entries");
    if (!verify_tower(tower_down, depth + 1)) throw std::invalid_argument("lift_tower: tower_down is not a tower");
    if (!(m.apply(alpha) == tower_down.entries[0]))
        throw std::invalid_argument("lift_tower: tower_down is not over phi(alpha)");
    // solve precision must cover the deepest tower entry
    int T = depth + 4;
    for (std::size_t n2 = 0; n2 <= static_cast<std::size_t>(depth) + 1; ++n2)
        for (std::size_t j = 0; j < m.codomain->size(); ++j)
            if (m.codomain->summands()[j].tag == SummandKind::Tag::Pruefer) {
                const Dyadic& v = std::get<Dyadic>(tower_down.entries[n2].coords()[j]);
                T = std::max(T, static_cast<int>(v.exponent()) + 3);
            }
    Tower out;
    for (int n = 0; n <= depth; ++n) {
        auto pre = preimage(m, tower_down.entries[static_cast<std::size_t>(n) + 1], T);
        if (!pre) throw std::invalid_argument("lift_tower: phi not surjective onto tower entry");
        out.entries.push_back(mul_pow2(*pre, 1));
    }
    // postconditions
    if (!verify_tower(out, out.size() - 1)) throw std::logic_error("lift_tower: lifted tower law failed");
    for (std::size_t n = 0; n < out.size(); ++n)
        if (!(m.apply(out.entries[n]) == tower_down.entries[n]))
            throw std::logic_error("lift_tower: phi compatibility failed");
    return out;
}

}  // namespace gzb::torsion
