#include "gzb/truncation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gzb::torsion {

namespace {

Integer pow2(long k) { return Integer(1) << k; }

Integer mod_pow2(const Integer& v, long k) {
    Integer m = pow2(k), r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

TruncatedGroup::TruncatedGroup(DescriptorPtr desc, int K) : desc_(std::move(desc)), K_(K) {
    if (K_ < 2) throw std::invalid_argument("truncation level must be >= 2");
    for (const auto& s : desc_->summands()) {
        summand_base_.push_back(exps_.size());
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: exps_.push_back(s.n); break;
            case SummandKind::Tag::Pruefer: exps_.push_back(K_); break;
            case SummandKind::Tag::GenPruefer:
                for (int k = 1; k < K_; ++k) exps_.push_back(k);
                exps_.push_back(K_ + s.n);
                break;
        }
    }
}

std::vector<Integer> TruncatedGroup::to_coords(const GroupElem& x) const {
    if (!(*x.descriptor() == *desc_)) throw std::invalid_argument("descriptor mismatch");
    std::vector<Integer> out(exps_.size(), Integer(0));
    for (std::size_t i = 0; i < desc_->size(); ++i) {
        const auto& s = desc_->summands()[i];
        std::size_t base = summand_base_[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: out[base] = std::get<Integer>(x.coords()[i]); break;
            case SummandKind::Tag::Pruefer: {
                const Dyadic& v = std::get<Dyadic>(x.coords()[i]);
                if (v.exponent() > K_) throw std::invalid_argument("element order exceeds truncation level");
                out[base] = v.numerator() << (K_ - v.exponent());
                break;
            }
            case SummandKind::Tag::GenPruefer: {
                // g = sum a_k e_k + t x  with  e_k = f_k + 2^(K-k) e_K  (k < K)
                // so the e_K coordinate collects a_K + sum_{k<K} a_k 2^(K-k) + t 2^K.
                const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
                Integer top = mod_pow2(g.t, s.n) << K_;
                for (const auto& [k, v] : g.a) {
                    if (k > K_) throw std::invalid_argument("GenPruefer support exceeds truncation level");
                    if (k < K_) {
                        out[base + static_cast<std::size_t>(k) - 1] = v;
                        top += v << (K_ - k);
                    } else {
                        top += v;
                    }
                }
                out[base + static_cast<std::size_t>(K_) - 1] = mod_pow2(top, K_ + s.n);
                break;
            }
        }
    }
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod_pow2(out[j], exps_[j]);
    return out;
}

GroupElem TruncatedGroup::from_coords(const std::vector<Integer>& coords) const {
    if (coords.size() != exps_.size()) throw std::invalid_argument("coordinate count mismatch");
    GroupElem e = GroupElem::zero(desc_);
    for (std::size_t i = 0; i < desc_->size(); ++i) {
        const auto& s = desc_->summands()[i];
        std::size_t base = summand_base_[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: e.set_cyclic(i, coords[base]); break;
            case SummandKind::Tag::Pruefer: e.set_pruefer(i, Dyadic(coords[base], K_)); break;
            case SummandKind::Tag::GenPruefer: {
                // invert: coordinate c_k multiplies f_k = e_k - 2^(K-k) e_K
                Integer ek_coeff = coords[base + static_cast<std::size_t>(K_) - 1];
                for (int k = 1; k < K_; ++k) {
                    const Integer& c = coords[base + static_cast<std::size_t>(k) - 1];
                    if (c != 0) ek_coeff -= c << (K_ - k);
                }
                // e_K coefficient decomposes as (a_K mod 2^K) + 2^K * t;
                // the top coordinate goes in first so later folds of
                // out-of-range a_k values accumulate into it
                Integer full = mod_pow2(ek_coeff, K_ + s.n);
                Integer aK = mod_pow2(full, K_);
                e.set_gen_t(i, (full - aK) >> K_);
                for (int k = 1; k < K_; ++k) {
                    const Integer& c = coords[base + static_cast<std::size_t>(k) - 1];
                    if (c != 0) e.set_gen_a(i, k, c);
                }
                if (aK != 0) e.set_gen_a(i, K_, aK);
                break;
            }
        }
    }
    return e;
}

std::optional<long> TruncatedGroup::height_in_truncation(const GroupElem& x) const {
    auto coords = to_coords(x);
    // In Z/2^s, c is a 2^m-th multiple iff v2(c) >= min(m, s); zero always is.
    std::optional<long> h;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] == 0) continue;
        long m = valuation(coords[j], Integer(2));
        h = h ? std::min(*h, m) : m;
    }
    return h;
}

HeightBound height_bruteforce(const GroupElem& x, int K) {
    TruncatedGroup tg(x.descriptor(), K);
    auto h = tg.height_in_truncation(x);
    if (!h) return {false, K - 2, true};
    if (*h < K - 2) return {true, *h, false};
    return {false, K - 2, false};
}

namespace {

// x lies in the omega-th filtration layer iff every Cyclic coordinate and
// every GenPruefer e_k-part vanishes (Pruefer coordinates and top generators
// survive all finite multiplications).
bool in_omega_part(const GroupElem& x) {
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const auto& s = x.descriptor()->summands()[i];
        if (s.tag == SummandKind::Tag::Cyclic) {
            if (std::get<Integer>(x.coords()[i]) != 0) return false;
        } else if (s.tag == SummandKind::Tag::GenPruefer) {
            if (!std::get<GenPrueferCoord>(x.coords()[i]).a.empty()) return false;
        }
    }
    return true;
}

}  // namespace

Ordinal oracle_height(const GroupElem& x, int K) {
    if (in_omega_part(x)) {
        // refine by the top coordinates; Pruefer parts alone mean divisible
        std::optional<long> omega_j;
        for (std::size_t i = 0; i < x.coords().size(); ++i) {
            if (x.descriptor()->summands()[i].tag != SummandKind::Tag::GenPruefer) continue;
            const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
            if (g.t != 0) {
                long j = valuation(g.t, Integer(2));
                omega_j = omega_j ? std::min(*omega_j, j) : j;
            }
        }
        return omega_j ? Ordinal::omega_plus(*omega_j) : Ordinal::infinity();
    }
    HeightBound hb = height_bruteforce(x, K);
    if (!hb.certified)
        throw std::invalid_argument("oracle_height: finite height reaches the truncation margin; raise K");
    return Ordinal::finite(hb.value);
}

long ulm_invariant_oracle(const GroupDescriptor& g, const Ordinal& lambda, int K) {
    if (lambda.is_infinity()) throw std::invalid_argument("ulm_invariant_oracle at Infinity");
    // The truncated group is a direct sum of cyclics; its socle is spanned by
    // the coordinate socle generators 2^(s_j - 1), with height of a 0/1
    // combination the min over participants. So dim P(lambda) is the number
    // of generators of height >= lambda.
    auto desc = make_descriptor(g.summands());
    TruncatedGroup tg(desc, K);
    const auto& exps = tg.cyclic_exponents();
    // Socle generators sit well inside the truncation: when not in the
    // omega-part their truncated height is their exact height (the finite
    // part of the min always wins), so no stabilization margin is needed.
    auto gen_height = [&](std::size_t j) {
        std::vector<Integer> coords(exps.size(), Integer(0));
        coords[j] = pow2(exps[j] - 1);
        GroupElem g = tg.from_coords(coords);
        if (in_omega_part(g)) return oracle_height(g, K);
        auto h = tg.height_in_truncation(g);
        if (!h) throw std::logic_error("socle generator vanished in its own truncation");
        return Ordinal::finite(*h);
    };
    long count = 0;
    for (std::size_t j = 0; j < exps.size(); ++j)
        if (gen_height(j) == lambda) ++count;
    return count;
}

bool divisible_search(const GroupElem& x, int depth, int window, std::size_t cap) {
    std::set<GroupElem> frontier{x};
    for (int level = 0; level < depth; ++level) {
        std::set<GroupElem> next;
        for (const auto& v : frontier) {
            for (auto& h : halves(v, window)) next.insert(std::move(h));
            if (next.size() > cap) throw std::runtime_error("divisible_search: frontier cap exceeded");
        }
        if (next.empty()) return false;
        frontier = std::move(next);
    }
    return true;
}

}  // namespace gzb::torsion
