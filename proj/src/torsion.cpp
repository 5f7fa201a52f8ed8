#include "gzb/torsion.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gzb::torsion {

SummandKind SummandKind::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("Cyclic summand needs n >= 1");
    return {Tag::Cyclic, n};
}

SummandKind SummandKind::gen_pruefer(int n) {
    if (n < 1) throw std::invalid_argument("GenPruefer summand needs n >= 1");
    return {Tag::GenPruefer, n};
}

std::string SummandKind::to_string() const {
    switch (tag) {
        case Tag::Cyclic: return "C" + std::to_string(n);
        case Tag::Pruefer: return "P";
        default: return "G" + std::to_string(n);
    }
}

GroupDescriptor::GroupDescriptor(std::vector<SummandKind> summands, std::optional<InvolutionSpec> action)
    : summands_(std::move(summands)), action_(std::move(action)) {
    validate();
}

bool GroupDescriptor::all_pruefer() const {
    return std::all_of(summands_.begin(), summands_.end(),
                       [](const SummandKind& s) { return s.tag == SummandKind::Tag::Pruefer; });
}

long GroupDescriptor::divisible_rank() const {
    long r = 0;
    for (const auto& s : summands_)
        if (s.tag == SummandKind::Tag::Pruefer) ++r;
    return r;
}

void GroupDescriptor::validate() const {
    if (!action_) return;
    const InvolutionSpec& spec = *action_;
    if (spec.is_matrix()) {
        if (!all_pruefer()) throw std::invalid_argument("matrix involution requires an all-Pruefer descriptor");
        const IntMatrix& m = *spec.mat;
        if (m.rows != summands_.size() || m.cols != summands_.size())
            throw std::invalid_argument("involution matrix has wrong dimensions");
        if (!(m * m).is_identity()) throw std::invalid_argument("involution matrix must square to the identity");
        return;
    }
    if (spec.tags.size() != summands_.size())
        throw std::invalid_argument("involution tags must cover every summand");
    for (std::size_t i = 0; i < spec.tags.size(); ++i) {
        if (const auto* sw = std::get_if<InvolutionSpec::SwapPair>(&spec.tags[i])) {
            std::size_t j = static_cast<std::size_t>(sw->partner);
            if (j >= summands_.size() || j == i) throw std::invalid_argument("swap partner out of range");
            const auto* back = std::get_if<InvolutionSpec::SwapPair>(&spec.tags[j]);
            if (!back || static_cast<std::size_t>(back->partner) != i)
                throw std::invalid_argument("swap pairs must be mutual");
            if (!(summands_[i] == summands_[j]))
                throw std::invalid_argument("swap partners must have equal summand kinds");
        }
    }
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
    if (summands_.size() != o.summands_.size()) return false;
    for (std::size_t i = 0; i < summands_.size(); ++i)
        if (!(summands_[i] == o.summands_[i])) return false;
    return true;  // action is bookkeeping, not group structure
}

std::string GroupDescriptor::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < summands_.size(); ++i) {
        if (i) s += "+";
        s += summands_[i].to_string();
    }
    if (action_) {
        s += " | ";
        if (action_->is_matrix()) {
            s += "matrix " + action_->mat->to_string();
        } else {
            bool first = true;
            std::vector<bool> done(summands_.size(), false);
            for (std::size_t i = 0; i < action_->tags.size(); ++i) {
                if (done[i]) continue;
                if (!first) s += ",";
                first = false;
                if (std::holds_alternative<InvolutionSpec::Fixed>(action_->tags[i]))
                    s += "fixed";
                else if (std::holds_alternative<InvolutionSpec::Negated>(action_->tags[i]))
                    s += "neg";
                else {
                    int j = std::get<InvolutionSpec::SwapPair>(action_->tags[i]).partner;
                    s += "swap(" + std::to_string(i) + "," + std::to_string(j) + ")";
                    done[static_cast<std::size_t>(j)] = true;
                }
                done[i] = true;
            }
        }
    }
    return s;
}

DescriptorPtr make_descriptor(std::vector<SummandKind> summands, std::optional<InvolutionSpec> action) {
    return std::make_shared<const GroupDescriptor>(std::move(summands), std::move(action));
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

namespace {

Integer pow2(long k) { return Integer(1) << k; }

Integer mod_pow2(const Integer& v, long k) {
    Integer m = pow2(k), r = v % m;
    if (r < 0) r += m;
    return r;
}

void normalize_gen(GenPrueferCoord& g, int n) {
    Integer carry = 0;
    for (auto it = g.a.begin(); it != g.a.end();) {
        int k = it->first;
        if (k < 1) throw std::invalid_argument("GenPruefer index must be >= 1");
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), it->second.get_mpz_t(), pow2(k).get_mpz_t());
        carry += q;  // 2^k e_k = x
        it->second = r;
        if (it->second == 0)
            it = g.a.erase(it);
        else
            ++it;
    }
    g.t = mod_pow2(g.t + carry, n);
}

}  // namespace

GroupElem GroupElem::zero(DescriptorPtr desc) {
    GroupElem e;
    e.desc_ = std::move(desc);
    for (const auto& s : e.desc_->summands()) {
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: e.coords_.emplace_back(Integer(0)); break;
            case SummandKind::Tag::Pruefer: e.coords_.emplace_back(Dyadic()); break;
            case SummandKind::Tag::GenPruefer: e.coords_.emplace_back(GenPrueferCoord{}); break;
        }
    }
    return e;
}

bool GroupElem::is_zero() const {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (const auto* c = std::get_if<Integer>(&coords_[i])) {
            if (*c != 0) return false;
        } else if (const auto* p = std::get_if<Dyadic>(&coords_[i])) {
            if (!p->is_zero()) return false;
        } else {
            const auto& g = std::get<GenPrueferCoord>(coords_[i]);
            if (!g.a.empty() || g.t != 0) return false;
        }
    }
    return true;
}

void GroupElem::set_cyclic(std::size_t i, Integer residue) {
    const auto& s = desc_->summands().at(i);
    if (s.tag != SummandKind::Tag::Cyclic) throw std::invalid_argument("summand is not cyclic");
    coords_.at(i) = mod_pow2(residue, s.n);
}

void GroupElem::set_pruefer(std::size_t i, Dyadic v) {
    if (desc_->summands().at(i).tag != SummandKind::Tag::Pruefer)
        throw std::invalid_argument("summand is not Pruefer");
    coords_.at(i) = std::move(v);
}

void GroupElem::set_gen_a(std::size_t i, int k, Integer v) {
    const auto& s = desc_->summands().at(i);
    if (s.tag != SummandKind::Tag::GenPruefer) throw std::invalid_argument("summand is not GenPruefer");
    auto g = std::get<GenPrueferCoord>(coords_.at(i));
    g.a[k] = std::move(v);
    normalize_gen(g, s.n);
    coords_.at(i) = std::move(g);
}

void GroupElem::set_gen_t(std::size_t i, Integer v) {
    const auto& s = desc_->summands().at(i);
    if (s.tag != SummandKind::Tag::GenPruefer) throw std::invalid_argument("summand is not GenPruefer");
    auto g = std::get<GenPrueferCoord>(coords_.at(i));
    g.t = std::move(v);
    normalize_gen(g, s.n);
    coords_.at(i) = std::move(g);
}

bool GroupElem::operator==(const GroupElem& o) const {
    if (!(*desc_ == *o.desc_)) throw std::invalid_argument("descriptor mismatch");
    return coords_ == o.coords_;
}

bool GroupElem::operator<(const GroupElem& o) const {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == o.coords_[i]) continue;
        const auto& x = coords_[i];
        const auto& y = o.coords_[i];
        if (const auto* cx = std::get_if<Integer>(&x)) return *cx < std::get<Integer>(y);
        if (const auto* px = std::get_if<Dyadic>(&x)) return *px < std::get<Dyadic>(y);
        const auto& gx = std::get<GenPrueferCoord>(x);
        const auto& gy = std::get<GenPrueferCoord>(y);
        if (gx.t != gy.t) return gx.t < gy.t;
        return gx.a < gy.a;
    }
    return false;
}

std::string GroupElem::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        if (const auto* c = std::get_if<Integer>(&coords_[i]))
            os << c->get_str();
        else if (const auto* p = std::get_if<Dyadic>(&coords_[i]))
            os << p->to_string();
        else {
            const auto& g = std::get<GenPrueferCoord>(coords_[i]);
            os << "{";
            bool first = true;
            for (const auto& [k, v] : g.a) {
                if (!first) os << ",";
                first = false;
                os << "e" << k << ":" << v.get_str();
            }
            if (!first) os << ",";
            os << "x:" << g.t.get_str() << "}";
        }
    }
    os << ")";
    return os.str();
}

void GroupElem::normalize() {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const auto& s = desc_->summands()[i];
        if (s.tag == SummandKind::Tag::Cyclic)
            coords_[i] = mod_pow2(std::get<Integer>(coords_[i]), s.n);
        else if (s.tag == SummandKind::Tag::GenPruefer) {
            auto g = std::get<GenPrueferCoord>(coords_[i]);
            normalize_gen(g, s.n);
            coords_[i] = std::move(g);
        }
    }
}

GroupElem elem_add(const GroupElem& x, const GroupElem& y) {
    if (!(*x.desc_ == *y.desc_)) throw std::invalid_argument("descriptor mismatch");
    GroupElem r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) {
        const auto& s = x.desc_->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic:
                r.coords_[i] = mod_pow2(std::get<Integer>(x.coords_[i]) + std::get<Integer>(y.coords_[i]), s.n);
                break;
            case SummandKind::Tag::Pruefer:
                r.coords_[i] = std::get<Dyadic>(x.coords_[i]) + std::get<Dyadic>(y.coords_[i]);
                break;
            case SummandKind::Tag::GenPruefer: {
                GenPrueferCoord g = std::get<GenPrueferCoord>(x.coords_[i]);
                const auto& h = std::get<GenPrueferCoord>(y.coords_[i]);
                for (const auto& [k, v] : h.a) g.a[k] += v;
                g.t += h.t;
                normalize_gen(g, s.n);
                r.coords_[i] = std::move(g);
                break;
            }
        }
    }
    return r;
}

GroupElem elem_neg(const GroupElem& x) {
    GroupElem r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) {
        const auto& s = x.desc_->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic:
                r.coords_[i] = mod_pow2(-std::get<Integer>(x.coords_[i]), s.n);
                break;
            case SummandKind::Tag::Pruefer:
                r.coords_[i] = -std::get<Dyadic>(x.coords_[i]);
                break;
            case SummandKind::Tag::GenPruefer: {
                GenPrueferCoord g = std::get<GenPrueferCoord>(x.coords_[i]);
                for (auto& [k, v] : g.a) v = -v;
                g.t = -g.t;
                normalize_gen(g, s.n);
                r.coords_[i] = std::move(g);
                break;
            }
        }
    }
    return r;
}

GroupElem elem_sub(const GroupElem& x, const GroupElem& y) { return elem_add(x, elem_neg(y)); }

GroupElem mul_pow2(const GroupElem& x, long j) {
    if (j < 0) throw std::invalid_argument("mul_pow2: negative power");
    GroupElem r = x;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) {
        const auto& s = x.desc_->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic:
                r.coords_[i] = mod_pow2(std::get<Integer>(x.coords_[i]) << j, s.n);
                break;
            case SummandKind::Tag::Pruefer:
                r.coords_[i] = std::get<Dyadic>(x.coords_[i]).times_pow2(j);
                break;
            case SummandKind::Tag::GenPruefer: {
                GenPrueferCoord g = std::get<GenPrueferCoord>(x.coords_[i]);
                for (auto& [k, v] : g.a) v <<= j;
                g.t <<= j;
                normalize_gen(g, s.n);
                r.coords_[i] = std::move(g);
                break;
            }
        }
    }
    return r;
}

std::vector<GroupElem> halves(const GroupElem& x, int window) {
    std::vector<GroupElem> out{GroupElem::zero(x.descriptor())};
    auto extend = [&](auto&& options_for_coord, std::size_t i) {
        std::vector<GroupElem> next;
        for (const auto& opt : options_for_coord) {
            for (const auto& partial : out) {
                GroupElem e = partial;
                e.coords_[i] = opt;
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    };
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const auto& s = x.descriptor()->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: {
                const Integer& v = std::get<Integer>(x.coords()[i]);
                if (mpz_odd_p(v.get_mpz_t())) return {};
                // y = v/2 and y + 2^(n-1), always distinct mod 2^n
                std::vector<Coord> opts{mod_pow2(v / 2, s.n), mod_pow2(v / 2 + pow2(s.n - 1), s.n)};
                extend(opts, i);
                break;
            }
            case SummandKind::Tag::Pruefer: {
                auto [h0, h1] = std::get<Dyadic>(x.coords()[i]).halves();
                std::vector<Coord> opts{h0, h1};
                extend(opts, i);
                break;
            }
            case SummandKind::Tag::GenPruefer: {
                const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
                int maxk = 0;
                for (const auto& [k, v] : g.a) maxk = std::max(maxk, k);
                int w = window >= 1 ? window : maxk + 1;
                w = std::max(w, maxk);
                // every a_k must be even; choices b_k in {a_k/2, a_k/2 + 2^(k-1)}
                for (const auto& [k, v] : g.a)
                    if (mpz_odd_p(v.get_mpz_t())) return {};
                std::vector<GenPrueferCoord> parts{GenPrueferCoord{}};
                std::vector<int> carries{0};
                for (int k = 1; k <= w; ++k) {
                    Integer base = 0;
                    if (auto it = g.a.find(k); it != g.a.end()) base = it->second / 2;
                    std::vector<GenPrueferCoord> nparts;
                    std::vector<int> ncarries;
                    for (std::size_t t = 0; t < parts.size(); ++t) {
                        // b_k in {a_k/2, a_k/2 + 2^(k-1)}; doubling the latter
                        // overflows 2^k e_k = x, contributing a carry into t
                        for (int choice = 0; choice < 2; ++choice) {
                            GenPrueferCoord q = parts[t];
                            Integer b = base + (choice ? pow2(k - 1) : 0);
                            if (b != 0) q.a[k] = b;
                            nparts.push_back(std::move(q));
                            ncarries.push_back(carries[t] + (choice ? 1 : 0));
                        }
                    }
                    parts = std::move(nparts);
                    carries = std::move(ncarries);
                }
                std::vector<Coord> opts;
                for (std::size_t t = 0; t < parts.size(); ++t) {
                    // t-coordinate: need 2 s + carry = g.t mod 2^n
                    Integer target = g.t - carries[t];
                    if (mpz_odd_p(target.get_mpz_t())) continue;
                    GenPrueferCoord q = parts[t];
                    q.t = mod_pow2(target / 2, s.n);
                    GenPrueferCoord q2 = q;
                    q2.t = mod_pow2(q.t + pow2(s.n - 1), s.n);
                    opts.emplace_back(std::move(q));
                    opts.emplace_back(std::move(q2));
                }
                if (opts.empty()) return {};
                extend(opts, i);
                break;
            }
        }
    }
    // dedupe (GenPruefer option generation can repeat coordinates)
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Ordinal height(const GroupElem& x) {
    Ordinal h = Ordinal::infinity();
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const auto& s = x.descriptor()->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: {
                const Integer& v = std::get<Integer>(x.coords()[i]);
                if (v != 0) h = min(h, Ordinal::finite(valuation(v, Integer(2))));
                break;
            }
            case SummandKind::Tag::Pruefer:
                break;  // divisible: contributes Infinity
            case SummandKind::Tag::GenPruefer: {
                const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
                if (!g.a.empty()) {
                    // h = min over support of min(k-1, v2(a_k)): an element
                    // lies in 2^m G iff every supported index exceeds m and
                    // every a_k is divisible by 2^m.
                    long m = -1;
                    for (const auto& [k, v] : g.a) {
                        long cap = std::min<long>(k - 1, valuation(v, Integer(2)));
                        m = (m < 0) ? cap : std::min(m, cap);
                    }
                    h = min(h, Ordinal::finite(m));
                } else if (g.t != 0) {
                    h = min(h, Ordinal::omega_plus(valuation(g.t, Integer(2))));
                }
                break;
            }
        }
    }
    return h;
}

bool in_divisible_subgroup(const GroupElem& x) {
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const auto& s = x.descriptor()->summands()[i];
        if (s.tag == SummandKind::Tag::Cyclic) {
            if (std::get<Integer>(x.coords()[i]) != 0) return false;
        } else if (s.tag == SummandKind::Tag::GenPruefer) {
            const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
            if (!g.a.empty() || g.t != 0) return false;
        }
    }
    return true;
}

long order_exponent(const GroupElem& x) {
    long e = 0;
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        const auto& s = x.descriptor()->summands()[i];
        switch (s.tag) {
            case SummandKind::Tag::Cyclic: {
                const Integer& v = std::get<Integer>(x.coords()[i]);
                if (v != 0) e = std::max(e, s.n - valuation(v, Integer(2)));
                break;
            }
            case SummandKind::Tag::Pruefer:
                e = std::max(e, std::get<Dyadic>(x.coords()[i]).order_exponent());
                break;
            case SummandKind::Tag::GenPruefer: {
                const auto& g = std::get<GenPrueferCoord>(x.coords()[i]);
                // 2^e must clear every e_k coefficient into x and kill the
                // accumulated top coordinate
                GenPrueferCoord w = g;
                long steps = 0;
                while (!w.a.empty() || w.t != 0) {
                    for (auto& [k, v] : w.a) v <<= 1;
                    w.t <<= 1;
                    normalize_gen(w, s.n);
                    ++steps;
                }
                e = std::max(e, steps);
                break;
            }
        }
    }
    return e;
}

long ulm_invariant(const GroupDescriptor& g, const Ordinal& lambda) {
    if (lambda.is_infinity()) throw std::invalid_argument("ulm_invariant at Infinity");
    long u = 0;
    for (const auto& s : g.summands()) {
        switch (s.tag) {
            case SummandKind::Tag::Cyclic:
                if (lambda == Ordinal::finite(s.n - 1)) ++u;
                break;
            case SummandKind::Tag::Pruefer:
                break;
            case SummandKind::Tag::GenPruefer:
                if (lambda.kind() == Ordinal::Kind::Finite) ++u;
                if (lambda == Ordinal::omega_plus(s.n - 1)) ++u;
                break;
        }
    }
    return u;
}

Ordinal ulm_length(const GroupDescriptor& g) {
    Ordinal len = Ordinal::finite(0);
    for (const auto& s : g.summands()) {
        switch (s.tag) {
            case SummandKind::Tag::Cyclic:
                len = std::max(len, Ordinal::finite(s.n), [](const Ordinal& a, const Ordinal& b) { return a < b; });
                break;
            case SummandKind::Tag::Pruefer:
                break;
            case SummandKind::Tag::GenPruefer:
                len = std::max(len, Ordinal::omega_plus(s.n), [](const Ordinal& a, const Ordinal& b) { return a < b; });
                break;
        }
    }
    return len;
}

GroupElem apply_action(const GroupElem& x) {
    const auto& desc = *x.descriptor();
    if (!desc.action()) throw std::invalid_argument("descriptor carries no involution");
    const InvolutionSpec& spec = *desc.action();
    GroupElem r = GroupElem::zero(x.descriptor());
    if (spec.is_matrix()) {
        const IntMatrix& m = *spec.mat;
        for (std::size_t i = 0; i < desc.size(); ++i) {
            Dyadic v;
            for (std::size_t j = 0; j < desc.size(); ++j) {
                const Dyadic& xj = std::get<Dyadic>(x.coords()[j]);
                if (m.at(i, j) == 0 || xj.is_zero()) continue;
                Integer c = m.at(i, j);
                bool neg = c < 0;
                if (neg) c = -c;
                Dyadic term(xj.numerator() * c, xj.exponent());
                v = v + (neg ? -term : term);
            }
            r.set_pruefer(i, v);
        }
        return r;
    }
    for (std::size_t i = 0; i < desc.size(); ++i) {
        if (std::holds_alternative<InvolutionSpec::Fixed>(spec.tags[i])) {
            r.coords_.at(i) = x.coords()[i];
        } else if (std::holds_alternative<InvolutionSpec::Negated>(spec.tags[i])) {
            GroupElem tmp = elem_neg(x);
            r.coords_.at(i) = tmp.coords()[i];
        } else {
            std::size_t j = static_cast<std::size_t>(std::get<InvolutionSpec::SwapPair>(spec.tags[i]).partner);
            r.coords_.at(i) = x.coords()[j];
        }
    }
    return r;
}

bool verify_tower(const Tower& t, std::size_t upto) {
    if (t.entries.empty()) return true;
    std::size_t last = std::min(upto, t.entries.size() - 1);
    for (std::size_t i = 0; i <= last; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(mul_pow2(t.entries[i], static_cast<long>(j)) == t.entries[i - j])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Descriptor grammar
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(std::size_t pos, const std::string& what) {
    throw std::invalid_argument("descriptor parse error at position " + std::to_string(pos) + ": " + what);
}

}  // namespace

GroupDescriptor parse_descriptor(const std::string& s) {
    std::string summand_part = s, action_part;
    if (auto bar = s.find('|'); bar != std::string::npos) {
        summand_part = s.substr(0, bar);
        action_part = s.substr(bar + 1);
    }
    std::vector<SummandKind> kinds;
    std::size_t i = 0;
    auto skip = [&](const std::string& str) {
        while (i < str.size() && std::isspace(static_cast<unsigned char>(str[i]))) ++i;
    };
    while (true) {
        skip(summand_part);
        if (i >= summand_part.size()) {
            if (kinds.empty()) parse_fail(i, "expected a summand");
            break;
        }
        char c = summand_part[i];
        if (c == 'P') {
            kinds.push_back(SummandKind::pruefer());
            ++i;
        } else if (c == 'C' || c == 'G') {
            std::size_t j = i + 1;
            while (j < summand_part.size() && std::isdigit(static_cast<unsigned char>(summand_part[j]))) ++j;
            if (j == i + 1) parse_fail(i, std::string("expected an integer after '") + c + "'");
            int n = std::stoi(summand_part.substr(i + 1, j - i - 1));
            kinds.push_back(c == 'C' ? SummandKind::cyclic(n) : SummandKind::gen_pruefer(n));
            i = j;
        } else {
            parse_fail(i, std::string("unexpected character '") + c + "'");
        }
        skip(summand_part);
        if (i < summand_part.size()) {
            if (summand_part[i] != '+') parse_fail(i, "expected '+'");
            ++i;
        }
    }
    if (action_part.empty()) return GroupDescriptor(std::move(kinds));

    // trim
    auto first = action_part.find_first_not_of(" \t");
    if (first == std::string::npos) parse_fail(s.size(), "empty action");
    action_part = action_part.substr(first);
    InvolutionSpec spec;
    if (action_part.rfind("matrix", 0) == 0) {
        std::string body = action_part.substr(6);
        // [[a,b],[c,d]]
        IntMatrix m;
        std::vector<std::vector<Integer>> rows;
        std::size_t k = 0;
        auto skipb = [&]() {
            while (k < body.size() && std::isspace(static_cast<unsigned char>(body[k]))) ++k;
        };
        skipb();
        if (k >= body.size() || body[k] != '[') parse_fail(k, "expected '[' in matrix");
        ++k;
        while (true) {
            skipb();
            if (k >= body.size() || body[k] != '[') parse_fail(k, "expected row '['");
            ++k;
            std::vector<Integer> row;
            while (true) {
                skipb();
                std::size_t j = k;
                if (j < body.size() && (body[j] == '-' || body[j] == '+')) ++j;
                while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
                if (j == k) parse_fail(k, "expected integer entry");
                row.emplace_back(body.substr(k, j - k));
                k = j;
                skipb();
                if (k < body.size() && body[k] == ',') {
                    ++k;
                    continue;
                }
                if (k < body.size() && body[k] == ']') {
                    ++k;
                    break;
                }
                parse_fail(k, "expected ',' or ']' in row");
            }
            rows.push_back(std::move(row));
            skipb();
            if (k < body.size() && body[k] == ',') {
                ++k;
                continue;
            }
            if (k < body.size() && body[k] == ']') {
                ++k;
                break;
            }
            parse_fail(k, "expected ',' or ']' after row");
        }
        m = IntMatrix(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols) parse_fail(k, "ragged matrix");
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
        }
        spec.mat = std::move(m);
        return GroupDescriptor(std::move(kinds), std::move(spec));
    }

    spec.tags.assign(kinds.size(), InvolutionSpec::Fixed{});
    std::vector<bool> covered(kinds.size(), false);
    std::size_t k = 0, next_slot = 0;
    auto skipa = [&]() {
        while (k < action_part.size() && std::isspace(static_cast<unsigned char>(action_part[k]))) ++k;
    };
    auto next_uncovered = [&]() {
        while (next_slot < covered.size() && covered[next_slot]) ++next_slot;
        if (next_slot >= covered.size()) parse_fail(k, "more action items than summands");
        return next_slot;
    };
    while (true) {
        skipa();
        if (action_part.compare(k, 5, "fixed") == 0) {
            std::size_t slot = next_uncovered();
            spec.tags[slot] = InvolutionSpec::Fixed{};
            covered[slot] = true;
            k += 5;
        } else if (action_part.compare(k, 3, "neg") == 0) {
            std::size_t slot = next_uncovered();
            spec.tags[slot] = InvolutionSpec::Negated{};
            covered[slot] = true;
            k += 3;
        } else if (action_part.compare(k, 5, "swap(") == 0) {
            k += 5;
            std::size_t j = k;
            while (j < action_part.size() && std::isdigit(static_cast<unsigned char>(action_part[j]))) ++j;
            if (j == k) parse_fail(k, "expected index in swap");
            int a = std::stoi(action_part.substr(k, j - k));
            k = j;
            skipa();
            if (k >= action_part.size() || action_part[k] != ',') parse_fail(k, "expected ',' in swap");
            ++k;
            skipa();
            j = k;
            while (j < action_part.size() && std::isdigit(static_cast<unsigned char>(action_part[j]))) ++j;
            if (j == k) parse_fail(k, "expected index in swap");
            int b = std::stoi(action_part.substr(k, j - k));
            k = j;
            skipa();
            if (k >= action_part.size() || action_part[k] != ')') parse_fail(k, "expected ')' in swap");
            ++k;
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= kinds.size() ||
                static_cast<std::size_t>(b) >= kinds.size())
                parse_fail(k, "swap index out of range");
            spec.tags[static_cast<std::size_t>(a)] = InvolutionSpec::SwapPair{b};
            spec.tags[static_cast<std::size_t>(b)] = InvolutionSpec::SwapPair{a};
            covered[static_cast<std::size_t>(a)] = covered[static_cast<std::size_t>(b)] = true;
        } else {
            parse_fail(k, "expected fixed, neg, swap(i,j) or matrix");
        }
        skipa();
        if (k >= action_part.size()) break;
        if (action_part[k] != ',') parse_fail(k, "expected ','");
        ++k;
    }
    for (std::size_t t2 = 0; t2 < covered.size(); ++t2)
        if (!covered[t2]) parse_fail(k, "summand " + std::to_string(t2) + " has no action item");
    return GroupDescriptor(std::move(kinds), std::move(spec));
}

}  // namespace gzb::torsion
