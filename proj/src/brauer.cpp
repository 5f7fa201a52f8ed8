#include "gzb/brauer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gzb/quad.hpp"

namespace gzb::brauer {

BrauerElem::BrauerElem(long long d, std::map<PlaceL, LocalInv> inv) : d_(d), inv_(std::move(inv)) {
    for (auto it = inv_.begin(); it != inv_.end();) {
        if (it->second.is_zero())
            it = inv_.erase(it);
        else
            ++it;
    }
    validate();
}

void BrauerElem::validate() const {
    validate_field_param(d_);
    Dyadic sum;
    for (const auto& [pl, v] : inv_) {
        SplitKind k = splitting_type(pl.base, d_);
        if (k != pl.kind) throw std::invalid_argument("place kind inconsistent with d at " + pl.to_string());
        if (k == SplitKind::Complex && !v.is_zero())
            throw std::invalid_argument("complex place must carry invariant 0");
        if (k == SplitKind::RealPair && !(v.is_zero() || v == Dyadic::half()))
            throw std::invalid_argument("real place invariant must be 0 or 1/2");
        if (!pl.is_swapped_by_galois() && pl.index != 0)
            throw std::invalid_argument("nonzero index at unsplit place " + pl.to_string());
        if (pl.index != 0 && pl.index != 1) throw std::invalid_argument("place index out of range");
        sum = sum + v;
    }
    if (!sum.is_zero()) throw std::invalid_argument("local invariants do not sum to zero");
}

LocalInv BrauerElem::at(const PlaceL& p) const {
    auto it = inv_.find(p);
    return it == inv_.end() ? LocalInv() : it->second;
}

long BrauerElem::order_exponent() const {
    long e = 0;
    for (const auto& [pl, v] : inv_) e = std::max(e, v.order_exponent());
    return e;
}

BrauerElem BrauerElem::operator+(const BrauerElem& o) const {
    if (d_ != o.d_) throw std::invalid_argument("BrauerElem: mixed fields");
    std::map<PlaceL, LocalInv> m = inv_;
    for (const auto& [pl, v] : o.inv_) {
        Dyadic s = at(pl) + v;
        if (s.is_zero())
            m.erase(pl);
        else
            m[pl] = s;
    }
    return BrauerElem(d_, std::move(m));
}

BrauerElem BrauerElem::operator-() const {
    std::map<PlaceL, LocalInv> m;
    for (const auto& [pl, v] : inv_) m[pl] = -v;
    return BrauerElem(d_, std::move(m));
}

BrauerElem BrauerElem::operator-(const BrauerElem& o) const { return *this + (-o); }

BrauerElem BrauerElem::times_pow2(long j) const {
    std::map<PlaceL, LocalInv> m;
    for (const auto& [pl, v] : inv_) {
        Dyadic w = v.times_pow2(j);
        if (!w.is_zero()) m[pl] = w;
    }
    return BrauerElem(d_, std::move(m));
}

std::string BrauerElem::to_string() const {
    std::ostringstream os;
    os << "d=" << d_ << ";";
    bool first = true;
    for (const auto& [pl, v] : inv_) {
        os << (first ? " " : ", ") << pl.to_string() << ":" << v.to_string();
        first = false;
    }
    if (first) os << " 0";
    return os.str();
}

BrauerElem BrauerElem::parse(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("BrauerElem: missing ';'");
    std::string head = s.substr(0, semi);
    auto eq = head.find('=');
    if (eq == std::string::npos || head.substr(0, eq).find('d') == std::string::npos)
        throw std::invalid_argument("BrauerElem: expected 'd=<int>;'");
    long long d = std::stoll(head.substr(eq + 1));
    std::map<PlaceL, LocalInv> m;
    std::string rest = s.substr(semi + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto ltrim = tok.find_first_not_of(" \t");
        if (ltrim == std::string::npos) continue;
        auto rtrim = tok.find_last_not_of(" \t");
        tok = tok.substr(ltrim, rtrim - ltrim + 1);
        if (tok.empty() || tok == "0") continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("BrauerElem: expected place:value in '" + tok + "'");
        std::string place = tok.substr(0, colon);
        Dyadic v = Dyadic::parse(tok.substr(colon + 1));
        int index = 0;
        auto dot = place.find('.');
        if (dot != std::string::npos) {
            index = std::stoi(place.substr(dot + 1));
            place = place.substr(0, dot);
        }
        PlaceQ base = (place == "inf") ? PlaceQ::real_infinity() : PlaceQ::prime(parse_integer(place));
        PlaceL pl = place_over(base, d, index);
        Dyadic cur = m.count(pl) ? m[pl] : Dyadic();
        Dyadic nv = cur + v;
        if (nv.is_zero())
            m.erase(pl);
        else
            m[pl] = nv;
    }
    return BrauerElem(d, std::move(m));
}

BrauerElem galois_act(const BrauerElem& b) {
    std::map<PlaceL, LocalInv> m;
    for (const auto& [pl, v] : b.invariants()) {
        PlaceL q = pl;
        if (pl.is_swapped_by_galois()) q.index = 1 - pl.index;
        m[q] = v;
    }
    return BrauerElem(b.d(), std::move(m));
}

BrauerElem one_minus_sigma(const BrauerElem& b) { return b - galois_act(b); }

bool is_divisible(const BrauerElem& b) {
    for (const auto& [pl, v] : b.invariants())
        if (pl.is_archimedean() && !v.is_zero()) return false;
    return true;
}

std::optional<BrauerElem> halve(const BrauerElem& b) {
    if (!is_divisible(b)) return std::nullopt;
    std::map<PlaceL, LocalInv> m;
    Dyadic sum;
    for (const auto& [pl, v] : b.invariants()) {
        Dyadic h = v.div_pow2_canonical(1);
        m[pl] = h;
        sum = sum + h;
    }
    // repair sum-zero: the defect is 2-torsion, absorbed at a finite place
    if (!sum.is_zero()) {
        if (!(sum == Dyadic::half())) throw std::logic_error("halve: defect not 2-torsion");
        auto fin = inert_or_ramified_places(b.d(), 20);
        PlaceL q = fin.front();
        for (const auto& cand : fin)
            if (!m.count(cand)) {
                q = cand;
                break;
            }
        Dyadic cur = m.count(q) ? m[q] : Dyadic();
        Dyadic adj = cur + Dyadic::half();
        if (adj.is_zero())
            m.erase(q);
        else
            m[q] = adj;
    }
    BrauerElem out(b.d(), std::move(m));
    if (!(out.times_pow2(1) == b)) throw std::logic_error("halve: postcondition failed");
    return out;
}

namespace {

// split pairs present in the support of b, index-0 representative
std::vector<PlaceL> split_pair_reps(const BrauerElem& b) {
    std::vector<PlaceL> out;
    for (const auto& [pl, v] : b.invariants()) {
        if (pl.kind != SplitKind::Split) continue;
        PlaceL rep = pl;
        rep.index = 0;
        if (std::find(out.begin(), out.end(), rep) == out.end()) out.push_back(rep);
    }
    return out;
}

PlaceL pair_partner(const PlaceL& p) {
    PlaceL q = p;
    q.index = 1 - p.index;
    return q;
}

}  // namespace

BrauerElem construct_beta_i(const BrauerElem& beta, const std::map<PlaceL, Dyadic>& z_map, long i,
                            std::size_t universe) {
    if (i < 0) throw std::invalid_argument("construct_beta_i: i must be >= 0");
    for (const auto& [pl, v] : beta.invariants())
        if (pl.is_archimedean() && !v.is_zero())
            throw std::invalid_argument("construct_beta_i: beta must vanish at archimedean places");
    BrauerElem oms = one_minus_sigma(beta);
    // validate z_map against (1-sigma)beta
    for (const auto& [pl, z] : z_map) {
        if (pl.kind != SplitKind::Split || pl.index != 0)
            throw std::invalid_argument("z_map keys must be index-0 split places");
        if (!(z.times_pow2(i + 1) == oms.at(pl)))
            throw std::invalid_argument("z_map inconsistent with (1-sigma)beta at " + pl.to_string());
    }
    std::map<PlaceL, LocalInv> m;
    // split pairs: (2z + y/2^i, y/2^i) with y = beta at the partner place
    std::vector<PlaceL> reps = split_pair_reps(beta);
    for (const auto& [pl, z] : z_map)
        if (std::find(reps.begin(), reps.end(), pl) == reps.end()) reps.push_back(pl);
    for (const auto& rep : reps) {
        PlaceL p2 = pair_partner(rep);
        Dyadic y = beta.at(p2);
        Dyadic z = z_map.count(rep) ? z_map.at(rep) : Dyadic();
        if (!(z.times_pow2(i + 1) == oms.at(rep)))
            throw std::invalid_argument("z_map missing a pair carried by (1-sigma)beta");
        Dyadic half_y = y.div_pow2_canonical(i);
        Dyadic v1 = z.times_pow2(1) + half_y;
        if (!v1.is_zero()) m[rep] = v1;
        if (!half_y.is_zero()) m[p2] = half_y;
    }
    // inert/ramified places except the balancing one
    auto fin = inert_or_ramified_places(beta.d(), universe);
    std::optional<PlaceL> balancing;
    for (const auto& cand : fin)
        if (beta.at(cand).is_zero() && !m.count(cand)) {
            balancing = cand;
            break;
        }
    if (!balancing) throw std::invalid_argument("construct_beta_i: no admissible balancing place in the universe");
    for (const auto& [pl, v] : beta.invariants()) {
        if (pl.kind == SplitKind::Split || pl.is_archimedean()) continue;
        if (pl == *balancing) continue;
        Dyadic h = v.div_pow2_canonical(i);
        if (!h.is_zero()) m[pl] = h;
    }
    // balance
    Dyadic sum;
    for (const auto& [pl, v] : m) sum = sum + v;
    if (!sum.is_zero()) m[*balancing] = -sum;
    BrauerElem out(beta.d(), std::move(m));
    // postconditions
    if (!(out.times_pow2(i) == beta)) throw std::logic_error("construct_beta_i: 2^i beta_i != beta");
    BrauerElem oms_i = one_minus_sigma(out);
    for (const auto& rep : reps) {
        Dyadic z = z_map.count(rep) ? z_map.at(rep) : Dyadic();
        if (!(oms_i.at(rep) == z.times_pow2(1))) throw std::logic_error("construct_beta_i: (1-sigma) value off");
    }
    return out;
}

BrauerElem construct_gamma(const BrauerElem& gamma_prime, std::size_t universe) {
    if (!(galois_act(gamma_prime) == -gamma_prime))
        throw std::invalid_argument("construct_gamma: input must be sigma-negated");
    for (const auto& [pl, v] : gamma_prime.invariants())
        if (pl.kind != SplitKind::Split)
            throw std::invalid_argument("construct_gamma: input must vanish off split pairs");
    std::map<PlaceL, LocalInv> m;
    std::vector<PlaceL> reps = split_pair_reps(gamma_prime);
    auto fin = inert_or_ramified_places(gamma_prime.d(), universe);
    std::size_t next_q = 0;
    for (const auto& rep : reps) {
        Dyadic v = gamma_prime.at(rep);
        if (v.is_zero()) continue;
        m[rep] = v;
        while (next_q < fin.size() && m.count(fin[next_q])) ++next_q;
        if (next_q >= fin.size()) throw std::invalid_argument("construct_gamma: balancing universe exhausted");
        m[fin[next_q]] = -v;
    }
    BrauerElem out(gamma_prime.d(), std::move(m));
    // postconditions
    BrauerElem oms = one_minus_sigma(out);
    for (const auto& rep : reps) {
        PlaceL p2 = pair_partner(rep);
        if (!(oms.at(rep) == gamma_prime.at(rep)) || !(oms.at(p2) == -gamma_prime.at(rep)))
            throw std::logic_error("construct_gamma: (1-sigma) profile failed");
    }
    if (out.order_exponent() > gamma_prime.order_exponent())
        throw std::logic_error("construct_gamma: order grew");
    return out;
}

}  // namespace gzb::brauer
