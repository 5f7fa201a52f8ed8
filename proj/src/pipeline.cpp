#include "gzb/pipeline.hpp"

#include <stdexcept>

namespace gzb::harness {

using gzb::brauer::conic_point_search;
using gzb::brauer::quaternion_splits;
using gzb::kummer::w_membership;
using gzb::kummer::WClass;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::RationalConic: return "RationalConic";
        case Verdict::IsomorphicToBrQt: return "IsomorphicToBrQt";
        default: return "OutOfScope";
    }
}

namespace {

constexpr int kCertificateVersion = 1;

void check_caps(const Rational& q, const char* name) {
    Integer cap = Integer(1) << 63;
    if (abs(num(q)) > cap || den(q) > cap)
        throw std::invalid_argument(std::string(name) + " exceeds the input cap (|num|, den <= 2^63)");
}

}  // namespace

CheckResult run_check(const Rational& c, const Rational& d, const CheckOptions& opts) {
    if (c == 0 || d == 0) throw std::invalid_argument("run_check: c and d must be nonzero");
    if (opts.enforce_caps) {
        check_caps(c, "c");
        check_caps(d, "d");
    }
    json cert;
    cert["version"] = kCertificateVersion;
    cert["inputs"] = {{"c", gzb::to_string(c)}, {"d", gzb::to_string(d)}};

    Integer c_sf = squarefree_part(c), d_sf = squarefree_part(d);
    cert["square_class_normalization"] = {{"c", c_sf.get_str()}, {"d", d_sf.get_str()}};
    Rational cn(c_sf), dn(d_sf);

    auto split = quaternion_splits(cn, dn);
    json symbols = json::array();
    for (const auto& v : hilbert_relevant_places(cn, dn)) {
        symbols.push_back({{"place", v.to_string()}, {"symbol", hilbert_symbol(cn, dn, v)}});
    }
    cert["local_symbols"] = symbols;

    json conic;
    conic["bound"] = opts.conic_bound;
    auto pt = conic_point_search(cn, dn, opts.conic_bound);
    if (pt)
        conic["result"] = {{"x", gzb::to_string(pt->x)}, {"y", gzb::to_string(pt->y)}};
    else
        conic["result"] = nullptr;
    cert["conic_search"] = conic;

    CheckResult out{Verdict::OutOfScope, {}, {}};
    if (split.splits) {
        out.verdict = Verdict::RationalConic;
        cert["w_check"] = nullptr;
        cert["verdict"] = to_string(out.verdict);
        out.certificate = std::move(cert);
        return out;
    }
    out.witnesses = split.witnesses;
    json wl = json::array();
    for (const auto& w : split.witnesses) wl.push_back(w.to_string());
    cert["nonsplit_witnesses"] = wl;

    if (d_sf != 2) {
        out.verdict = Verdict::OutOfScope;
        cert["w_check"] = nullptr;
        cert["verdict"] = to_string(out.verdict);
        cert["reason"] = "d is not in the square class of 2; the field is not split by Q(sqrt(2))";
        out.certificate = std::move(cert);
        return out;
    }

    // First layer of the cyclotomic Z2-tower over Q(sqrt(2)) is generated by
    // 2 + sqrt(2); cyclic-quartic over Q iff d * norm(e) is a square.
    QuadElem e = gzb::quad(2, 1, 2);
    WClass wc = w_membership(e);
    Rational nrm = e.norm();
    json w_check;
    w_check["e"] = e.to_string();
    w_check["norm"] = gzb::to_string(nrm);
    w_check["classification"] = gzb::kummer::to_string(wc);
    w_check["d_times_norm_is_square"] = is_square_rational(Rational(d_sf) * nrm);
    cert["w_check"] = w_check;

    if (wc != WClass::Cyclic4)
        throw std::logic_error("run_check: the cyclotomic first layer failed the cyclic-quartic check");

    out.verdict = Verdict::IsomorphicToBrQt;
    cert["verdict"] = to_string(out.verdict);
    out.certificate = std::move(cert);
    return out;
}

bool replay_certificate(const json& cert) {
    try {
        if (cert.at("version").get<int>() != kCertificateVersion) return false;
        Rational c = parse_rational(cert.at("inputs").at("c").get<std::string>());
        Rational d = parse_rational(cert.at("inputs").at("d").get<std::string>());
        if (squarefree_part(c).get_str() != cert.at("square_class_normalization").at("c").get<std::string>())
            return false;
        if (squarefree_part(d).get_str() != cert.at("square_class_normalization").at("d").get<std::string>())
            return false;
        Rational cn(squarefree_part(c)), dn(squarefree_part(d));
        bool all_plus = true;
        for (const auto& entry : cert.at("local_symbols")) {
            std::string pl = entry.at("place").get<std::string>();
            PlaceQ v = pl == "inf" ? PlaceQ::real_infinity() : PlaceQ::prime(parse_integer(pl));
            int sym = hilbert_symbol(cn, dn, v);
            if (sym != entry.at("symbol").get<int>()) return false;
            if (sym == -1) all_plus = false;
        }
        // conic point, when recorded, must lie on the conic
        const auto& conic = cert.at("conic_search");
        if (!conic.at("result").is_null()) {
            Rational x = parse_rational(conic.at("result").at("x").get<std::string>());
            Rational y = parse_rational(conic.at("result").at("y").get<std::string>());
            if (cn * x * x + dn * y * y != 1) return false;
            if (!all_plus) return false;  // a point contradicts a -1 symbol
        }
        std::string verdict = cert.at("verdict").get<std::string>();
        if (all_plus) return verdict == to_string(Verdict::RationalConic);
        if (squarefree_part(d) != 2) return verdict == to_string(Verdict::OutOfScope);
        const auto& w = cert.at("w_check");
        QuadElem e = gzb::parse_quad(w.at("e").get<std::string>(), 2);
        if (gzb::kummer::to_string(w_membership(e)) != w.at("classification").get<std::string>()) return false;
        if (gzb::to_string(e.norm()) != w.at("norm").get<std::string>()) return false;
        if (w.at("classification").get<std::string>() != "Cyclic4") return false;
        return verdict == to_string(Verdict::IsomorphicToBrQt);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace gzb::harness
