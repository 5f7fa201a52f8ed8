#include "gzb/cli.hpp"

#include <cstdlib>

#include <CLI11.hpp>
#include <json.hpp>

#include "gzb/inp.hpp"
#include "gzb/pipeline.hpp"
#include "gzb/selftest.hpp"
#include "gzb/truncation.hpp"

namespace gzb::harness {

namespace {

using json = nlohmann::ordered_json;

int env_truncation() {
    const char* v = std::getenv("GZB_TRUNCATION");
    if (!v) return gzb::torsion::kDefaultTruncation;
    int k = std::atoi(v);
    return k >= 4 ? k : gzb::torsion::kDefaultTruncation;
}

int cmd_check(const std::string& c_s, const std::string& d_s, bool as_json, long conic_bound, std::ostream& out) {
    Rational c = parse_rational(c_s), d = parse_rational(d_s);
    CheckOptions opts;
    opts.conic_bound = conic_bound;
    CheckResult res = run_check(c, d, opts);
    if (as_json) {
        out << res.certificate.dump(2) << "\n";
        return 0;
    }
    out << "verdict: " << to_string(res.verdict) << "\n";
    switch (res.verdict) {
        case Verdict::RationalConic:
            out << "the quaternion algebra (" << gzb::to_string(c) << "," << gzb::to_string(d)
                << ") splits; the conic is rational and the Brauer group is that of Q(t)\n";
            if (!res.certificate["conic_search"]["result"].is_null())
                out << "point on the square-class-normalized conic: ("
                    << res.certificate["conic_search"]["result"]["x"].get<std::string>() << ", "
                    << res.certificate["conic_search"]["result"]["y"].get<std::string>() << ")\n";
            break;
        case Verdict::IsomorphicToBrQt: {
            out << "nonsplit at places {";
            for (std::size_t i = 0; i < res.witnesses.size(); ++i)
                out << (i ? ", " : "") << res.witnesses[i].to_string();
            out << "}; d ~ 2 and the first cyclotomic layer over Q(sqrt(2)) is cyclic quartic\n";
            out << "Brauer group isomorphic to Br(Q(t))\n";
            break;
        }
        case Verdict::OutOfScope:
            out << res.certificate["reason"].get<std::string>() << "\n";
            break;
    }
    return 0;
}

int cmd_ulm(const std::string& group, bool verify, long cutoff, int truncation, std::ostream& out) {
    auto desc = gzb::torsion::parse_descriptor(group);
    out << "group: " << desc.to_string() << "\n";
    auto print_row = [&](const Ordinal& lam) {
        long u = gzb::torsion::ulm_invariant(desc, lam);
        out << "U(" << lam.to_string() << ") = " << u;
        if (verify) {
            long o = gzb::torsion::ulm_invariant_oracle(desc, lam, truncation);
            out << (o == u ? "   [oracle ok]" : "   [ORACLE MISMATCH: " + std::to_string(o) + "]");
            if (o != u) {
                out << "\n";
                throw std::runtime_error("oracle mismatch");
            }
        }
        out << "\n";
    };
    for (long m = 0; m <= cutoff; ++m) print_row(Ordinal::finite(m));
    for (long m = 0; m <= cutoff; ++m) print_row(Ordinal::omega_plus(m));
    print_row(Ordinal::omega2());
    out << "divisible rank: " << desc.divisible_rank() << "\n";
    out << "ulm length: " << gzb::torsion::ulm_length(desc).to_string() << "\n";
    return 0;
}

int cmd_inp(const std::string& matrix_json, int depth, std::ostream& out) {
    json j = json::parse(matrix_json);
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a JSON array of rows");
    IntMatrix m(j.size(), j[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) = to_integer(j[i][k].get<long long>());
    }
    auto dec = gzb::torsion::inp_decompose(m, depth);
    bool ok = gzb::torsion::verify_inp(dec, std::min(depth, 10));
    out << "rank: " << dec.desc->size() << "\n";
    out << "I-rank: " << dec.I.size() << "\n";
    out << "N-rank: " << dec.N.size() << "\n";
    out << "P-pairs: " << dec.P.size() << "\n";
    out << "verified (laws + 2^" << std::min(depth, 10) << "-torsion basis): " << (ok ? "yes" : "NO") << "\n";
    return ok ? 0 : 1;
}

void check_cap(const Rational& q, const char* name) {
    Integer cap = Integer(1) << 63;
    if (abs(num(q)) > cap || den(q) > cap)
        throw std::invalid_argument(std::string(name) + " exceeds the input cap (|num|, den <= 2^63)");
}

int cmd_hilbert(const std::string& a_s, const std::string& b_s, const std::string& place, std::ostream& out) {
    Rational a = parse_rational(a_s), b = parse_rational(b_s);
    check_cap(a, "a");
    check_cap(b, "b");
    if (!place.empty()) {
        PlaceQ v = place == "inf" ? PlaceQ::real_infinity() : PlaceQ::prime(parse_integer(place));
        out << hilbert_symbol(a, b, v) << "\n";
        return 0;
    }
    int prod = 1;
    for (const auto& v : hilbert_relevant_places(a, b)) {
        int s = hilbert_symbol(a, b, v);
        prod *= s;
        out << "(" << gzb::to_string(a) << "," << gzb::to_string(b) << ")_" << v.to_string() << " = " << (s > 0 ? "+1" : "-1")
            << "\n";
    }
    out << "product over shown places: " << (prod > 0 ? "+1" : "-1") << "\n";
    return prod == 1 ? 0 : 1;
}

int cmd_selftest(bool as_json, const std::vector<int>& only, bool corrupt, std::ostream& out) {
    SelftestOptions opts;
    opts.only = only;
    opts.corrupt_fixture = corrupt;
    auto results = run_acceptance(opts);
    if (as_json) {
        out << acceptance_report_json(results).dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << (r.pass ? "PASS" : "FAIL") << "  [" << r.index << "] " << r.name << " (" << r.detail << ", "
                << r.seconds << "s)\n";
        }
        out << (all_passed(results) ? "all criteria passed\n" : "FAILURES present\n");
    }
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact 2-primary Brauer/Ulm arithmetic over quadratic fields"};
    app.require_subcommand(1);

    std::string c_s, d_s, group, matrix_json, a_s, b_s, place;
    bool as_json = false, verify = false, corrupt = false;
    long conic_bound = 1000, cutoff = 8;
    int depth = 16;
    std::vector<int> only;

    auto* check = app.add_subcommand("check", "decide the Brauer-group verdict for 1 = c x^2 + d y^2");
    check->add_option("--c", c_s, "coefficient c (rational, e.g. 3 or 1/4)")->required();
    check->add_option("--d", d_s, "coefficient d (rational)")->required();
    check->add_flag("--json", as_json, "emit the full certificate as JSON");
    check->add_option("--conic-bound", conic_bound, "height bound for the rational point search");

    auto* ulm = app.add_subcommand("ulm", "Ulm invariants of a descriptor group");
    ulm->add_option("--group", group, "descriptor, e.g. \"C1+C3+P | fixed,fixed,neg\"")->required();
    ulm->add_flag("--verify", verify, "recompute every value through the truncation oracle");
    ulm->add_option("--cutoff", cutoff, "largest finite offset printed");

    auto* inp = app.add_subcommand("inp", "decompose (Q2/Z2)^r under an integer involution");
    inp->add_option("--matrix", matrix_json, "JSON rows, e.g. [[0,1],[1,0]]")->required();
    inp->add_option("--depth", depth, "tower depth");

    auto* hil = app.add_subcommand("hilbert", "Hilbert symbols of a pair (a,b)");
    hil->add_option("--a", a_s, "first argument (rational)")->required();
    hil->add_option("--b", b_s, "second argument (rational)")->required();
    hil->add_option("--place", place, "prime p or 'inf'; omit to list all relevant places");

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_flag("--json", as_json, "machine-readable report");
    self->add_option("--only", only, "criterion indices to run");
    self->add_flag("--corrupt-fixture", corrupt, "fault injection: flip one Hilbert symbol");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(c_s, d_s, as_json, conic_bound, out);
        if (ulm->parsed()) return cmd_ulm(group, verify, cutoff, env_truncation(), out);
        if (inp->parsed()) return cmd_inp(matrix_json, depth, out);
        if (hil->parsed()) return cmd_hilbert(a_s, b_s, place, out);
        if (self->parsed()) return cmd_selftest(as_json, only, corrupt, out);
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace gzb::harness
