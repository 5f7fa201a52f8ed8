#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gzb/cli.hpp"
#include "gzb/pipeline.hpp"
#include "gzb/selftest.hpp"

using namespace gzb;
using namespace gzb::harness;

namespace {

struct CliRun {
    int exit_code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verdict pipeline") {
    auto r32 = run_check(Rational(3), Rational(2));
    CHECK(r32.verdict == Verdict::IsomorphicToBrQt);
    REQUIRE(r32.witnesses.size() == 2);
    CHECK(r32.witnesses[0].to_string() == "2");
    CHECK(r32.witnesses[1].to_string() == "3");
    CHECK(replay_certificate(r32.certificate));

    auto r12 = run_check(Rational(1), Rational(2));
    CHECK(r12.verdict == Verdict::RationalConic);
    CHECK(replay_certificate(r12.certificate));

    auto r35 = run_check(Rational(3), Rational(5));
    CHECK(r35.verdict == Verdict::OutOfScope);
    CHECK(replay_certificate(r35.certificate));

    // determinism: identical certificates on identical inputs
    auto again = run_check(Rational(3), Rational(2));
    CHECK(again.certificate == r32.certificate);

    // square-class normalization drives the verdict
    auto rn = run_check(Rational(-4, 9), Rational(8));
    CHECK(rn.certificate["square_class_normalization"]["c"] == "-1");
    CHECK(rn.certificate["square_class_normalization"]["d"] == "2");
    CHECK(replay_certificate(rn.certificate));

    CHECK_THROWS_AS(run_check(Rational(0), Rational(2)), std::invalid_argument);
    // oversized inputs are rejected by the factorization cap
    Rational huge(Integer(1) << 70);
    CHECK_THROWS_AS(run_check(huge, Rational(2)), std::invalid_argument);
}

TEST_CASE("certificate tamper detection") {
    auto res = run_check(Rational(3), Rational(2));
    auto cert = res.certificate;
    cert["local_symbols"][1]["symbol"] = 1;
    CHECK_FALSE(replay_certificate(cert));
    cert = res.certificate;
    cert["verdict"] = "RationalConic";
    CHECK_FALSE(replay_certificate(cert));
    cert = res.certificate;
    cert["w_check"]["classification"] = "KleinW";
    CHECK_FALSE(replay_certificate(cert));
}

TEST_CASE("cli check command") {
    auto r = cli({"check", "--c", "3", "--d", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("IsomorphicToBrQt") != std::string::npos);
    CHECK(r.out.find("{2, 3}") != std::string::npos);

    auto rj = cli({"check", "--c", "3", "--d", "2", "--json"});
    CHECK(rj.exit_code == 0);
    auto cert = nlohmann::ordered_json::parse(rj.out);
    CHECK(replay_certificate(cert));

    CHECK(cli({"check", "--c", "1", "--d", "2"}).out.find("RationalConic") != std::string::npos);
    CHECK(cli({"check", "--c", "3", "--d", "5"}).out.find("OutOfScope") != std::string::npos);

    CHECK(cli({"check", "--c", "0", "--d", "2"}).exit_code == 2);
    CHECK(cli({"check", "--c", "x", "--d", "2"}).exit_code == 2);
    CHECK(cli({"check"}).exit_code == 2);
}

TEST_CASE("cli ulm command") {
    auto r = cli({"ulm", "--group", "C1+C3+P", "--verify"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("U(0) = 1") != std::string::npos);
    CHECK(r.out.find("U(2) = 1") != std::string::npos);
    CHECK(r.out.find("U(1) = 0") != std::string::npos);
    CHECK(r.out.find("divisible rank: 1") != std::string::npos);

    auto rp = cli({"ulm", "--group", "P"});
    CHECK(rp.out.find("U(0) = 0") != std::string::npos);
    CHECK(rp.out.find("divisible rank: 1") != std::string::npos);

    auto rg = cli({"ulm", "--group", "G1", "--verify"});
    CHECK(rg.out.find("U(0) = 1") != std::string::npos);
    CHECK(rg.out.find("U(ω) = 1") != std::string::npos);

    auto bad = cli({"ulm", "--group", "C1+Q"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("position") != std::string::npos);
}

TEST_CASE("cli inp command") {
    auto rid = cli({"inp", "--matrix", "[[1,0],[0,1]]"});
    CHECK(rid.exit_code == 0);
    CHECK(rid.out.find("I-rank: 2") != std::string::npos);
    auto rneg = cli({"inp", "--matrix", "[[-1,0],[0,-1]]"});
    CHECK(rneg.out.find("N-rank: 2") != std::string::npos);
    auto rswap = cli({"inp", "--matrix", "[[0,1],[1,0]]"});
    CHECK(rswap.out.find("P-pairs: 1") != std::string::npos);
    CHECK(cli({"inp", "--matrix", "[[0,2],[1,0]]"}).exit_code == 2);  // not an involution
}

TEST_CASE("cli hilbert command") {
    auto r = cli({"hilbert", "--a", "3", "--b", "2", "--place", "3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("-1") != std::string::npos);
    auto all = cli({"hilbert", "--a", "3", "--b", "2"});
    CHECK(all.exit_code == 0);
    CHECK(all.out.find("product over shown places: +1") != std::string::npos);
    CHECK(cli({"hilbert", "--a", "0", "--b", "2"}).exit_code == 2);
}

TEST_CASE("cli selftest subset and fault injection") {
    auto quick = cli({"selftest", "--only", "10"});
    CHECK(quick.exit_code == 0);
    CHECK(quick.out.find("PASS") != std::string::npos);

    auto js = cli({"selftest", "--only", "3", "--json"});
    CHECK(js.exit_code == 0);
    auto rep = nlohmann::ordered_json::parse(js.out);
    CHECK(rep["all_passed"].get<bool>());
    CHECK(rep["criteria"].size() == 1);

    // the corrupted symbol table is caught with a nonzero exit
    SelftestOptions opts;
    opts.only = {1};
    opts.corrupt_fixture = true;
    auto results = run_acceptance(opts);
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].pass);
    CHECK(results[0].detail.find("disagreement") != std::string::npos);
}

TEST_CASE("cli usage errors") {
    CHECK(cli({}).exit_code == 2);
    CHECK(cli({"frobnicate"}).exit_code == 2);
    CHECK(cli({"--help"}).exit_code == 0);
}
