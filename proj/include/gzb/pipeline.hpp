#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gzb/conic.hpp"
#include "gzb/kummer.hpp"

// The end-to-end verdict for the function field of 1 = c x^2 + d y^2 over Q:
//   RationalConic     - the quaternion algebra (c,d) splits, so the field is
//                       rational and its Brauer group is that of Q(t) trivially;
//   IsomorphicToBrQt  - nonsplit, d in the square class of 2, and the
//                       obstruction group vanishes (the first cyclotomic layer
//                       over Q(sqrt(2)) is cyclic quartic), so the Brauer group
//                       is isomorphic to Br(Q(t));
//   OutOfScope        - nonsplit but d is not in the square class of 2: the
//                       hypotheses are not checked to hold, no verdict.

namespace gzb::harness {

using json = nlohmann::ordered_json;
using gzb::Rational;

enum class Verdict { RationalConic, IsomorphicToBrQt, OutOfScope };
std::string to_string(Verdict v);

struct CheckOptions {
    long conic_bound = 1000;
    // inputs are capped so square-class factorization always terminates
    bool enforce_caps = true;
};

struct CheckResult {
    Verdict verdict;
    std::vector<gzb::PlaceQ> witnesses;  // nonsplit places when relevant
    json certificate;                    // versioned, stable key order
};

// The pipeline: normalize square classes, decide splitting, check the
// square class of d against 2, re-derive the cyclic-quartic fact for
// 2 + sqrt(2), emit the verdict with a replayable certificate.
CheckResult run_check(const Rational& c, const Rational& d, const CheckOptions& opts = {});

// Recomputes every recorded symbol/norm/classification through the library
// and reproduces the verdict. True iff everything matches.
bool replay_certificate(const json& cert);

}  // namespace gzb::harness
