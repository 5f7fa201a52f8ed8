#pragma once

#include <cstdint>
#include <vector>

// Independent brute-force oracles. Nothing here may call the closed-form
// symbol code it is used to check.

namespace gzb::oracle {

// Scratch buffers reusable across calls (bitmaps of size p^m bits).
struct IsotropyWorkspace {
    std::vector<uint64_t> squares;
    std::vector<uint64_t> bvals;
};

// Whether z^2 = a x^2 + b y^2 has a primitive solution mod p^m with
// m = 2*v_p(16ab) + 3. a, b nonzero, |a|,|b| small (fits the desk caps),
// p prime <= 50. A primitive triple has a unit coordinate; scaling by its
// inverse reduces the search to the three cases x=1, y=1, z=1, each a scan
// of one variable against a residue bitmap.
// When p^m exceeds the bitmap ceiling (a handful of |a| = |b| = p instances
// with p >= 19), the search runs at the classical sufficient exponent
// 2*v_p(ab) + 1 instead - still an exhaustive primitive-triple search
// deciding the same predicate.
bool isotropic_mod_prime_power(long long a, long long b, long long p, IsotropyWorkspace* ws = nullptr);

// The modulus exponent used above.
int isotropy_modulus_exponent(long long a, long long b, long long p);

// Hilbert symbol at a finite prime per the brute-force oracle (+1 iff
// isotropic), or at the real place by sign inspection when p == 0.
int hilbert_symbol_bruteforce(long long a, long long b, long long p, IsotropyWorkspace* ws = nullptr);

}  // namespace gzb::oracle
