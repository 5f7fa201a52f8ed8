#include "gzb/oracle/isotropy.hpp"

#include <stdexcept>

namespace gzb::oracle {

namespace {

int vp_ll(long long n, long long p) {
    if (n == 0) throw std::invalid_argument("vp of zero");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline void bit_set(std::vector<uint64_t>& bm, uint64_t i) { bm[i >> 6] |= (uint64_t(1) << (i & 63)); }
inline bool bit_get(const std::vector<uint64_t>& bm, uint64_t i) { return (bm[i >> 6] >> (i & 63)) & 1; }

}  // namespace

int isotropy_modulus_exponent(long long a, long long b, long long p) {
    long long prod = 16;
    prod = prod * (a < 0 ? -a : a) * (b < 0 ? -b : b);
    return 2 * vp_ll(prod, p) + 3;
}

bool isotropic_mod_prime_power(long long a, long long b, long long p, IsotropyWorkspace* ws) {
    if (a == 0 || b == 0) throw std::invalid_argument("isotropic_mod_prime_power: zero coefficient");
    int m = isotropy_modulus_exponent(a, b, p);
    const uint64_t cap = 450'000'000;  // bitmap memory / scan time ceiling
    auto pow_ll = [&](int e) {
        uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<uint64_t>(p);
        return r;
    };
    double as_double = 1;
    for (int i = 0; i < m; ++i) as_double *= static_cast<double>(p);
    if (as_double > static_cast<double>(cap)) {
        // Oversized odd-p instance (|a| = |b| = p >= 19 territory): the
        // exponent 2 v_p(ab) + 1 already decides Q_p-solubility for odd p
        // (valuation bookkeeping on a primitive triple forces the unit-part
        // Legendre conditions), and keeps the scan feasible.
        if (p == 2) throw std::overflow_error("isotropy search: modulus too large at p = 2");
        m = 2 * vp_ll(a * b, p) + 1;
    }
    uint64_t M = pow_ll(m);
    if (M > cap) throw std::overflow_error("isotropy search: modulus too large");
    uint64_t am = static_cast<uint64_t>(((a % static_cast<long long>(M)) + static_cast<long long>(M)) % static_cast<long long>(M));
    uint64_t bm = static_cast<uint64_t>(((b % static_cast<long long>(M)) + static_cast<long long>(M)) % static_cast<long long>(M));

    IsotropyWorkspace local;
    IsotropyWorkspace& w = ws ? *ws : local;
    std::size_t words = static_cast<std::size_t>((M + 63) / 64);
    w.squares.assign(words, 0);

    uint64_t half = M / 2;  // v and M - v square identically; scan half ranges

    // squares bitmap: z^2 mod M, incremental (z+1)^2 = z^2 + 2z + 1
    {
        uint64_t sq = 0, inc = 1;
        for (uint64_t z = 0; z <= half; ++z) {
            bit_set(w.squares, sq);
            sq += inc;
            if (sq >= M) sq -= M;
            inc += 2;
            if (inc >= M) inc -= M;
        }
    }
    // case x = 1: z^2 = a + b y^2; scan y, test membership
    {
        uint64_t t = am, inc = bm;  // b*(2y+1) at y = 0 is b
        uint64_t step = 2 * bm >= M ? 2 * bm - M : 2 * bm;
        for (uint64_t y = 0; y <= half; ++y) {
            if (bit_get(w.squares, t)) return true;
            t += inc;
            if (t >= M) t -= M;
            inc += step;
            if (inc >= M) inc -= M;
        }
    }
    // case y = 1: z^2 = a x^2 + b
    {
        uint64_t t = bm, inc = am;
        uint64_t step = 2 * am >= M ? 2 * am - M : 2 * am;
        for (uint64_t x = 0; x <= half; ++x) {
            if (bit_get(w.squares, t)) return true;
            t += inc;
            if (t >= M) t -= M;
            inc += step;
            if (inc >= M) inc -= M;
        }
    }
    // case z = 1: 1 - a x^2 must be of the form b y^2
    {
        w.bvals.assign(words, 0);
        uint64_t t = 0, inc = bm;
        uint64_t bstep = 2 * bm >= M ? 2 * bm - M : 2 * bm;
        for (uint64_t y = 0; y <= half; ++y) {
            bit_set(w.bvals, t);
            t += inc;
            if (t >= M) t -= M;
            inc += bstep;
            if (inc >= M) inc -= M;
        }
        uint64_t v = 1 % M, dec = am;
        uint64_t astep = 2 * am >= M ? 2 * am - M : 2 * am;
        for (uint64_t x = 0; x <= half; ++x) {
            if (bit_get(w.bvals, v)) return true;
            v = v >= dec ? v - dec : v + M - dec;
            dec += astep;
            if (dec >= M) dec -= M;
        }
    }
    return false;
}

int hilbert_symbol_bruteforce(long long a, long long b, long long p, IsotropyWorkspace* ws) {
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    return isotropic_mod_prime_power(a, b, p, ws) ? 1 : -1;
}

}  // namespace gzb::oracle
