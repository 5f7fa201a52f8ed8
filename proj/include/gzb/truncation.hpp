#pragma once

#include <optional>
#include <vector>

#include "gzb/torsion.hpp"

// Truncation oracle for heights and Ulm invariants. Independent route from
// the symbolic per-summand tables in torsion.hpp: the truncated group is an
// explicit direct sum of cyclic 2-groups, and divisibility is read off
// coordinatewise. Equivalent to exhaustive halving in the truncated group
// (the depth-m halving frontier is a coset of the 2^m-torsion); the literal
// halving search is also provided for small groups.

namespace gzb::torsion {

inline constexpr int kDefaultTruncation = 24;  // override per call or via GZB_TRUNCATION in the CLI

// Truncation at level K:
//   Cyclic(n)     -> Z/2^n (unchanged)
//   Pruefer       -> Z/2^K (the 2^K-torsion subgroup)
//   GenPruefer(n) -> sub-presentation on e_1..e_K, which decomposes as
//                    Z/2 + Z/4 + ... + Z/2^(K-1) + Z/2^(K+n)
//                    via f_k = e_k - 2^(K-k) e_K.
class TruncatedGroup {
public:
    TruncatedGroup(DescriptorPtr desc, int K);

    int level() const { return K_; }
    const std::vector<long>& cyclic_exponents() const { return exps_; }

    // Coordinates of x in the cyclic decomposition. Throws if a Pruefer
    // coordinate has order > 2^K (element outside the truncation).
    std::vector<Integer> to_coords(const GroupElem& x) const;
    GroupElem from_coords(const std::vector<Integer>& coords) const;

    // Exact height of (the image of) x inside the truncated group:
    // max m with x in 2^m G_K, or nullopt when x maps to zero.
    std::optional<long> height_in_truncation(const GroupElem& x) const;

private:
    DescriptorPtr desc_;
    int K_;
    std::vector<long> exps_;                 // flattened cyclic exponents
    std::vector<std::size_t> summand_base_;  // first coordinate index per summand
};

// Oracle answer: either a certified finite height (< K-2) or a lower bound
// K-2 interpreted as transfinite by the stabilization rule.
struct HeightBound {
    bool certified;       // true: exact finite height
    long value;           // the height, or the bound K-2
    bool is_zero_image;   // x mapped to zero in the truncation
};

HeightBound height_bruteforce(const GroupElem& x, int K = kDefaultTruncation);

// Full oracle classification: Finite(j) certified by the truncation, else
// transfinite refined through the omega-part (Pruefer coordinates and
// GenPruefer top coordinates): OmegaPlus(v2) or Infinity.
Ordinal oracle_height(const GroupElem& x, int K = kDefaultTruncation);

// Ulm invariant via the truncation: per-summand socle enumeration, heights
// from truncated coordinates, dims combined additively.
long ulm_invariant_oracle(const GroupDescriptor& g, const Ordinal& lambda, int K = kDefaultTruncation);

// Literal breadth-first halving search: does a chain x = 2 y_1, y_1 = 2 y_2,
// ... of length `depth` exist? Frontier sizes explode on large groups; meant
// for small Cyclic/Pruefer descriptors where it cross-checks the coordinate
// route. `cap` bounds the frontier (throws if exceeded).
bool divisible_search(const GroupElem& x, int depth, int window = -1, std::size_t cap = 200000);

}  // namespace gzb::torsion
