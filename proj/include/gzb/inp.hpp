#pragma once

#include <utility>
#include <vector>

#include "gzb/torsion.hpp"

// Involution-structured constructions on divisible 2-groups:
//  - decomposition of (Q2/Z2)^r under an order-2 integer matrix action into
//    fixed (I), negated (N) and swapped-pair (P) divisible summands, realized
//    as explicit towers;
//  - the fixed-condition tower builder gluing a corestriction-style map into
//    an I/N/P-split target.

namespace gzb::torsion {

struct INPDecomposition {
    DescriptorPtr desc;  // all-Pruefer rank r with the matrix action attached
    int depth;
    std::vector<Tower> I;                       // sigma-fixed towers
    std::vector<Tower> N;                       // sigma-negated towers
    std::vector<std::pair<Tower, Tower>> P;     // sigma-swapped tower pairs
};

// Decompose (Q2/Z2)^r under the involution M (integer r x r, M^2 = I):
// 2-torsion linear algebra over F2 picks V_P and complements W_1, W_{-1}
// inside the 2-torsion of (1+sigma)M resp. (1-sigma)M; divisible towers are
// built inside those images (so fixedness/negatedness holds pointwise), P
// towers anywhere with their sigma-conjugates. Deterministic pivoting in
// input order. Throws if M is not an involution.
INPDecomposition inp_decompose(const IntMatrix& M, int depth = 16);

// Verification of the output laws:
//  - sigma fixes every I entry, negates every N entry, swaps each P pair;
//  - every tower passes verify_tower;
//  - the 2^T-torsion generators (depth T-1 entries) form a basis: the
//    generator matrix is invertible mod 2^T (certifies direct sum + span on
//    the whole 2^T-torsion).
bool verify_inp(const INPDecomposition& dec, int T);

// Reconstruct the coefficients of v (a 2^T-torsion vector, coordinates with
// order dividing 2^T) over the tower generators; returns false if the
// decomposition fails to reproduce v exactly.
bool inp_reconstructs(const INPDecomposition& dec, const GroupElem& v, int T);

// Targets carrying an explicit I/N/P split: an all-Pruefer descriptor with
// Fixed / Negated / SwapPair tags.
struct INPTargets {
    DescriptorPtr desc;
    std::vector<std::size_t> i_idx, n_idx;
    std::vector<std::pair<std::size_t, std::size_t>> p_pairs;

    static INPTargets make(std::size_t n_i, std::size_t n_n, std::size_t n_pairs);
};

// A homomorphism table from an all-Pruefer domain into an INP target,
// given by an integer matrix acting on coordinate vectors.
struct CorTable {
    IntMatrix mat;  // rows = target rank, cols = domain rank
    GroupElem apply(const INPTargets& tgt, const GroupElem& x) const;
};

// Builds the fixed-condition tower: given a tower {chi_(i)} in the domain
// (the "everything except u" part) and a corestriction table into the split
// target, sets
//   u_part(i) = (-Cor chi_(i+1))_I + (-Cor chi_(i))_Phat
// with Phat the first member of each P pair. Verifies on every entry that
// (1 + sigma_target)(u_part(i)) = -Cor(chi_(i)) and that both parts satisfy
// the tower law. The input tower must have depth+1 entries. Throws if the
// corestriction image is not sigma-invariant on the supplied entries.
struct FixedTower {
    Tower u_part;    // in the target descriptor
    Tower neq_part;  // the input tower, trimmed to depth entries
};
FixedTower build_fixed_tower(const CorTable& cor, const INPTargets& target, const Tower& chi_neq, int depth);

}  // namespace gzb::torsion
