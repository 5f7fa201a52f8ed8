#pragma once

#include <optional>

#include "gzb/torsion.hpp"

// Exponent-2-kernel quotient models and tower lifting through them.

namespace gzb::torsion {

// A surjection-style homomorphism phi between descriptor groups (Cyclic and
// Pruefer summands only), given by an integer matrix acting on coordinates
// embedded in Q2/Z2 (a Cyclic(n) residue c embeds as c/2^n). Validity:
// well-definedness (2^n * column image = 0 for a Cyclic(n) source summand)
// and exponent-2 kernel, both checked by validate().
struct QuotientModel {
    DescriptorPtr domain, codomain;
    IntMatrix map;  // rows = codomain rank, cols = domain rank

    GroupElem apply(const GroupElem& x) const;

    // Throws std::invalid_argument on ill-formed maps or kernels of exponent
    // greater than 2 (checked exhaustively on the domain 4-torsion).
    void validate() const;
};

// A preimage of y under the model (coordinates solved exactly mod 2^T), or
// nullopt when y is outside the image. Deterministic: free variables zero.
std::optional<GroupElem> preimage(const QuotientModel& m, const GroupElem& y, int T);

// Lifts a divisible tower: given alpha with phi(alpha) = tower_down[0] and a
// tower over it in the codomain, produces alpha_n = 2 * phi^{-1}(tower_down[n+1]).
// Well-defined independently of the preimage choice because the kernel has
// exponent 2. Verifies phi(alpha_n) = tower_down[n] and the tower law up to
// `depth`. Throws when tower_down is invalid or a required preimage is
// missing (phi not surjective onto the needed elements).
Tower lift_tower(const QuotientModel& m, const GroupElem& alpha, const Tower& tower_down, int depth);

}  // namespace gzb::torsion
