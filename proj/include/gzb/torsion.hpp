#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gzb/dyadic.hpp"
#include "gzb/intmatrix.hpp"
#include "gzb/ordinal.hpp"

// Structured countable abelian 2-group engine: descriptor groups, element
// arithmetic, heights up to omega*2, Ulm invariants, divisible towers.

namespace gzb::torsion {

struct SummandKind {
    enum class Tag { Cyclic, Pruefer, GenPruefer };
    Tag tag;
    int n = 0;  // Cyclic: Z/2^n; GenPruefer: generators e_k, x with 2^k e_k = x, 2^n x = 0

    static SummandKind cyclic(int n);
    static SummandKind pruefer() { return {Tag::Pruefer, 0}; }
    static SummandKind gen_pruefer(int n);

    bool operator==(const SummandKind& o) const { return tag == o.tag && n == o.n; }
    std::string to_string() const;  // "C3", "P", "G2"
};

// Order-2 automorphism description: per-summand tags, or an integer matrix
// acting on an all-Pruefer descriptor.
struct InvolutionSpec {
    struct Fixed {};
    struct Negated {};
    struct SwapPair {
        int partner;
    };
    using Tag = std::variant<Fixed, Negated, SwapPair>;

    std::vector<Tag> tags;         // empty when matrix form is used
    std::optional<IntMatrix> mat;  // requires all-Pruefer descriptor, M^2 = I

    bool is_matrix() const { return mat.has_value(); }
};

class GroupDescriptor {
public:
    GroupDescriptor() = default;
    explicit GroupDescriptor(std::vector<SummandKind> summands,
                             std::optional<InvolutionSpec> action = std::nullopt);

    const std::vector<SummandKind>& summands() const { return summands_; }
    std::size_t size() const { return summands_.size(); }
    const std::optional<InvolutionSpec>& action() const { return action_; }
    bool all_pruefer() const;
    long divisible_rank() const;  // number of Pruefer summands

    bool operator==(const GroupDescriptor& o) const;
    std::string to_string() const;

private:
    std::vector<SummandKind> summands_;
    std::optional<InvolutionSpec> action_;
    void validate() const;
};

using DescriptorPtr = std::shared_ptr<const GroupDescriptor>;
DescriptorPtr make_descriptor(std::vector<SummandKind> summands,
                              std::optional<InvolutionSpec> action = std::nullopt);

// GenPruefer coordinate in normal form: finitely supported a_k with
// 0 <= a_k < 2^k (overflow folded into t via 2^k e_k = x), 0 <= t < 2^n.
struct GenPrueferCoord {
    std::map<int, Integer> a;
    Integer t = 0;
    bool operator==(const GenPrueferCoord& o) const { return a == o.a && t == o.t; }
};

using Coord = std::variant<Integer, Dyadic, GenPrueferCoord>;

class GroupElem {
public:
    static GroupElem zero(DescriptorPtr desc);

    const DescriptorPtr& descriptor() const { return desc_; }
    const std::vector<Coord>& coords() const { return coords_; }
    bool is_zero() const;

    // Mutating setters normalize; summand index bounds are checked.
    void set_cyclic(std::size_t i, Integer residue);
    void set_pruefer(std::size_t i, Dyadic v);
    void set_gen_a(std::size_t i, int k, Integer v);  // coefficient of e_k
    void set_gen_t(std::size_t i, Integer v);

    bool operator==(const GroupElem& o) const;
    bool operator!=(const GroupElem& o) const { return !(*this == o); }
    bool operator<(const GroupElem& o) const;  // for set/map use

    std::string to_string() const;

private:
    DescriptorPtr desc_;
    std::vector<Coord> coords_;
    friend GroupElem elem_add(const GroupElem&, const GroupElem&);
    friend GroupElem elem_neg(const GroupElem&);
    friend GroupElem mul_pow2(const GroupElem&, long);
    friend std::vector<GroupElem> halves(const GroupElem&, int);
    friend GroupElem apply_action(const GroupElem&);
    friend class TruncatedGroup;
    void normalize();
};

// Componentwise sum in normal form; descriptors must agree.
GroupElem elem_add(const GroupElem& x, const GroupElem& y);
GroupElem elem_neg(const GroupElem& x);
GroupElem elem_sub(const GroupElem& x, const GroupElem& y);
GroupElem mul_pow2(const GroupElem& x, long j);  // 2^j * x, j >= 0

// All y with 2y = x supported within the element's GenPruefer support plus
// fresh indices up to `window` (default: max support index + 1 per summand).
// Complete for Cyclic/Pruefer summands; the full solution set is infinite
// when a GenPruefer summand is present, hence the window.
std::vector<GroupElem> halves(const GroupElem& x, int window = -1);

// Least lambda with x in G(lambda) \ G(lambda+1); Infinity iff x lies in the
// divisible subgroup (including x = 0 by convention). Per-summand closed
// forms combined by the min rule.
Ordinal height(const GroupElem& x);

// Membership in the divisible subgroup (Pruefer coordinates are free; all
// Cyclic and GenPruefer coordinates must vanish).
bool in_divisible_subgroup(const GroupElem& x);

// Order exponent: least j with 2^j x = 0, or nullopt if x has infinite order
// (never happens here: all coordinates are torsion).
long order_exponent(const GroupElem& x);

// dim over Z/2 of P(lambda)/P(lambda+1), from per-summand contributions:
//   Cyclic(n):    1 at lambda = n-1, else 0
//   Pruefer:      0 everywhere (divisible)
//   GenPruefer(n): 1 at every finite lambda; 1 at omega+(n-1); else 0
// lambda must not be Infinity.
long ulm_invariant(const GroupDescriptor& g, const Ordinal& lambda);

// Ulm length of the described group (0 for divisible).
Ordinal ulm_length(const GroupDescriptor& g);

// Apply the descriptor's involution (throws if none).
GroupElem apply_action(const GroupElem& x);

// Divisible tower: entries alpha_0, alpha_1, ... with 2^j alpha_i = alpha_(i-j).
struct Tower {
    std::vector<GroupElem> entries;

    const GroupElem& operator[](std::size_t i) const { return entries.at(i); }
    std::size_t size() const { return entries.size(); }
};

// Checks 2^j alpha_i = alpha_(i-j) for all j <= i <= upto.
bool verify_tower(const Tower& t, std::size_t upto);

// Descriptor grammar: summand tokens C<n>, P, G<n> joined by '+', optional
// action suffix "| fixed,neg,swap(i,j),..." or "| matrix [[..],..]".
GroupDescriptor parse_descriptor(const std::string& s);

}  // namespace gzb::torsion
