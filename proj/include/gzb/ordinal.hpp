#pragma once

#include <string>

namespace gzb {

// Ordinals up to omega*2, plus an Infinity marker for divisible elements.
// Total order: Finite(m) < OmegaPlus(m') < OmegaTwo < Infinity.
class Ordinal {
public:
    enum class Kind { Finite, OmegaPlus, OmegaTwo, Infinity };

    static Ordinal finite(long m);
    static Ordinal omega_plus(long m);  // omega_plus(0) is omega itself
    static Ordinal omega2() { return Ordinal(Kind::OmegaTwo, 0); }
    static Ordinal infinity() { return Ordinal(Kind::Infinity, 0); }

    Kind kind() const { return kind_; }
    long offset() const { return m_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }

    // The successor ordinal; not defined past OmegaTwo.
    Ordinal successor() const;

    bool operator==(const Ordinal& o) const { return kind_ == o.kind_ && m_ == o.m_; }
    bool operator!=(const Ordinal& o) const { return !(*this == o); }
    bool operator<(const Ordinal& o) const;
    bool operator<=(const Ordinal& o) const { return *this < o || *this == o; }
    bool operator>(const Ordinal& o) const { return o < *this; }
    bool operator>=(const Ordinal& o) const { return o <= *this; }

    // "3", "ω", "ω+2", "ω2", "∞"
    std::string to_string() const;

private:
    Ordinal(Kind k, long m) : kind_(k), m_(m) {}
    Kind kind_;
    long m_;
};

Ordinal min(const Ordinal& a, const Ordinal& b);

}  // namespace gzb
