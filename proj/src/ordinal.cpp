#include "gzb/ordinal.hpp"

#include <stdexcept>

namespace gzb {

Ordinal Ordinal::finite(long m) {
    if (m < 0) throw std::invalid_argument("Ordinal::finite: negative");
    return Ordinal(Kind::Finite, m);
}

Ordinal Ordinal::omega_plus(long m) {
    if (m < 0) throw std::invalid_argument("Ordinal::omega_plus: negative");
    return Ordinal(Kind::OmegaPlus, m);
}

Ordinal Ordinal::successor() const {
    switch (kind_) {
        case Kind::Finite: return finite(m_ + 1);
        case Kind::OmegaPlus: return omega_plus(m_ + 1);
        default: throw std::domain_error("Ordinal::successor past omega*2");
    }
}

bool Ordinal::operator<(const Ordinal& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    return m_ < o.m_;
}

std::string Ordinal::to_string() const {
    switch (kind_) {
        case Kind::Finite: return std::to_string(m_);
        case Kind::OmegaPlus: return m_ == 0 ? "ω" : "ω+" + std::to_string(m_);
        case Kind::OmegaTwo: return "ω2";
        default: return "∞";
    }
}

Ordinal min(const Ordinal& a, const Ordinal& b) { return a < b ? a : b; }

}  // namespace gzb
