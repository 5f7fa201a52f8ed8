#pragma once

#include <string>
#include <vector>

#include "gzb/rational.hpp"

namespace gzb {

// Dense square-ish integer matrix, just enough linear algebra for the
// involution machinery (r <= ~8).
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Integer> a;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Integer(0)) {}

    Integer& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n);
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_identity() const;

    std::string to_string() const;
};

// Integer diagonalization D = U * A * V with unimodular U, V; also returns
// Uinv with U * Uinv = I. Diagonal entries are nonnegative (no divisibility
// chain; callers only need the rank and the transforms).
struct SmithResult {
    IntMatrix D, U, Uinv, V;
};
SmithResult smith_normal_form(IntMatrix A);

}  // namespace gzb
