#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "monoplus/extint.hpp"

namespace monoplus {

// Dense row-major rectangular matrix of extended integers.
// Indices are 0-based throughout the code base.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<ExtInt> v;

    IntMatrix() = default;
    IntMatrix(int r, int c, ExtInt fill = 0)
        : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    ExtInt& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
    ExtInt at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }

    const ExtInt* row(int i) const { return v.data() + static_cast<std::size_t>(i) * cols; }
    ExtInt* row(int i) { return v.data() + static_cast<std::size_t>(i) * cols; }

    bool operator==(const IntMatrix&) const = default;

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

// Instance parameters: A is n x m, B is m x n, beta = log_n m, and
// value_bound is the concrete bound on finite entries of B (the
// asymptotic O(n^mu) with the constant made explicit).
struct InstanceMeta {
    int n = 0;
    int m = 0;
    double beta = 0.0;
    double mu = 0.0;
    ExtInt value_bound = 0;
};

InstanceMeta make_meta(const IntMatrix& A, const IntMatrix& B);

// Text format: first line "rows cols", then `rows` lines of `cols`
// whitespace-separated tokens, each a decimal integer or "inf".
struct MatrixParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntMatrix read_matrix(std::istream& in);
IntMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const IntMatrix& M);
void write_matrix_file(const std::string& path, const IntMatrix& M);

}  // namespace monoplus
