#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monoplus/matrix.hpp"

namespace monoplus {

enum class Backend { naive, split3_eval, split3_pack };

Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);

// Matrix of bivariate polynomials with x-degree <= 1 (inputs) or <= 2
// (products) and y-degree <= ydeg. Coefficients are exact non-negative
// counts. The all-zero table encodes a +inf source entry.
struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    int xdeg = 1;
    int ydeg = 0;
    std::vector<std::uint64_t> c;  // (i, j, x, y) row-major

    PolyMatrix() = default;
    PolyMatrix(int r, int cc, int xd, int yd)
        : rows(r), cols(cc), xdeg(xd), ydeg(yd),
          c(static_cast<std::size_t>(r) * cc * (xd + 1) * (yd + 1), 0) {}

    std::size_t idx(int i, int j, int x, int y) const {
        return ((static_cast<std::size_t>(i) * cols + j) * (xdeg + 1) + x) * (ydeg + 1) + y;
    }
    std::uint64_t& coeff(int i, int j, int x, int y) { return c[idx(i, j, x, y)]; }
    std::uint64_t coeff(int i, int j, int x, int y) const { return c[idx(i, j, x, y)]; }
};

// Monomial matrix x^(A_l - 2*A_l1) * y^(A_l1) per finite cell, the zero
// polynomial for +inf cells. Throws if A_l - 2*A_l1 leaves {0, 1} on a
// finite cell (level-state corruption upstream).
PolyMatrix build_Ap(const IntMatrix& A_l, const IntMatrix& A_l1, int ydeg_bound);

// Same construction for B, which has no +inf entries.
PolyMatrix build_Bp(const IntMatrix& B_l, const IntMatrix& B_l1, int ydeg_bound);

// Exact coefficient-level standard product. Output x-degree is
// Ap.xdeg + Bp.xdeg (<= 2), y-degree Ap.ydeg + Bp.ydeg. All backends
// produce identical tables; `naive` is the oracle the others are tested
// against. The packing backend throws if its stride cannot hold the
// coefficient bound, with instructions to fall back to `naive`.
PolyMatrix poly_matmul(const PolyMatrix& Ap, const PolyMatrix& Bp, Backend backend);

}  // namespace monoplus
