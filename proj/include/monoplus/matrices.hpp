#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "monoplus/matrix.hpp"

namespace monoplus {

// Serial reference product. C[i][j] = min_k A[i][k] + B[k][j]; the entry
// is +inf iff every term is +inf. This is the oracle every fast path is
// tested against and must stay independent of them.
IntMatrix naive_minplus(const IntMatrix& A, const IntMatrix& B);

// True iff every row of B is non-decreasing and every entry is finite,
// non-negative and at most `bound`.
bool is_row_monotone(const IntMatrix& B, ExtInt bound);

// Same predicate on columns.
bool is_col_monotone(const IntMatrix& A, ExtInt bound);

// Affine offset produced by the bounded-difference -> monotone transform:
// X'[i][j] = X[i][j] + delta*(j+1) - base, base = X[0][0].
// undo_on_product removes the offset from a product computed with X' in
// the B position.
struct BdOffset {
    std::int64_t delta = 0;
    std::int64_t base = 0;

    void undo_on_product(IntMatrix& C) const {
        for (int i = 0; i < C.rows; ++i)
            for (int j = 0; j < C.cols; ++j)
                if (!is_inf(C.at(i, j)))
                    C.at(i, j) -= delta * static_cast<std::int64_t>(j + 1) - base;
    }
};

// Transforms a delta-bounded-difference matrix into a row-monotone one.
// Throws if X violates the bounded-difference predicate, naming the cell.
std::pair<IntMatrix, BdOffset> bd_to_monotone(const IntMatrix& X, std::int64_t delta);

// Per-row normalization: subtracts the row minimum and replaces entries
// whose normalized value exceeds value_bound by +inf. Guarantees
//   naive_minplus(A, B)[i][j] = r[i] + naive_minplus(A', B)[i][j]
// for every B with entries in [0, value_bound]. All-inf rows keep r = 0.
std::pair<IntMatrix, std::vector<std::int64_t>> normalize_A(const IntMatrix& A,
                                                            ExtInt value_bound);

// Computes A * B for column-monotone A via the transpose identity
// (A * B)^T = B^T * A^T. `solver` receives (B^T, A^T), i.e. a product
// whose second factor is row-monotone.
using MinPlusSolver = std::function<IntMatrix(const IntMatrix&, const IntMatrix&)>;
IntMatrix transpose_product(const IntMatrix& A, const IntMatrix& B,
                            const MinPlusSolver& solver);

// One of the nine reduced instances. `shift` must be added back to the
// sub-product before taking the element-wise minimum. `from_original_B`
// flags entries of B kept verbatim (diagnostics only).
struct SplitPair {
    IntMatrix A;
    IntMatrix B;
    std::int64_t shift = 0;
    std::vector<std::uint8_t> from_original_B;
};

// Nine-way reduction to instances satisfying the residue assumption:
// (A mod p) < p/3 or +inf, (B mod p) < p/3, B rows non-decreasing.
// min over pairs of (naive_minplus(pair.A, pair.B) + pair.shift) equals
// naive_minplus(A, B), exactly, for every p.
std::array<SplitPair, 9> assumption1_split(const IntMatrix& A, const IntMatrix& B,
                                           std::int64_t p);

// The residue predicate the nine pairs must satisfy.
bool satisfies_assumption1(const IntMatrix& A, const IntMatrix& B, std::int64_t p);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace monoplus
