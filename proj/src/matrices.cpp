#include "monoplus/matrices.hpp"

#include <string>

namespace monoplus {

IntMatrix naive_minplus(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows)
        throw std::invalid_argument("naive_minplus: inner dimensions differ");
    IntMatrix C(A.rows, B.cols, kInf);
    for (int i = 0; i < A.rows; ++i) {
        const ExtInt* a = A.row(i);
        ExtInt* c = C.row(i);
        for (int k = 0; k < A.cols; ++k) {
            if (is_inf(a[k])) continue;
            const ExtInt ak = a[k];
            const ExtInt* b = B.row(k);
            for (int j = 0; j < B.cols; ++j) {
                if (is_inf(b[j])) continue;
                ExtInt s = ext_add(ak, b[j]);
                if (s < c[j]) c[j] = s;
            }
        }
    }
    return C;
}

bool is_row_monotone(const IntMatrix& B, ExtInt bound) {
    for (int i = 0; i < B.rows; ++i) {
        const ExtInt* r = B.row(i);
        for (int j = 0; j < B.cols; ++j) {
            if (is_inf(r[j]) || r[j] < 0 || r[j] > bound) return false;
            if (j > 0 && r[j] < r[j - 1]) return false;
        }
    }
    return true;
}

bool is_col_monotone(const IntMatrix& A, ExtInt bound) {
    for (int j = 0; j < A.cols; ++j) {
        for (int i = 0; i < A.rows; ++i) {
            ExtInt x = A.at(i, j);
            if (is_inf(x) || x < 0 || x > bound) return false;
            if (i > 0 && x < A.at(i - 1, j)) return false;
        }
    }
    return true;
}

std::pair<IntMatrix, BdOffset> bd_to_monotone(const IntMatrix& X, std::int64_t delta) {
    auto check = [&](int i0, int j0, int i1, int j1) {
        ExtInt a = X.at(i0, j0), b = X.at(i1, j1);
        if (is_inf(a) || is_inf(b))
            throw std::invalid_argument("bd_to_monotone: entries must be finite");
        std::int64_t d = a > b ? a - b : b - a;
        if (d > delta)
            throw std::invalid_argument(
                "bd_to_monotone: |X[" + std::to_string(i0) + "][" + std::to_string(j0) +
                "] - X[" + std::to_string(i1) + "][" + std::to_string(j1) + "]| = " +
                std::to_string(d) + " exceeds delta = " + std::to_string(delta));
    };
    if (X.rows == 0 || X.cols == 0)
        throw std::invalid_argument("bd_to_monotone: empty matrix");
    for (int i = 0; i < X.rows; ++i)
        for (int j = 0; j < X.cols; ++j) {
            if (j + 1 < X.cols) check(i, j, i, j + 1);
            if (i + 1 < X.rows) check(i, j, i + 1, j);
        }

    BdOffset off{delta, X.at(0, 0)};
    IntMatrix Y(X.rows, X.cols);
    for (int i = 0; i < X.rows; ++i)
        for (int j = 0; j < X.cols; ++j)
            Y.at(i, j) = X.at(i, j) + delta * static_cast<std::int64_t>(j + 1) - off.base;
    return {std::move(Y), off};
}

std::pair<IntMatrix, std::vector<std::int64_t>> normalize_A(const IntMatrix& A,
                                                            ExtInt value_bound) {
    IntMatrix N(A.rows, A.cols, kInf);
    std::vector<std::int64_t> offsets(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        ExtInt rmin = kInf;
        for (int k = 0; k < A.cols; ++k) rmin = ext_min(rmin, A.at(i, k));
        if (is_inf(rmin)) continue;  // all-inf row stays all-inf, offset 0
        offsets[i] = rmin;
        for (int k = 0; k < A.cols; ++k) {
            ExtInt x = A.at(i, k);
            if (is_inf(x)) continue;
            ExtInt d = x - rmin;
            // Entries above value_bound cannot realize the row minimum:
            // the rmin column already bounds C' by value_bound.
            N.at(i, k) = d > value_bound ? kInf : d;
        }
    }
    return {std::move(N), std::move(offsets)};
}

IntMatrix transpose_product(const IntMatrix& A, const IntMatrix& B,
                            const MinPlusSolver& solver) {
    ExtInt maxa = 0;
    for (ExtInt x : A.v)
        if (!is_inf(x) && x > maxa) maxa = x;
    if (!is_col_monotone(A, maxa))
        throw std::invalid_argument("transpose_product: A is not column-monotone");
    return solver(B.transposed(), A.transposed()).transposed();
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // These witnesses are exact for every 64-bit integer.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool satisfies_assumption1(const IntMatrix& A, const IntMatrix& B, std::int64_t p) {
    for (ExtInt x : A.v) {
        if (is_inf(x)) continue;
        if (x < 0 || 3 * (x % p) >= p) return false;
    }
    for (int k = 0; k < B.rows; ++k) {
        const ExtInt* r = B.row(k);
        for (int j = 0; j < B.cols; ++j) {
            if (is_inf(r[j]) || r[j] < 0 || 3 * (r[j] % p) >= p) return false;
            if (j > 0 && r[j] < r[j - 1]) return false;
        }
    }
    return true;
}

std::array<SplitPair, 9> assumption1_split(const IntMatrix& A, const IntMatrix& B,
                                           std::int64_t p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("assumption1_split: p must be prime");

    const std::int64_t c1 = (p + 2) / 3;       // ceil(p/3)
    const std::int64_t c2 = (2 * p + 2) / 3;   // ceil(2p/3)

    // Residue class: 0 for [0, p/3), 1 for [p/3, 2p/3), 2 for [2p/3, p).
    auto cls = [&](std::int64_t r) { return 3 * r < p ? 0 : (3 * r < 2 * p ? 1 : 2); };

    std::array<IntMatrix, 3> Asplit{IntMatrix(A.rows, A.cols, kInf),
                                    IntMatrix(A.rows, A.cols, kInf),
                                    IntMatrix(A.rows, A.cols, kInf)};
    const std::int64_t ashift[3] = {0, c1, c2};
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            ExtInt x = A.at(i, j);
            if (is_inf(x)) continue;
            if (x < 0) throw std::invalid_argument("assumption1_split: negative A entry");
            int c = cls(x % p);
            Asplit[c].at(i, j) = x - ashift[c];
        }

    std::array<IntMatrix, 3> Bsplit{IntMatrix(B.rows, B.cols), IntMatrix(B.rows, B.cols),
                                    IntMatrix(B.rows, B.cols)};
    std::array<std::vector<std::uint8_t>, 3> Bmask;
    for (auto& m : Bmask) m.assign(B.v.size(), 0);
    const std::int64_t bshift[3] = {0, c1, c2};
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            ExtInt x = B.at(i, j);
            if (is_inf(x) || x < 0)
                throw std::invalid_argument("assumption1_split: B entries must be finite and non-negative");
            std::int64_t q = x / p;
            std::size_t idx = static_cast<std::size_t>(i) * B.cols + j;
            std::int64_t b0, b1, b2;
            switch (cls(x % p)) {
                case 0:
                    b0 = x; b1 = p * q + c1; b2 = p * q + c2;
                    Bmask[0][idx] = 1;
                    break;
                case 1:
                    b1 = x; b0 = p * (q + 1); b2 = p * q + c2;
                    Bmask[1][idx] = 1;
                    break;
                default:
                    b2 = x; b0 = p * (q + 1); b1 = p * (q + 1) + c1;
                    Bmask[2][idx] = 1;
                    break;
            }
            Bsplit[0].at(i, j) = b0 - bshift[0];
            Bsplit[1].at(i, j) = b1 - bshift[1];
            Bsplit[2].at(i, j) = b2 - bshift[2];
        }

    std::array<SplitPair, 9> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            SplitPair& sp = out[a * 3 + b];
            sp.A = Asplit[a];
            sp.B = Bsplit[b];
            sp.shift = ashift[a] + bshift[b];
            sp.from_original_B = Bmask[b];
        }
    return out;
}

}  // namespace monoplus
