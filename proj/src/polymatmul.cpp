#include "monoplus/polymatmul.hpp"

#include <bit>
#include <stdexcept>

namespace monoplus {

Backend parse_backend(const std::string& name) {
    if (name == "naive") return Backend::naive;
    if (name == "split3_eval") return Backend::split3_eval;
    if (name == "split3_pack") return Backend::split3_pack;
    throw std::invalid_argument("unknown backend '" + name +
                                "' (expected naive, split3_eval or split3_pack)");
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::naive: return "naive";
        case Backend::split3_eval: return "split3_eval";
        case Backend::split3_pack: return "split3_pack";
    }
    return "?";
}

namespace {

PolyMatrix build_monomials(const IntMatrix& M_l, const IntMatrix& M_l1, int ydeg_bound,
                           bool allow_inf, const char* what) {
    if (M_l.rows != M_l1.rows || M_l.cols != M_l1.cols)
        throw std::invalid_argument(std::string(what) + ": level matrices differ in shape");
    PolyMatrix P(M_l.rows, M_l.cols, 1, ydeg_bound);
    for (int i = 0; i < M_l.rows; ++i)
        for (int j = 0; j < M_l.cols; ++j) {
            ExtInt lo = M_l.at(i, j), hi = M_l1.at(i, j);
            if (is_inf(lo) || is_inf(hi)) {
                if (!allow_inf || is_inf(lo) != is_inf(hi))
                    throw std::invalid_argument(std::string(what) + ": unexpected +inf cell");
                continue;  // zero polynomial
            }
            ExtInt xd = lo - 2 * hi;
            if (xd != 0 && xd != 1)
                throw std::invalid_argument(std::string(what) +
                                            ": x-degree outside {0,1}; level state corrupted");
            if (hi < 0 || hi > ydeg_bound)
                throw std::invalid_argument(std::string(what) + ": y-degree exceeds declared bound");
            P.coeff(i, j, static_cast<int>(xd), static_cast<int>(hi)) = 1;
        }
    return P;
}

struct Term {
    int x, y;
    std::uint64_t c;
};

std::vector<std::vector<Term>> term_lists(const PolyMatrix& M) {
    std::vector<std::vector<Term>> t(static_cast<std::size_t>(M.rows) * M.cols);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            auto& lst = t[static_cast<std::size_t>(i) * M.cols + j];
            for (int x = 0; x <= M.xdeg; ++x)
                for (int y = 0; y <= M.ydeg; ++y)
                    if (std::uint64_t cv = M.coeff(i, j, x, y)) lst.push_back({x, y, cv});
        }
    return t;
}

PolyMatrix matmul_naive(const PolyMatrix& Ap, const PolyMatrix& Bp) {
    PolyMatrix C(Ap.rows, Bp.cols, Ap.xdeg + Bp.xdeg, Ap.ydeg + Bp.ydeg);
    auto ta = term_lists(Ap);
    auto tb = term_lists(Bp);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < Ap.rows; ++i)
        for (int k = 0; k < Ap.cols; ++k) {
            const auto& la = ta[static_cast<std::size_t>(i) * Ap.cols + k];
            if (la.empty()) continue;
            for (int j = 0; j < Bp.cols; ++j) {
                const auto& lb = tb[static_cast<std::size_t>(k) * Bp.cols + j];
                for (const Term& a : la)
                    for (const Term& b : lb)
                        C.coeff(i, j, a.x + b.x, a.y + b.y) += a.c * b.c;
            }
        }
    return C;
}

// Largest coefficient any product cell can reach; used to validate the
// modulus of the evaluation backend and the stride of the packing one.
unsigned __int128 coeff_bound(const PolyMatrix& Ap, const PolyMatrix& Bp) {
    std::uint64_t mass_a = 0, max_b = 0;
    for (int i = 0; i < Ap.rows; ++i)
        for (int k = 0; k < Ap.cols; ++k) {
            std::uint64_t m = 0;
            for (int x = 0; x <= Ap.xdeg; ++x)
                for (int y = 0; y <= Ap.ydeg; ++y) m += Ap.coeff(i, k, x, y);
            if (m > mass_a) mass_a = m;
        }
    for (std::uint64_t v : Bp.c)
        if (v > max_b) max_b = v;
    return static_cast<unsigned __int128>(Ap.cols) * mass_a * max_b;
}

// ---- evaluation/interpolation over a prime field -------------------------

constexpr std::uint64_t kNttMod = 998244353;  // 119 * 2^23 + 1, root 3
constexpr std::uint64_t kNttRoot = 3;

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= kNttMod;
    while (e) {
        if (e & 1) r = r * a % kNttMod;
        a = a * a % kNttMod;
        e >>= 1;
    }
    return r;
}

void ntt(std::vector<std::uint64_t>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = powmod(kNttRoot, (kNttMod - 1) / len);
        if (invert) w = powmod(w, kNttMod - 2);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wn = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::uint64_t u = a[i + k], v = a[i + k + len / 2] * wn % kNttMod;
                a[i + k] = (u + v) % kNttMod;
                a[i + k + len / 2] = (u + kNttMod - v) % kNttMod;
                wn = wn * w % kNttMod;
            }
        }
    }
    if (invert) {
        std::uint64_t ninv = powmod(n % kNttMod, kNttMod - 2);
        for (auto& x : a) x = x * ninv % kNttMod;
    }
}

// Per-x-degree slices of a PolyMatrix, each entry a y-coefficient vector.
std::vector<std::vector<std::vector<std::uint64_t>>> x_slices(const PolyMatrix& M,
                                                              std::size_t len) {
    std::vector<std::vector<std::vector<std::uint64_t>>> s(M.xdeg + 1);
    for (int x = 0; x <= M.xdeg; ++x) {
        s[x].assign(static_cast<std::size_t>(M.rows) * M.cols, {});
        for (int i = 0; i < M.rows; ++i)
            for (int j = 0; j < M.cols; ++j) {
                auto& v = s[x][static_cast<std::size_t>(i) * M.cols + j];
                v.assign(len, 0);
                for (int y = 0; y <= M.ydeg; ++y) v[y] = M.coeff(i, j, x, y) % kNttMod;
            }
    }
    return s;
}

PolyMatrix matmul_split3_eval(const PolyMatrix& Ap, const PolyMatrix& Bp) {
    if (coeff_bound(Ap, Bp) >= kNttMod)
        throw std::overflow_error(
            "split3_eval: coefficient bound exceeds the field modulus; "
            "fall back to the naive backend");
    const int yd = Ap.ydeg + Bp.ydeg;
    const std::size_t len = std::bit_ceil(static_cast<std::size_t>(yd) + 1);

    auto sa = x_slices(Ap, len);
    auto sb = x_slices(Bp, len);
    for (auto& slice : sa)
        for (auto& v : slice) ntt(v, false);
    for (auto& slice : sb)
        for (auto& v : slice) ntt(v, false);

    const int xd = Ap.xdeg + Bp.xdeg;
    PolyMatrix C(Ap.rows, Bp.cols, xd, yd);
    std::vector<std::vector<std::vector<std::uint64_t>>> acc(xd + 1);
    for (auto& slice : acc)
        slice.assign(static_cast<std::size_t>(Ap.rows) * Bp.cols,
                     std::vector<std::uint64_t>(len, 0));

    // The three x-coefficient sub-products are independent.
#pragma omp parallel for collapse(2) schedule(static)
    for (int xa = 0; xa <= Ap.xdeg; ++xa)
        for (int xb = 0; xb <= Bp.xdeg; ++xb) {
            for (int i = 0; i < Ap.rows; ++i)
                for (int k = 0; k < Ap.cols; ++k) {
                    const auto& av = sa[xa][static_cast<std::size_t>(i) * Ap.cols + k];
                    for (int j = 0; j < Bp.cols; ++j) {
                        const auto& bv = sb[xb][static_cast<std::size_t>(k) * Bp.cols + j];
                        auto& cv = acc[xa + xb][static_cast<std::size_t>(i) * Bp.cols + j];
                        for (std::size_t f = 0; f < len; ++f)
                            cv[f] = (cv[f] + av[f] * bv[f]) % kNttMod;
                    }
                }
        }

    for (int x = 0; x <= xd; ++x)
        for (int i = 0; i < C.rows; ++i)
            for (int j = 0; j < C.cols; ++j) {
                auto& v = acc[x][static_cast<std::size_t>(i) * C.cols + j];
                ntt(v, true);
                for (int y = 0; y <= yd; ++y) C.coeff(i, j, x, y) = v[y];
            }
    return C;
}

// ---- integer packing ------------------------------------------------------

void mac_words(std::vector<std::uint64_t>& acc, const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b) {
    for (std::size_t ia = 0; ia < a.size(); ++ia) {
        if (!a[ia]) continue;
        unsigned __int128 carry = 0;
        for (std::size_t ib = 0; ib < b.size(); ++ib) {
            unsigned __int128 cur =
                static_cast<unsigned __int128>(a[ia]) * b[ib] + acc[ia + ib] + carry;
            acc[ia + ib] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        for (std::size_t idx = ia + b.size(); carry; ++idx) {
            unsigned __int128 cur = static_cast<unsigned __int128>(acc[idx]) + carry;
            acc[idx] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
    }
}

std::uint64_t read_field(const std::vector<std::uint64_t>& w, std::size_t bit, int s) {
    std::size_t word = bit / 64, off = bit % 64;
    unsigned __int128 v = w[word];
    if (word + 1 < w.size()) v |= static_cast<unsigned __int128>(w[word + 1]) << 64;
    return static_cast<std::uint64_t>((v >> off) & ((std::uint64_t(1) << s) - 1));
}

PolyMatrix matmul_split3_pack(const PolyMatrix& Ap, const PolyMatrix& Bp) {
    unsigned __int128 bound = coeff_bound(Ap, Bp);
    int stride = 1;
    while (stride < 64 && (static_cast<unsigned __int128>(1) << stride) <= bound) ++stride;
    if (stride >= 64)
        throw std::overflow_error(
            "split3_pack: stride cannot hold the coefficient bound; "
            "fall back to the naive backend");

    const int yd = Ap.ydeg + Bp.ydeg;
    auto words_for = [&](int ydeg) {
        return (static_cast<std::size_t>(ydeg + 1) * stride + 63) / 64 + 1;
    };
    const std::size_t wa = words_for(Ap.ydeg), wb = words_for(Bp.ydeg);
    const std::size_t wc = wa + wb + 1;

    auto pack = [&](const PolyMatrix& M, std::size_t w) {
        std::vector<std::vector<std::vector<std::uint64_t>>> s(M.xdeg + 1);
        for (int x = 0; x <= M.xdeg; ++x) {
            s[x].assign(static_cast<std::size_t>(M.rows) * M.cols,
                        std::vector<std::uint64_t>(w, 0));
            for (int i = 0; i < M.rows; ++i)
                for (int j = 0; j < M.cols; ++j) {
                    auto& pw = s[x][static_cast<std::size_t>(i) * M.cols + j];
                    for (int y = 0; y <= M.ydeg; ++y) {
                        std::uint64_t cv = M.coeff(i, j, x, y);
                        if (!cv) continue;
                        std::size_t bit = static_cast<std::size_t>(y) * stride;
                        pw[bit / 64] |= cv << (bit % 64);
                        if (bit % 64 && (bit % 64) + stride > 64)
                            pw[bit / 64 + 1] |= cv >> (64 - bit % 64);
                    }
                }
        }
        return s;
    };
    auto sa = pack(Ap, wa);
    auto sb = pack(Bp, wb);

    const int xd = Ap.xdeg + Bp.xdeg;
    PolyMatrix C(Ap.rows, Bp.cols, xd, yd);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < Ap.rows; ++i) {
        std::vector<std::uint64_t> acc(wc);
        for (int j = 0; j < Bp.cols; ++j)
            for (int xa = 0; xa <= Ap.xdeg; ++xa)
                for (int xb = 0; xb <= Bp.xdeg; ++xb) {
                    std::fill(acc.begin(), acc.end(), 0);
                    for (int k = 0; k < Ap.cols; ++k)
                        mac_words(acc, sa[xa][static_cast<std::size_t>(i) * Ap.cols + k],
                                  sb[xb][static_cast<std::size_t>(k) * Bp.cols + j]);
                    for (int y = 0; y <= yd; ++y)
                        C.coeff(i, j, xa + xb, y) +=
                            read_field(acc, static_cast<std::size_t>(y) * stride, stride);
                }
    }
    return C;
}

}  // namespace

PolyMatrix build_Ap(const IntMatrix& A_l, const IntMatrix& A_l1, int ydeg_bound) {
    return build_monomials(A_l, A_l1, ydeg_bound, /*allow_inf=*/true, "build_Ap");
}

PolyMatrix build_Bp(const IntMatrix& B_l, const IntMatrix& B_l1, int ydeg_bound) {
    return build_monomials(B_l, B_l1, ydeg_bound, /*allow_inf=*/false, "build_Bp");
}

PolyMatrix poly_matmul(const PolyMatrix& Ap, const PolyMatrix& Bp, Backend backend) {
    if (Ap.cols != Bp.rows)
        throw std::invalid_argument("poly_matmul: inner dimensions differ");
    if (Ap.xdeg > 1 || Bp.xdeg > 1)
        throw std::invalid_argument("poly_matmul: input x-degree must be <= 1");
    switch (backend) {
        case Backend::naive: return matmul_naive(Ap, Bp);
        case Backend::split3_eval: return matmul_split3_eval(Ap, Bp);
        case Backend::split3_pack: return matmul_split3_pack(Ap, Bp);
    }
    throw std::logic_error("poly_matmul: bad backend");
}

}  // namespace monoplus
