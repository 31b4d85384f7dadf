#include "monoplus/monoplus.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "monoplus/segtree.hpp"

namespace monoplus {

namespace {

constexpr double kAlphaEps = 0.01;

IntMatrix level_matrix(const IntMatrix& M, std::int64_t p, int l, bool preserve_inf) {
    IntMatrix R(M.rows, M.cols);
    for (std::size_t t = 0; t < M.v.size(); ++t) {
        ExtInt x = M.v[t];
        if (is_inf(x)) {
            if (!preserve_inf)
                throw std::invalid_argument("level_matrix: unexpected +inf entry");
            R.v[t] = kInf;
        } else {
            if (x < 0) throw std::invalid_argument("level_matrix: negative entry");
            R.v[t] = (x % p) >> l;
        }
    }
    return R;
}

// Run-length boundaries of a row: start indices of maximal constant runs
// plus a sentinel n at the end.
std::vector<int> run_starts(const ExtInt* row, int n) {
    std::vector<int> s{0};
    for (int j = 1; j < n; ++j)
        if (row[j] != row[j - 1]) s.push_back(j);
    s.push_back(n);
    return s;
}

void check_level_invariants(const LevelState& prev, LevelState& st, const Quotient& q,
                            const IntMatrix& A, const IntMatrix& B,
                            const AlgoParams& params, const IntMatrix& C) {
    const int n = C.rows, m = A.cols, l = st.l, r = params.offset_radius;
    const std::int64_t p = params.p;
    const std::int64_t step = std::int64_t(1) << l;
    const std::int64_t spread = 2 * (step - 1);
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("invariant violation at level " + std::to_string(l) +
                                 ": " + msg);
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExtInt c = C.at(i, j);
            ExtInt cl = st.C_l.at(i, j);
            if (is_inf(c)) {
                if (!is_inf(cl)) fail("C_l finite where C is +inf");
                continue;
            }
            std::int64_t cmod = c % p;
            if (is_inf(cl) || cl < floor_div(cmod - spread, step) ||
                cl > floor_div(cmod + spread, step))
                fail("C_l outside the rounding corridor of (C mod p) / 2^l");
            ExtInt cl1 = prev.C_l.at(i, j);
            if (!is_inf(cl1)) {
                std::int64_t d = cl - 2 * cl1;
                if (d < -7 || d > 8) fail("C_l - 2*C_{l+1} outside [-7, 8]");
            }
        }

    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (q.Cstar.at(i, j) == q.Cstar.at(i, j - 1) &&
                st.C_l.at(i, j) < st.C_l.at(i, j - 1))
                fail("C_l decreases within a constant C* run");

    // Coverage containment of T^(l) in T^(l+1).
    std::unordered_map<std::int64_t, std::vector<std::pair<int, int>>> old_cov;
    for (const auto& sset : prev.T.sets)
        for (const Segment& s : sset)
            old_cov[static_cast<std::int64_t>(s.i) * m + s.k].emplace_back(s.j0, s.j1);
    for (const auto& sset : st.T.sets)
        for (const Segment& s : sset) {
            auto it = old_cov.find(static_cast<std::int64_t>(s.i) * m + s.k);
            bool ok = false;
            if (it != old_cov.end())
                for (auto [a, e] : it->second)
                    if (a <= s.j0 && s.j1 <= e) {
                        ok = true;
                        break;
                    }
            if (!ok) fail("bigcup: level-l segment not covered at level l+1");
        }

    for (int b = -r; b <= r; ++b)
        for (const Segment& s : st.T.at_offset(b)) {
            if (is_inf(A.at(s.i, s.k))) fail("segment with +inf A entry");
            for (int j = s.j0; j <= s.j1; ++j)
                if (st.B_l.at(s.k, j) != st.B_l.at(s.k, s.j0) ||
                    q.Bstar.at(s.k, j) != q.Bstar.at(s.k, s.j0) ||
                    st.C_l.at(s.i, j) != st.C_l.at(s.i, s.j0) ||
                    q.Cstar.at(s.i, j) != q.Cstar.at(s.i, s.j0))
                    fail("segment four-constancy");
            if (st.A_l.at(s.i, s.k) + st.B_l.at(s.k, s.j0) != st.C_l.at(s.i, s.j0) + b)
                fail("segment offset membership");
            if (ext_add(q.Astar.at(s.i, s.k), q.Bstar.at(s.k, s.j0)) == q.Cstar.at(s.i, s.j0))
                fail("segment quotient equality not violated");
        }

    // Existence of some b in [-r, r] for every min-plus witness.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExtInt c = C.at(i, j);
            if (is_inf(c)) continue;
            for (int k = 0; k < m; ++k) {
                ExtInt a = A.at(i, k);
                if (is_inf(a) || a + B.at(k, j) != c) continue;
                std::int64_t d =
                    st.A_l.at(i, k) + st.B_l.at(k, j) - st.C_l.at(i, j);
                if (std::llabs(d) > r) fail("existence of offset b for a witness");
                st.max_witness_b =
                    std::max(st.max_witness_b, static_cast<int>(std::llabs(d)));
            }
        }
}

}  // namespace

AlgoParams choose_params(const InstanceMeta& meta, const ExponentModel& model,
                         std::uint64_t seed, std::optional<double> alpha_override,
                         std::optional<double> practical_omega) {
    AlgoParams pr;
    pr.rng_seed = seed;

    double omega_hat;
    if (practical_omega) {
        omega_hat = *practical_omega;
    } else {
        double bmax = model.points.back().first;
        // Above the table, pad the rectangle with square products:
        // omega(beta) <= omega(bmax) + (beta - bmax).
        omega_hat = meta.beta <= bmax
                        ? omega_of(model, std::max(meta.beta, 0.0))
                        : omega_of(model, bmax) + (meta.beta - bmax);
    }

    double alpha;
    if (alpha_override) {
        alpha = *alpha_override;
        if (alpha < kAlphaEps) {
            pr.fallback = true;
            return pr;
        }
    } else {
        double raw = (1.0 + meta.beta + meta.mu - omega_hat) / 2.0;
        if (raw < kAlphaEps) {
            pr.fallback = true;
            return pr;
        }
        alpha = std::clamp(raw, kAlphaEps, std::max(meta.mu, kAlphaEps));
    }
    pr.alpha = alpha;

    double scale = std::pow(static_cast<double>(meta.n), alpha);
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(40.0 * scale));
    std::int64_t hi = static_cast<std::int64_t>(std::floor(80.0 * scale));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    for (int it = 0; it < 4096 && !pr.p; ++it) {
        std::int64_t cand = dist(rng);
        if (is_prime_u64(static_cast<std::uint64_t>(cand))) pr.p = cand;
    }
    if (!pr.p) {
        // Rejection exhausted; scan to distinguish an unlucky draw from a
        // genuinely prime-free range.
        for (std::int64_t c = lo; c <= hi && !pr.p; ++c)
            if (is_prime_u64(static_cast<std::uint64_t>(c))) pr.p = c;
    }
    if (!pr.p) {
        pr.fallback = true;
        return pr;
    }
    pr.h = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(pr.p)));
    return pr;
}

Quotient compute_quotient(const IntMatrix& A, const IntMatrix& B, std::int64_t p) {
    if (A.cols != B.rows)
        throw std::invalid_argument("compute_quotient: inner dimensions differ");
    const int n = A.rows, m = A.cols, nc = B.cols;

    Quotient q{IntMatrix(n, m, kInf), IntMatrix(m, nc), IntMatrix(n, nc, kInf)};
    for (std::size_t t = 0; t < A.v.size(); ++t)
        if (!is_inf(A.v[t])) q.Astar.v[t] = A.v[t] / p;
    for (std::size_t t = 0; t < B.v.size(); ++t) q.Bstar.v[t] = B.v[t] / p;

    std::vector<std::vector<int>> bruns(m);
    for (int k = 0; k < m; ++k) bruns[k] = run_starts(q.Bstar.row(k), nc);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        ChminSegTree tree(nc);
        for (int k = 0; k < m; ++k) {
            ExtInt a = q.Astar.at(i, k);
            if (is_inf(a)) continue;
            const auto& runs = bruns[k];
            for (std::size_t t = 0; t + 1 < runs.size(); ++t)
                tree.range_chmin(runs[t], runs[t + 1] - 1,
                                 a + q.Bstar.at(k, runs[t]));
        }
        for (int j = 0; j < nc; ++j) q.Cstar.at(i, j) = tree.query(j);
    }
    return q;
}

LevelState build_initial_state(const IntMatrix& A, const IntMatrix& B, const Quotient& q,
                               const AlgoParams& params) {
    const int n = A.rows, m = A.cols;
    LevelState st{params.h, level_matrix(A, params.p, params.h, true),
                  level_matrix(B, params.p, params.h, false), IntMatrix(n, n, 0),
                  ErrTermSets(params.offset_radius)};

    std::vector<std::vector<int>> bruns(m), cruns(n);
    for (int k = 0; k < m; ++k) bruns[k] = run_starts(q.Bstar.row(k), n);
    for (int i = 0; i < n; ++i) cruns[i] = run_starts(q.Cstar.row(i), n);

    std::vector<std::vector<Segment>> per_row(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const auto& cr = cruns[i];
        for (int k = 0; k < m; ++k) {
            if (is_inf(A.at(i, k))) continue;
            const auto& br = bruns[k];
            std::size_t bi = 0, ci = 0;
            int start = 0;
            while (start < n) {
                while (br[bi + 1] <= start) ++bi;
                while (cr[ci + 1] <= start) ++ci;
                int end = std::min(br[bi + 1], cr[ci + 1]) - 1;
                if (ext_add(q.Astar.at(i, k), q.Bstar.at(k, start)) != q.Cstar.at(i, start))
                    per_row[i].push_back({i, k, start, end});
                start = end + 1;
            }
        }
    }
    auto& t0 = st.T.at_offset(0);
    for (int i = 0; i < n; ++i)
        t0.insert(t0.end(), per_row[i].begin(), per_row[i].end());
    return st;
}

LevelState remainder_step(const LevelState& prev, const IntMatrix& A, const IntMatrix& B,
                          const Quotient& q, const AlgoParams& params,
                          const IntMatrix* oracle_C) {
    const int l = prev.l - 1;
    if (l < 0) throw std::invalid_argument("remainder_step: already at level 0");
    const int n = A.rows, m = A.cols;
    const int r = params.offset_radius;
    const int W = 2 * r + 1;
    const std::int64_t p = params.p;

    LevelState st{l, level_matrix(A, p, l, true), level_matrix(B, p, l, false),
                  IntMatrix(n, n, kInf), ErrTermSets(r)};
    const IntMatrix& A_l = st.A_l;
    const IntMatrix& B_l = st.B_l;
    const IntMatrix& A_l1 = prev.A_l;
    const IntMatrix& B_l1 = prev.B_l;
    const IntMatrix& C_l1 = prev.C_l;

    // Windowed coefficient triples of C^p: only y-degrees within
    // offset_radius of C^(l+1)[i][j] are ever read, so only those are kept.
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(n) * n * 3 * W, 0);
    auto cnt_at = [&](int i, int j, int x, int w) -> std::uint32_t& {
        return counts[((static_cast<std::size_t>(i) * n + j) * 3 + x) * W + w];
    };

    if (params.backend == Backend::naive) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            const ExtInt* cl1 = C_l1.row(i);
            for (int k = 0; k < m; ++k) {
                if (is_inf(A.at(i, k))) continue;
                const int xa = static_cast<int>(A_l.at(i, k) - 2 * A_l1.at(i, k));
                const std::int64_t ya = A_l1.at(i, k);
                const ExtInt* bl = B_l.row(k);
                const ExtInt* bl1 = B_l1.row(k);
                for (int j = 0; j < n; ++j) {
                    if (is_inf(cl1[j])) continue;
                    std::int64_t w = ya + bl1[j] - cl1[j] + r;
                    if (w < 0 || w >= W) continue;
                    int x = xa + static_cast<int>(bl[j] - 2 * bl1[j]);
                    ++cnt_at(i, j, x, static_cast<int>(w));
                }
            }
        }
    } else {
        // Full polynomial product, then window extraction. Memory-bound;
        // intended for modest sizes and cross-checks of the fast path.
        const int D = static_cast<int>(p >> (l + 1)) + 2;
        PolyMatrix Ap = build_Ap(A_l, A_l1, D);
        PolyMatrix Bp = build_Bp(B_l, B_l1, D);
        PolyMatrix Cp = poly_matmul(Ap, Bp, params.backend);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ExtInt c1 = C_l1.at(i, j);
                if (is_inf(c1)) continue;
                for (int w = 0; w < W; ++w) {
                    std::int64_t y = c1 + (w - r);
                    if (y < 0 || y > Cp.ydeg) continue;
                    for (int x = 0; x < 3; ++x)
                        cnt_at(i, j, x, w) =
                            static_cast<std::uint32_t>(Cp.coeff(i, j, x, static_cast<int>(y)));
                }
            }
    }

    // Group the level-(l+1) erroneous segments by output row.
    std::vector<std::vector<std::pair<int, Segment>>> by_row(n);
    for (int b = -r; b <= r; ++b)
        for (const Segment& s : prev.T.at_offset(b)) by_row[s.i].emplace_back(b, s);

    std::vector<std::vector<std::pair<int, Segment>>> out_rows(n);
    std::atomic<bool> bad_count{false}, bad_inf{false};

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        // Erroneous-count triples R^p as range-add difference arrays over j,
        // one per (offset, x-degree).
        std::vector<std::int32_t> diff(static_cast<std::size_t>(W) * 3 * (n + 1), 0);
        auto dref = [&](int w, int x, int j) -> std::int32_t& {
            return diff[(static_cast<std::size_t>(w) * 3 + x) * (n + 1) + j];
        };

        for (const auto& [b, s] : by_row[i]) {
            const int xa = static_cast<int>(A_l.at(i, s.k) - 2 * A_l1.at(i, s.k));
            const ExtInt* bl = B_l.row(s.k);
            // B^(l) is non-decreasing on the segment and takes at most two
            // values there; find the step by binary search.
            const int split =
                static_cast<int>(std::upper_bound(bl + s.j0, bl + s.j1 + 1, bl[s.j0]) - bl);
            const int w = b + r;
            auto add_range = [&](int a, int e, int x) {
                if (a <= e) {
                    ++dref(w, x, a);
                    --dref(w, x, e + 1);
                }
            };
            add_range(s.j0, split - 1,
                      xa + static_cast<int>(bl[s.j0] - 2 * B_l1.at(s.k, s.j0)));
            if (split <= s.j1)
                add_range(split, s.j1,
                          xa + static_cast<int>(bl[split] - 2 * B_l1.at(s.k, split)));
        }
        for (int w = 0; w < W; ++w)
            for (int x = 0; x < 3; ++x) {
                std::int32_t acc = 0;
                for (int j = 0; j < n; ++j) {
                    acc += dref(w, x, j);
                    dref(w, x, j) = acc;
                }
            }

        // Per-cell minimum over offsets of (min surviving x-degree) +
        // 2*(C^(l+1) + b).
        for (int j = 0; j < n; ++j) {
            ExtInt c1 = C_l1.at(i, j);
            if (is_inf(c1)) continue;  // stays +inf
            ExtInt best = kInf;
            for (int b = -r; b <= r; ++b) {
                const int w = b + r;
                for (int x = 0; x < 3; ++x) {
                    std::int64_t c = static_cast<std::int64_t>(cnt_at(i, j, x, w)) -
                                     dref(w, x, j);
                    if (c < 0) {
                        bad_count = true;
                        c = 0;
                    }
                    if (c > 0) {
                        ExtInt cand = x + 2 * (c1 + b);
                        if (cand < best) best = cand;
                        break;
                    }
                }
            }
            st.C_l.at(i, j) = best;
        }

        // Rebuild T^(l): split each level-(l+1) segment at the constancy
        // breakpoints of B^(l) and C^(l) and re-classify by its new offset.
        const ExtInt* clrow = st.C_l.row(i);
        for (const auto& [b_old, s] : by_row[i]) {
            const ExtInt* bl = B_l.row(s.k);
            const std::int64_t alk = A_l.at(i, s.k);
            int cur = s.j0;
            while (cur <= s.j1) {
                int nb = static_cast<int>(
                    std::upper_bound(bl + cur, bl + s.j1 + 1, bl[cur]) - bl);
                int ncb = static_cast<int>(
                    std::upper_bound(clrow + cur, clrow + s.j1 + 1, clrow[cur]) - clrow);
                int end = std::min(nb, ncb) - 1;
                if (is_inf(clrow[cur])) {
                    bad_inf = true;
                    break;
                }
                std::int64_t bnew = alk + bl[cur] - clrow[cur];
                if (std::llabs(bnew) <= r)
                    out_rows[i].emplace_back(static_cast<int>(bnew),
                                             Segment{i, s.k, cur, end});
                cur = end + 1;
            }
        }
    }

    if (bad_count)
        throw std::runtime_error("remainder_step: erroneous count exceeds filtered count");
    if (bad_inf)
        throw std::runtime_error("remainder_step: +inf C_l inside an erroneous segment");

    for (int i = 0; i < n; ++i)
        for (const auto& [b, s] : out_rows[i]) st.T.at_offset(b).push_back(s);

    if (params.check_invariants && oracle_C)
        check_level_invariants(prev, st, q, A, B, params, *oracle_C);
    return st;
}

IntMatrix minplus_monotone(const IntMatrix& A, const IntMatrix& B,
                           const InstanceMeta& meta, const AlgoParams& params,
                           RunStats* stats) {
    RunStats local;
    RunStats& rs = stats ? *stats : local;
    if (A.cols != B.rows || A.rows != B.cols)
        throw std::invalid_argument("minplus_monotone: A must be n x m and B m x n");
    if (params.fallback) {
        rs.used_fallback = true;
        return naive_minplus(A, B);
    }
    if (!is_row_monotone(B, meta.value_bound))
        throw std::invalid_argument(
            "minplus_monotone: B is not row-monotone within value_bound");

    auto [An, row_offsets] = normalize_A(A, meta.value_bound);
    auto pairs = assumption1_split(An, B, params.p);

    const int n = A.rows;
    IntMatrix result(n, n, kInf);
    rs.levels = params.h;

    for (const SplitPair& pair : pairs) {
        Quotient q = compute_quotient(pair.A, pair.B, params.p);
        std::optional<IntMatrix> oracle;
        if (params.check_invariants) oracle = naive_minplus(pair.A, pair.B);

        LevelState state = build_initial_state(pair.A, pair.B, q, params);
        rs.max_Tb = std::max(rs.max_Tb, state.T.max_set_size());
        for (int l = params.h - 1; l >= 0; --l) {
            state = remainder_step(state, pair.A, pair.B, q, params,
                                   oracle ? &*oracle : nullptr);
            rs.max_Tb = std::max(rs.max_Tb, state.T.max_set_size());
            rs.max_abs_b_used = std::max(rs.max_abs_b_used, state.max_witness_b);
            for (int b = -params.offset_radius; b <= params.offset_radius; ++b)
                if (!state.T.at_offset(b).empty())
                    rs.max_abs_b_used = std::max(rs.max_abs_b_used, std::abs(b));
        }

        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ExtInt cs = q.Cstar.at(i, j), c0 = state.C_l.at(i, j);
                ExtInt val = (is_inf(cs) || is_inf(c0)) ? kInf : params.p * cs + c0;
                if (oracle && val != oracle->at(i, j))
                    throw std::runtime_error(
                        "minplus_monotone: p*C* + C^(0) disagrees with the "
                        "sub-instance oracle");
                if (!is_inf(val)) {
                    ExtInt cand = val + pair.shift;
                    if (cand < result.at(i, j)) result.at(i, j) = cand;
                }
            }
    }

    for (int i = 0; i < n; ++i)
        if (row_offsets[i])
            for (int j = 0; j < n; ++j)
                if (!is_inf(result.at(i, j))) result.at(i, j) += row_offsets[i];
    return result;
}

}  // namespace monoplus
