#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "monoplus/exponents.hpp"
#include "monoplus/matrices.hpp"
#include "monoplus/polymatmul.hpp"

namespace monoplus {

struct AlgoParams {
    double alpha = 0.0;
    std::int64_t p = 0;       // prime sampled from [40 n^alpha, 80 n^alpha]
    int h = 0;                // 2^(h-1) <= p < 2^h
    int offset_radius = 10;
    std::uint64_t rng_seed = 0;
    Backend backend = Backend::naive;
    bool check_invariants = false;
    bool fallback = false;    // no usable prime / alpha: driver uses naive_minplus
};

// Picks alpha = clamp((1 + beta + mu - omega(beta))/2, eps, mu), samples a
// uniform prime p in [40 n^alpha, 80 n^alpha] by rejection with a
// deterministic 64-bit primality test, and derives h. Sets `fallback`
// when alpha degenerates or the range holds no prime.
AlgoParams choose_params(const InstanceMeta& meta, const ExponentModel& model,
                         std::uint64_t seed,
                         std::optional<double> alpha_override = std::nullopt,
                         std::optional<double> practical_omega = std::nullopt);

struct Quotient {
    IntMatrix Astar;  // floor(A/p), +inf preserved
    IntMatrix Bstar;  // floor(B/p)
    IntMatrix Cstar;  // floor(C/p) under the residue assumption
};

// Computes the quotient matrices. C* is built per output row with a
// fresh chmin segment tree fed by the run-length encoding of B*'s rows.
Quotient compute_quotient(const IntMatrix& A, const IntMatrix& B, std::int64_t p);

// Triple (i, k, [j0, j1]): B^(l), B*, C^(l), C* are each constant on the
// column interval. Indices 0-based, interval inclusive.
struct Segment {
    int i, k, j0, j1;
    bool operator==(const Segment&) const = default;
};

struct ErrTermSets {
    int radius = 10;
    std::vector<std::vector<Segment>> sets;  // index b + radius

    explicit ErrTermSets(int r = 10) : radius(r), sets(2 * r + 1) {}
    std::vector<Segment>& at_offset(int b) { return sets[b + radius]; }
    const std::vector<Segment>& at_offset(int b) const { return sets[b + radius]; }
    std::size_t max_set_size() const {
        std::size_t m = 0;
        for (const auto& s : sets) m = std::max(m, s.size());
        return m;
    }
    std::size_t total_size() const {
        std::size_t t = 0;
        for (const auto& s : sets) t += s.size();
        return t;
    }
};

struct LevelState {
    int l = 0;
    IntMatrix A_l, B_l;  // floor((X mod p) / 2^l), +inf preserved for A
    IntMatrix C_l;
    ErrTermSets T;
    int max_witness_b = 0;  // filled by the invariant checker
};

// Level h: A_h, B_h, C_h are zero matrices (+inf kept in A_h) and T_0
// holds every segment with A[i][k] finite and A*[i][k] + B*[k][j0] !=
// C*[i][j0], built by merging the run-length encodings of B* and C*.
LevelState build_initial_state(const IntMatrix& A, const IntMatrix& B, const Quotient& q,
                               const AlgoParams& params);

// One refinement iteration l+1 -> l: polynomial filtering, subtraction
// of the erroneous terms of T^(l+1), and the rebuild of T^(l) by
// splitting segments at level-l constancy breakpoints. When
// params.check_invariants is set and oracle_C (the true product of this
// sub-instance) is given, the level invariants are verified and a
// violation throws.
LevelState remainder_step(const LevelState& prev, const IntMatrix& A, const IntMatrix& B,
                          const Quotient& q, const AlgoParams& params,
                          const IntMatrix* oracle_C = nullptr);

struct RunStats {
    std::size_t max_Tb = 0;   // max |T_b^(l)| over sub-instances, levels, offsets
    int levels = 0;           // h
    int max_abs_b_used = 0;   // largest |b| an erroneous or witness term needed
    bool used_fallback = false;
};

// Exact A * B for row-monotone B (Las Vegas: the seed affects running
// time only, never the output). Pipeline: normalize_A -> nine-way split
// -> per pair quotient + remainder iterations -> p*C* + C^(0) ->
// element-wise minimum -> undo row offsets.
IntMatrix minplus_monotone(const IntMatrix& A, const IntMatrix& B,
                           const InstanceMeta& meta, const AlgoParams& params,
                           RunStats* stats = nullptr);

}  // namespace monoplus
