#pragma once

#include <cstdint>
#include <utility>

#include "monoplus/matrix.hpp"

namespace monoplus {

enum class InstanceKind { monotone, bounded_difference };

struct GenSpec {
    int n = 8;
    double beta = 1.0;
    double mu = 1.0;
    InstanceKind kind = InstanceKind::monotone;
    std::uint64_t seed = 0;
    double inf_rate = 0.05;  // +inf density in A
};

// Deterministic instance generator. A is n x ceil(n^beta) with entries in
// [0, ceil(n^mu)] and +inf cells at inf_rate; B is ceil(n^beta) x n,
// row-monotone within ceil(n^mu), or 1-bounded-difference for
// kind == bounded_difference.
std::pair<IntMatrix, IntMatrix> generate_instance(const GenSpec& spec);

}  // namespace monoplus
