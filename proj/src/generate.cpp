#include "monoplus/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace monoplus {

std::pair<IntMatrix, IntMatrix> generate_instance(const GenSpec& spec) {
    if (spec.n < 1 || spec.beta < 0 || spec.mu < 0)
        throw std::invalid_argument("generate_instance: need n >= 1 and beta, mu >= 0");
    const int n = spec.n;
    const int m = static_cast<int>(
        std::ceil(std::pow(static_cast<double>(n), spec.beta)));
    const std::int64_t vb = static_cast<std::int64_t>(
        std::ceil(std::pow(static_cast<double>(n), spec.mu)));

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::int64_t> val(0, vb);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    IntMatrix A(n, m);
    for (auto& x : A.v) {
        double u = unit(rng);
        std::int64_t v = val(rng);
        x = u < spec.inf_rate ? kInf : v;
    }

    IntMatrix B(m, n);
    if (spec.kind == InstanceKind::monotone) {
        std::vector<std::int64_t> row(n);
        for (int k = 0; k < m; ++k) {
            for (auto& x : row) x = val(rng);
            std::sort(row.begin(), row.end());
            for (int j = 0; j < n; ++j) B.at(k, j) = row[j];
        }
    } else {
        // Anti-diagonal random walk: both row and column neighbours differ
        // by at most 1.
        std::uniform_int_distribution<int> step(-1, 1);
        std::vector<std::int64_t> walk(m + n);
        walk[0] = vb / 2;
        for (std::size_t t = 1; t < walk.size(); ++t) walk[t] = walk[t - 1] + step(rng);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < n; ++j) B.at(k, j) = walk[k + j];
    }
    return {std::move(A), std::move(B)};
}

}  // namespace monoplus
