// Compares the OpenMP-parallel decomposition algorithm against the serial
// naive min-plus reference on random monotone instances and prints a CSV
// plus a speedup summary.
#include <chrono>
#include <cstdio>
#include <vector>

#include "monoplus/generate.hpp"
#include "monoplus/matrices.hpp"
#include "monoplus/monoplus.hpp"

using namespace monoplus;

namespace {
double wall_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}
}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ns{32, 64, 128, 256};
    if (argc > 1) {
        ns.clear();
        for (int i = 1; i < argc; ++i) ns.push_back(std::atoi(argv[i]));
    }
    const ExponentModel model = default_exponent_model();

    std::printf("n,m,mu_bound,seed,backend,wall_core_ms,wall_naive_ms,max_Tb,levels,verified\n");
    for (int n : ns) {
        GenSpec spec{n, 1.0, 1.0, InstanceKind::monotone, 1};
        auto [A, B] = generate_instance(spec);
        InstanceMeta meta = make_meta(A, B);
        AlgoParams params = choose_params(meta, model, spec.seed);

        RunStats stats;
        auto t0 = std::chrono::steady_clock::now();
        IntMatrix C = minplus_monotone(A, B, meta, params, &stats);
        double core_ms = wall_ms(t0);

        t0 = std::chrono::steady_clock::now();
        IntMatrix ref = naive_minplus(A, B);
        double naive_ms = wall_ms(t0);

        bool ok = C == ref;
        std::printf("%d,%d,%lld,%llu,%s,%.3f,%.3f,%zu,%d,%s\n", n, meta.m,
                    static_cast<long long>(meta.value_bound),
                    static_cast<unsigned long long>(spec.seed),
                    backend_name(params.backend).c_str(), core_ms, naive_ms,
                    stats.max_Tb, stats.levels, ok ? "true" : "false");
        std::fprintf(stderr, "n=%4d  core %.1f ms  naive %.1f ms  ratio %.2fx  %s\n", n,
                     core_ms, naive_ms, naive_ms / core_ms, ok ? "exact" : "MISMATCH");
        if (!ok) return 1;
    }
    return 0;
}
