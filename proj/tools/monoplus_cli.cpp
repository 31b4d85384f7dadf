#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monoplus/exponents.hpp"
#include "monoplus/generate.hpp"
#include "monoplus/matrices.hpp"
#include "monoplus/monoplus.hpp"

namespace {

using namespace monoplus;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitMismatch = 3;

std::uint64_t default_seed() {
    if (const char* e = std::getenv("MONOPLUS_SEED"))
        return std::strtoull(e, nullptr, 10);
    return 0;
}

InstanceKind parse_kind(const std::string& s) {
    if (s == "monotone") return InstanceKind::monotone;
    if (s == "bounded_difference") return InstanceKind::bounded_difference;
    throw CLI::ValidationError("--kind must be monotone or bounded_difference");
}

// First monotonicity violation of B, for diagnostics.
std::optional<std::string> monotonicity_violation(const IntMatrix& B, ExtInt bound) {
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            ExtInt x = B.at(i, j);
            if (is_inf(x))
                return "B[" + std::to_string(i) + "][" + std::to_string(j) + "] is inf";
            if (x < 0 || x > bound)
                return "B[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                       std::to_string(x) + " outside [0, " + std::to_string(bound) + "]";
            if (j > 0 && x < B.at(i, j - 1))
                return "row " + std::to_string(i) + " decreases between columns " +
                       std::to_string(j - 1) + " and " + std::to_string(j);
        }
    return std::nullopt;
}

ExponentModel model_or_default(const std::string& path) {
    return path.empty() ? default_exponent_model() : load_exponent_model(path);
}

double wall_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct MultiplyOpts {
    std::string a_path, b_path, backend = "naive", model_path;
    std::uint64_t seed = 0;
    double alpha_override = -1.0;
    bool verify = false, check_invariants = false, use_naive = false;
};

int run_multiply(const MultiplyOpts& o) {
    IntMatrix A = read_matrix_file(o.a_path);
    IntMatrix B = read_matrix_file(o.b_path);

    IntMatrix C;
    if (o.use_naive) {
        C = naive_minplus(A, B);
    } else {
        InstanceMeta meta = make_meta(A, B);
        if (auto why = monotonicity_violation(B, meta.value_bound)) {
            std::cerr << "error: B is not row-monotone: " << *why << "\n";
            return kExitPrecondition;
        }
        ExponentModel model = model_or_default(o.model_path);
        std::optional<double> alpha;
        if (o.alpha_override > 0) alpha = o.alpha_override;
        AlgoParams params = choose_params(meta, model, o.seed, alpha);
        params.backend = parse_backend(o.backend);
        params.check_invariants = o.check_invariants;
        RunStats stats;
        C = minplus_monotone(A, B, meta, params, &stats);
        if (o.check_invariants)
            std::cerr << "invariants ok: levels=" << stats.levels
                      << " max_Tb=" << stats.max_Tb
                      << " max|b|=" << stats.max_abs_b_used
                      << (stats.used_fallback ? " (naive fallback)" : "") << "\n";
    }

    if (o.verify) {
        IntMatrix ref = naive_minplus(A, B);
        for (int i = 0; i < ref.rows; ++i)
            for (int j = 0; j < ref.cols; ++j)
                if (C.at(i, j) != ref.at(i, j)) {
                    std::cerr << "verify mismatch at (" << i << ", " << j << "): got "
                              << C.at(i, j) << ", oracle " << ref.at(i, j) << "\n";
                    return kExitMismatch;
                }
    }
    write_matrix(std::cout, C);
    return kExitOk;
}

struct BenchOpts {
    std::vector<int> ns{16, 32, 64};
    std::vector<double> betas{1.0};
    std::vector<double> mus{1.0};
    int seeds = 3;
    std::uint64_t seed0 = 0;
    std::string backend = "naive", csv_out, model_path;
};

int run_bench(const BenchOpts& o) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.csv_out.empty()) {
        file.open(o.csv_out);
        if (!file) {
            std::cerr << "error: cannot write '" << o.csv_out << "'\n";
            return kExitUsage;
        }
        out = &file;
    }
    ExponentModel model = model_or_default(o.model_path);
    Backend backend = parse_backend(o.backend);

    *out << "n,m,mu_bound,seed,backend,wall_core_ms,wall_naive_ms,max_Tb,levels,verified\n";
    for (int n : o.ns)
        for (double beta : o.betas)
            for (double mu : o.mus)
                for (int s = 0; s < o.seeds; ++s) {
                    std::uint64_t seed = o.seed0 + static_cast<std::uint64_t>(s);
                    GenSpec spec{n, beta, mu, InstanceKind::monotone, seed};
                    auto [A, B] = generate_instance(spec);
                    InstanceMeta meta = make_meta(A, B);
                    AlgoParams params = choose_params(meta, model, seed);
                    params.backend = backend;

                    RunStats stats;
                    auto t0 = std::chrono::steady_clock::now();
                    IntMatrix C = minplus_monotone(A, B, meta, params, &stats);
                    double core_ms = wall_ms(t0);

                    t0 = std::chrono::steady_clock::now();
                    IntMatrix ref = naive_minplus(A, B);
                    double naive_ms = wall_ms(t0);

                    bool verified = C == ref;
                    *out << n << ',' << meta.m << ',' << meta.value_bound << ',' << seed
                         << ',' << backend_name(backend) << ',' << std::fixed
                         << std::setprecision(3) << core_ms << ',' << naive_ms
                         << std::defaultfloat << ',' << stats.max_Tb << ','
                         << stats.levels << ',' << (verified ? "true" : "false")
                         << '\n';
                    if (!verified) {
                        std::cerr << "verify mismatch: n=" << n << " beta=" << beta
                                  << " mu=" << mu << " seed=" << seed << "\n";
                        return kExitMismatch;
                    }
                }
    return kExitOk;
}

int run_exponents(const std::string& model_path) {
    ExponentModel model = model_or_default(model_path);
    const double omega = model.omega_square();

    auto ssrp = ssrp_bound(model, 0.0, SsrpMode::rectangular);
    auto rm = range_mode_bound(model);
    auto dyck = dyck_bound(model);
    auto apsp = apsp2_bound(model);
    auto ted = ted_bound((3.0 + omega) / 2.0);
    auto ted_prev = ted_bound(2.8244);

    auto f4 = [](double v) {
        std::ostringstream ss;
        ss << std::fixed << std::setprecision(4) << v;
        return ss.str();
    };
    std::cout << std::left << std::setw(28) << "Problem" << std::setw(26)
              << "Previous bound" << "Improved bound\n";
    std::cout << std::setw(28) << "M-bounded SSRP" << std::setw(26)
              << "M^0.8043 n^2.4957"
              << "M^" + f4(ssrp.exponent_of("M")) + " n^" + f4(ssrp.exponent_of("n"))
              << "\n";
    std::cout << std::setw(28) << "Batch Range Mode" << std::setw(26) << "n^1.4820"
              << "n^" + f4(rm.exponent_of("n")) << "\n";
    std::cout << std::setw(28) << "k-Dyck Edit Distance" << std::setw(26)
              << "n + k^4.7820" << "n + k^" + f4(dyck.exponent_of("k")) << "\n";
    std::cout << std::setw(28) << "2-approximation APSP" << std::setw(26) << "n^2.2867"
              << "n^" + f4(apsp.exponent_of("n")) + " (t = n^" +
                     f4(apsp.params[0].second) + ")"
              << "\n";
    std::cout << std::setw(28) << "Unweighted Tree Edit Dist." << std::setw(26)
              << "n*m^" + f4(ted_prev.exponent_of("m"))
              << "n*m^" + f4(ted.exponent_of("m")) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rectangular monotone min-plus product toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    GenSpec gspec;
    gspec.seed = default_seed();
    std::string kind = "monotone", out_a = "A.txt", out_b = "B.txt";
    gen->add_option("--n", gspec.n, "rows of A")->required();
    gen->add_option("--beta", gspec.beta, "A is n x ceil(n^beta)");
    gen->add_option("--mu", gspec.mu, "entries bounded by ceil(n^mu)");
    gen->add_option("--kind", kind, "monotone | bounded_difference");
    gen->add_option("--seed", gspec.seed, "RNG seed");
    gen->add_option("--inf-rate", gspec.inf_rate, "+inf density in A");
    gen->add_option("--out-a", out_a, "output path for A");
    gen->add_option("--out-b", out_b, "output path for B");

    // multiply
    auto* mul = app.add_subcommand("multiply", "Compute the min-plus product");
    MultiplyOpts mopts;
    mopts.seed = default_seed();
    mul->add_option("a", mopts.a_path, "matrix A file")->required();
    mul->add_option("b", mopts.b_path, "matrix B file")->required();
    mul->add_flag("--verify", mopts.verify, "compare against the naive oracle");
    mul->add_flag("--check-invariants", mopts.check_invariants,
                  "verify per-level invariants (slow)");
    mul->add_option("--backend", mopts.backend, "naive | split3_eval | split3_pack");
    mul->add_option("--seed", mopts.seed, "RNG seed");
    mul->add_option("--alpha-override", mopts.alpha_override, "force alpha");
    mul->add_flag("--naive", mopts.use_naive, "use the naive product");
    mul->add_option("--model", mopts.model_path, "omega(beta) table file");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark sweep with CSV output");
    BenchOpts bopts;
    bopts.seed0 = default_seed();
    bench->add_option("--n", bopts.ns, "list of n values");
    bench->add_option("--beta", bopts.betas, "list of beta values");
    bench->add_option("--mu", bopts.mus, "list of mu values");
    bench->add_option("--seeds", bopts.seeds, "seeds per configuration");
    bench->add_option("--seed", bopts.seed0, "base seed");
    bench->add_option("--backend", bopts.backend, "polynomial backend");
    bench->add_option("--csv-out", bopts.csv_out, "CSV output path (default stdout)");
    bench->add_option("--model", bopts.model_path, "omega(beta) table file");

    // exponents
    auto* expo = app.add_subcommand("exponents", "Print the application bound table");
    std::string expo_model;
    expo->add_option("--model", expo_model, "omega(beta) table file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    }

    try {
        if (gen->parsed()) {
            gspec.kind = parse_kind(kind);
            auto [A, B] = generate_instance(gspec);
            write_matrix_file(out_a, A);
            write_matrix_file(out_b, B);
            return kExitOk;
        }
        if (mul->parsed()) return run_multiply(mopts);
        if (bench->parsed()) return run_bench(bopts);
        if (expo->parsed()) return run_exponents(expo_model);
    } catch (const MatrixParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitUsage;
}
