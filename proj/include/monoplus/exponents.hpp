#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monoplus {

// Convex piecewise-linear upper bound table for the rectangular matrix
// multiplication exponent omega(beta).
struct ExponentModel {
    // (beta, omega upper bound), beta strictly increasing, slopes
    // non-decreasing.
    std::vector<std::pair<double, double>> points;

    double omega_square() const { return points.back().second; }
};

// Table derivable from known published bounds alone: omega(0.5) = 2.0442,
// omega(0.7233) = 2.1698, omega(1) = 2.3728639.
ExponentModel default_exponent_model();

// Plain text table: one "beta omega" pair per line, '#' comments allowed.
// Throws if the parsed table is not strictly increasing and convex.
ExponentModel load_exponent_model(const std::string& path);
ExponentModel parse_exponent_model(const std::string& text);

// Piecewise-linear interpolation, exact at table points. Below the
// smallest beta the bound is extended flat (omega is non-decreasing, so
// the smallest table value remains a valid upper bound); above the
// largest beta it throws.
double omega_of(const ExponentModel& model, double beta);

// Exponent of the rectangular monotone min-plus product:
// (1 + beta + mu + omega(beta)) / 2.
double phi_bound(const ExponentModel& model, double beta, double mu);

// Bounded-difference specialization psi(n, n^beta) = phi(beta, 1) =
// (2 + beta + omega(beta)) / 2.
double psi_bound(const ExponentModel& model, double beta);

struct AppBound {
    std::string name;
    std::vector<std::pair<std::string, double>> params;     // optimized parameters
    std::vector<std::pair<std::string, double>> exponents;  // named exponents
    double exponent_of(const std::string& key) const;
};

enum class SsrpMode { closed_form, rectangular };

// Single Source Replacement Paths with M = n^mu bounded weights.
// closed_form: zeta = (3 - mu - omega)/(5 - omega), running time
// M^{2/(5-omega)} n^{(9-omega)/(5-omega)}. rectangular: zeta = a + b*mu
// with the linear omega(1 - zeta) bound; reports the total exponent as
// c0 + c1*mu ("n" and "M" exponents).
AppBound ssrp_bound(const ExponentModel& model, double mu, SsrpMode mode);

// Batch Range Mode: tau = omega/(omega + 3), exponent (3 + 2*omega)/(3 + omega).
AppBound range_mode_bound(const ExponentModel& model);

// k-Dyck Edit Distance: k-exponent 5/2 + omega(1/2); also reports the
// large-k (k >= sqrt(n)) n-exponent (2 + kappa + omega(kappa))/2 at
// kappa = 1/2.
AppBound dyck_bound(const ExponentModel& model);

// 2-approximation APSP: minimizes max(2 + x/2, (3 - x + omega(1-x))/2)
// over the t-exponent x in [0,1] by ternary search; `pinned_t_exponent`
// evaluates the objective at a fixed x instead.
AppBound apsp2_bound(const ExponentModel& model,
                     std::optional<double> pinned_t_exponent = std::nullopt);

// Unweighted Tree Edit Distance given the bounded-difference min-plus
// exponent alpha_bd in (2, 3]. Reports delta/Delta exponents, the MUL
// exponent pair and the final m-exponent (3*alpha - 1)/(alpha + 1).
AppBound ted_bound(double alpha_bd);

}  // namespace monoplus
