#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monoplus/exponents.hpp"

using namespace monoplus;
using doctest::Approx;

namespace {
const ExponentModel kDefault = default_exponent_model();

ExponentModel toy_model(double omega) {
    ExponentModel m;
    m.points = {{0.5, omega}, {1.0, omega}};
    return m;
}
}  // namespace

TEST_CASE("default model hits its table points exactly") {
    CHECK(omega_of(kDefault, 1.0) == Approx(2.3728639).epsilon(1e-12));
    CHECK(omega_of(kDefault, 0.5) == Approx(2.0442).epsilon(1e-12));
    CHECK(omega_of(kDefault, 0.7233) == Approx(2.1698).epsilon(1e-12));
    CHECK(kDefault.omega_square() == Approx(2.3728639));
}

TEST_CASE("omega_of interpolates linearly and extends flat below the table") {
    double mid = (0.7233 + 1.0) / 2.0;
    CHECK(omega_of(kDefault, mid) == Approx((2.1698 + 2.3728639) / 2.0));
    CHECK(omega_of(kDefault, 0.1) == Approx(2.0442));  // flat extension
    CHECK_THROWS_AS(omega_of(kDefault, 1.2), std::out_of_range);
}

TEST_CASE("model validation rejects bad tables") {
    CHECK_THROWS(parse_exponent_model("0.5 2.1\n0.5 2.2\n"));      // duplicate beta
    CHECK_THROWS(parse_exponent_model("0.5 2.1\n0.7 2.5\n1 2.6")); // not convex
    CHECK_THROWS(parse_exponent_model("1 1.9\n"));                 // below lower bound
    CHECK_THROWS(parse_exponent_model(""));
    ExponentModel ok = parse_exponent_model("# comment\n0.5 2.0442\n1 2.3728639\n");
    CHECK(ok.points.size() == 2);
}

TEST_CASE("phi and psi bounds") {
    CHECK(phi_bound(kDefault, 1.0, 1.0) == Approx((3.0 + 2.3728639) / 2.0));
    CHECK(phi_bound(toy_model(2.0), 0.0, 0.0) == Approx(1.5));
    CHECK(psi_bound(kDefault, 1.0) == Approx(phi_bound(kDefault, 1.0, 1.0)));
    CHECK_THROWS_AS(phi_bound(kDefault, -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("batch range mode exponent") {
    CHECK(std::abs(range_mode_bound(kDefault).exponent_of("n") - 1.4416) < 5e-4);
    CHECK(range_mode_bound(kDefault).exponent_of("n") == Approx(1.441639).epsilon(1e-5));
    CHECK(range_mode_bound(toy_model(3.0)).exponent_of("n") == Approx(1.5));
    CHECK(range_mode_bound(toy_model(2.0)).exponent_of("n") == Approx(1.4));
    double omega = kDefault.omega_square();
    CHECK(range_mode_bound(kDefault).params[0].second == Approx(omega / (omega + 3.0)));
}

TEST_CASE("dyck edit distance exponent") {
    CHECK(dyck_bound(kDefault).exponent_of("k") == Approx(4.5442).epsilon(1e-9));
    CHECK(dyck_bound(toy_model(2.5)).exponent_of("k") == Approx(5.0));
    CHECK(dyck_bound(kDefault).exponent_of("large_k_n") == Approx((2.5 + 2.0442) / 2.0));
}

TEST_CASE("ssrp closed form is exact in omega") {
    double omega = kDefault.omega_square();
    AppBound b = ssrp_bound(kDefault, 0.5, SsrpMode::closed_form);
    CHECK(b.exponent_of("M") == Approx(2.0 / (5.0 - omega)).epsilon(1e-12));
    CHECK(b.exponent_of("n") == Approx((9.0 - omega) / (5.0 - omega)).epsilon(1e-12));
    CHECK(b.params[0].second == Approx((3.0 - 0.5 - omega) / (5.0 - omega)).epsilon(1e-12));
    CHECK_THROWS_AS(ssrp_bound(kDefault, 2.0, SsrpMode::closed_form),
                    std::invalid_argument);
}

TEST_CASE("ssrp rectangular mode reproduces the optimized pair") {
    AppBound b = ssrp_bound(kDefault, 0.0, SsrpMode::rectangular);
    CHECK(std::abs(b.exponent_of("n") - 2.4466) < 5e-4);
    CHECK(std::abs(b.exponent_of("M") - 0.8825) < 5e-4);
    // total_at_mu is the affine form c0 + c1*mu.
    AppBound half = ssrp_bound(kDefault, 0.3, SsrpMode::rectangular);
    CHECK(half.exponent_of("total_at_mu") ==
          Approx(b.exponent_of("n") + 0.3 * b.exponent_of("M")));
}

TEST_CASE("apsp exponent: pinned, default table, fine table") {
    AppBound pinned = apsp2_bound(kDefault, 0.5185);
    CHECK(pinned.exponent_of("n") == Approx(2.25925).epsilon(1e-5 / 2.25925));

    AppBound opt = apsp2_bound(kDefault);
    CHECK(opt.exponent_of("n") >= 2.2593 - 1e-9);
    CHECK(opt.exponent_of("n") <= 2.2700);

    ExponentModel fine = load_exponent_model(std::string(DATA_DIR) + "/omega_rect.txt");
    AppBound fine_opt = apsp2_bound(fine);
    CHECK(std::abs(fine_opt.exponent_of("n") - 2.2593) < 2e-3);
}

TEST_CASE("apsp optimizer matches a fine grid search") {
    for (const ExponentModel& m : {kDefault, toy_model(3.0), toy_model(2.4)}) {
        auto objective = [&](double x) {
            return std::max(2.0 + x / 2.0, (3.0 - x + omega_of(m, 1.0 - x)) / 2.0);
        };
        double best = 1e18;
        for (int i = 0; i <= 10000; ++i) best = std::min(best, objective(i * 1e-4));
        CHECK(std::abs(apsp2_bound(m).exponent_of("n") - best) < 5e-4);
    }
}

TEST_CASE("tree edit distance exponents") {
    double omega = kDefault.omega_square();
    AppBound b = ted_bound((3.0 + omega) / 2.0);
    CHECK(std::abs(b.exponent_of("m") - 1.9149) < 5e-4);
    CHECK(std::abs(ted_bound(2.8244).exponent_of("m") - 1.9541) < 5e-4);
    CHECK(ted_bound(3.0).exponent_of("m") == Approx(2.0));
    double a = (3.0 + omega) / 2.0;
    CHECK(b.exponent_of("MUL_m") == Approx((2.0 * a - 4.0) / (a - 1.0)));
    CHECK(b.params[0].second == Approx(2.0 / (a - 1.0)));
    CHECK(b.params[1].second == Approx((a - 1.0) / (a + 1.0)));
    CHECK_THROWS_AS(ted_bound(2.0), std::invalid_argument);
    CHECK_THROWS_AS(ted_bound(3.5), std::invalid_argument);
}

TEST_CASE("application exponents are monotone in the omega table") {
    // Raising any single table value can only weaken (raise) each bound.
    for (std::size_t idx = 0; idx < kDefault.points.size(); ++idx) {
        ExponentModel bumped = kDefault;
        bumped.points[idx].second += 0.01;
        CHECK(range_mode_bound(bumped).exponent_of("n") >=
              range_mode_bound(kDefault).exponent_of("n") - 1e-12);
        CHECK(dyck_bound(bumped).exponent_of("k") >=
              dyck_bound(kDefault).exponent_of("k") - 1e-12);
        CHECK(apsp2_bound(bumped).exponent_of("n") >=
              apsp2_bound(kDefault).exponent_of("n") - 1e-9);
    }
}
