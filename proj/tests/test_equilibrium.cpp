#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include <doctest.h>

#include "redkit/equilibrium.hpp"
#include "redkit/errors.hpp"
#include "redkit/rng.hpp"

using redkit::EquilibriumProblem;
using redkit::RiskCurve;
using redkit::SandwichModel;
using redkit::StepSchedule;
using redkit::numeric_error;
using redkit::validation_error;

namespace {

EquilibriumProblem quadratic_problem(double lambda = 0.2) {
    return {redkit::parse_risk_curve("quadratic:0.5", 0.0, 1.0), lambda};
}

}  // namespace

TEST_CASE("phi evaluation") {
    const auto p = quadratic_problem();
    CHECK(redkit::phi(p, 0.5) == 0.1);
    CHECK(std::abs(redkit::phi(p, 0.4) - 0.09) < 1e-15);
    const EquilibriumProblem tiny{p.curve, 1e-12};
    CHECK(std::abs(redkit::phi(tiny, 0.7) - 0.04) < 1e-12);
    CHECK_THROWS_AS((void)redkit::phi(p, 1.5), validation_error);
    const EquilibriumProblem bad{p.curve, 0.0};
    CHECK_THROWS_AS((void)redkit::phi(bad, 0.5), validation_error);
}

TEST_CASE("find_equilibrium on the quadratic problem") {
    const auto result = redkit::find_equilibrium(quadratic_problem(), 1e-8);
    CHECK(std::abs(result.r_star - 0.4) < 1e-6);
    CHECK(result.interior);
    CHECK(!result.plateau);

    // slope at the equilibrium, first-order condition
    const double slope = redkit::phi_slope(quadratic_problem(), result.r_star);
    CHECK(std::abs(slope) <= 10.0 * 1e-8 * 2.0);

    // perturbing the equilibrium strictly increases phi
    const double delta = 1e-7;
    CHECK(redkit::phi(quadratic_problem(), result.r_star + delta) > result.value);
    CHECK(redkit::phi(quadratic_problem(), result.r_star - delta) > result.value);

    const auto near_d_min = redkit::find_equilibrium(quadratic_problem(1e-9), 1e-8);
    CHECK(std::abs(near_d_min.r_star - 0.5) < 1e-6);
}

TEST_CASE("boundary minimizer is flagged, not hidden") {
    const EquilibriumProblem rising{redkit::parse_risk_curve("affine:1.0,0.0", 0.0, 1.0),
                                    1.0};
    const auto result = redkit::find_equilibrium(rising, 1e-8);
    CHECK(result.r_star <= 1e-6);
    CHECK(!result.interior);
}

TEST_CASE("multimodal phi returns the best grid-seeded optimum") {
    RiskCurve doublewell;
    doublewell.r_lo = 0.0;
    doublewell.r_hi = 1.0;
    doublewell.value = [](double r) {
        const double a = (r - 0.2) * (r - 0.2);
        const double b = (r - 0.8) * (r - 0.8) + 0.003;
        return std::min(a, b);
    };
    const EquilibriumProblem problem{doublewell, 1e-6};
    const auto result = redkit::find_equilibrium(problem, 1e-9);
    CHECK(std::abs(result.r_star - 0.2) < 1e-6);
    CHECK(result.interior);
}

TEST_CASE("lambda shift moves the equilibrium monotonically down") {
    double prev = 1.0;
    for (double lambda : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const auto r = redkit::find_equilibrium(quadratic_problem(lambda), 1e-9);
        CHECK(r.r_star <= prev + 1e-9);
        prev = r.r_star;
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)redkit::find_equilibrium(quadratic_problem(), 0.0),
                    validation_error);
    CHECK_THROWS_AS((void)redkit::parse_risk_curve("mystery:1", 0, 1),
                    validation_error);
    CHECK_THROWS_AS((void)redkit::parse_risk_curve("quadratic:a", 0, 1),
                    validation_error);
    CHECK_THROWS_AS((void)redkit::parse_risk_curve("quadratic:1,2,3", 0, 1),
                    validation_error);
    CHECK_THROWS_AS((void)StepSchedule::parse("const:-1"), validation_error);
    CHECK_THROWS_AS((void)StepSchedule::parse("weird"), validation_error);
}

TEST_CASE("table curve interpolation") {
    const char* path = "tmp_curve_table.csv";
    {
        std::ofstream out(path);
        out << "# R, D\n0.0,1.0\n0.5,0.2\n1.0,0.8\n";
    }
    const auto curve = redkit::parse_risk_curve(std::string("table:") + path, 0, 1);
    CHECK(curve.r_lo == 0.0);
    CHECK(curve.r_hi == 1.0);
    CHECK(std::abs(curve.value(0.25) - 0.6) < 1e-15);
    CHECK(std::abs(curve.value(0.75) - 0.5) < 1e-15);
    const EquilibriumProblem p{curve, 0.01};
    const auto result = redkit::find_equilibrium(p, 1e-8);
    CHECK(std::abs(result.r_star - 0.5) < 1e-4);
    std::remove(path);
}

TEST_CASE("deterministic descent collapses the band onto the equilibrium") {
    const auto traj = redkit::simulate_band(quadratic_problem(), 500,
                                            StepSchedule::constant(0.1), 0.0, 1, 0.9);
    CHECK(traj.values.size() == 501);
    CHECK(std::abs(traj.band_lo - 0.4) < 1e-6);
    CHECK(std::abs(traj.band_hi - 0.4) < 1e-6);
    CHECK(traj.band_hi - traj.band_lo < 1e-9);

    const auto one = redkit::simulate_band(quadratic_problem(), 1,
                                           StepSchedule::constant(0.1), 0.0, 1, 0.9);
    CHECK(one.values.size() == 2);
}

TEST_CASE("numeric slope path matches the analytic one on a quadratic") {
    auto problem = quadratic_problem();
    problem.curve.derivative = nullptr;
    const auto traj = redkit::simulate_band(problem, 500, StepSchedule::constant(0.1),
                                            0.0, 1, 0.9);
    CHECK(std::abs(traj.band_lo - 0.4) < 1e-6);
    CHECK(std::abs(traj.band_hi - 0.4) < 1e-6);
}

TEST_CASE("noisy band contains the equilibrium (seed 7 reference run)") {
    const auto traj = redkit::simulate_band(quadratic_problem(), 5000,
                                            StepSchedule::constant(0.1), 0.05, 7, 0.9);
    CHECK(traj.band_lo <= 0.4);
    CHECK(traj.band_hi >= 0.4);
    CHECK(traj.band_hi - traj.band_lo <= 5.0 * 0.05);
    // reference endpoints from the pre-build run of the identical stream
    CHECK(std::abs(traj.band_lo - 0.37957902392474663) < 1e-9);
    CHECK(std::abs(traj.band_hi - 0.42760987353702495) < 1e-9);
}

TEST_CASE("band width scales with the noise amplitude") {
    double ratio_sum = 0.0;
    for (int k = 0; k < 32; ++k) {
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(k);
        const auto lo_noise = redkit::simulate_band(
            quadratic_problem(), 5000, StepSchedule::constant(0.1), 0.05, seed, 0.9);
        const auto hi_noise = redkit::simulate_band(
            quadratic_problem(), 5000, StepSchedule::constant(0.1), 0.10, seed, 0.9);
        ratio_sum += (hi_noise.band_hi - hi_noise.band_lo) /
                     (lo_noise.band_hi - lo_noise.band_lo);
    }
    const double mean_ratio = ratio_sum / 32.0;
    CHECK(mean_ratio >= 1.5);
    CHECK(mean_ratio <= 2.5);
}

TEST_CASE("simulate validation and numeric failure") {
    const auto p = quadratic_problem();
    CHECK_THROWS_AS((void)redkit::simulate_band(p, 0, StepSchedule::constant(0.1),
                                                0.0, 1, 0.9),
                    validation_error);
    CHECK_THROWS_AS((void)redkit::simulate_band(p, 10, StepSchedule::constant(0.1),
                                                -0.1, 1, 0.9),
                    validation_error);
    CHECK_THROWS_AS((void)redkit::simulate_band(p, 10, StepSchedule::constant(0.1),
                                                0.0, 1, 1.5),
                    validation_error);

    RiskCurve poisoned;
    poisoned.r_lo = 0.0;
    poisoned.r_hi = 1.0;
    poisoned.value = [](double r) {
        return r < 0.5 ? std::numeric_limits<double>::quiet_NaN() : r;
    };
    const EquilibriumProblem bad{poisoned, 0.1};
    CHECK_THROWS_AS((void)redkit::simulate_band(bad, 50, StepSchedule::constant(0.3),
                                                0.0, 1, 0.9),
                    numeric_error);
}

TEST_CASE("inverse-time schedule also converges on the quadratic") {
    const auto traj = redkit::simulate_band(quadratic_problem(), 4000,
                                            StepSchedule::inverse_time(0.5), 0.0, 1, 0.9);
    CHECK(std::abs(traj.values.back() - 0.4) < 1e-3);
}

TEST_CASE("sandwich optimum on the quadratic example") {
    SandwichModel model;
    model.error_curve = [](double r) { return (r - 0.45) * (r - 0.45) + 0.1; };
    model.c0 = 1.0;
    model.r1 = 0.2;
    model.r2 = 0.8;
    model.g_robust = [](double r) { return 0.1 - 0.05 * r; };
    model.g_info = [](double u) { return 0.41 + 0.1 * u; };
    const auto result = redkit::sandwich_optimum(model, 1e-8);
    CHECK(std::abs(result.r_star - 0.45) < 1e-6);
    CHECK(!result.plateau);
    CHECK(result.r_star > model.r1);
    CHECK(result.r_star < model.r2);
}

TEST_CASE("flat valley returns any plateau point, flagged") {
    SandwichModel model;
    model.error_curve = [](double r) {
        return std::max(0.5 - r, 0.0) + std::max(r - 0.6, 0.0);
    };
    model.c0 = 1.0;
    model.r1 = 0.2;
    model.r2 = 0.8;
    model.g_robust = [](double r) { return -0.05 * r; };
    model.g_info = [](double u) { return 0.5 + 0.1 * u; };
    const auto result = redkit::sandwich_optimum(model, 1e-8);
    CHECK(result.plateau);
    CHECK(result.r_star >= 0.5 - 1e-6);
    CHECK(result.r_star <= 0.6 + 1e-6);
}

TEST_CASE("sandwich assumption failures") {
    SandwichModel decreasing;
    decreasing.error_curve = [](double r) { return 0.5 - 0.1 * r; };
    decreasing.c0 = 1.0;
    decreasing.r1 = 0.2;
    decreasing.r2 = 0.8;
    decreasing.g_robust = [](double r) { return 0.4 - 0.1 * r; };
    decreasing.g_info = [](double u) { return 0.6 + 0.1 * u; };
    CHECK_THROWS_WITH_AS((void)redkit::sandwich_optimum(decreasing, 1e-8),
                         doctest::Contains("assumption"), validation_error);

    SandwichModel violated;
    violated.error_curve = [](double r) { return (r - 0.45) * (r - 0.45) + 0.1; };
    violated.c0 = 1.0;
    violated.r1 = 0.2;
    violated.r2 = 0.8;
    violated.g_robust = [](double) { return 0.2; };  // exceeds E near the vertex
    violated.g_info = [](double u) { return 0.41 + 0.1 * u; };
    CHECK_THROWS_WITH_AS((void)redkit::sandwich_optimum(violated, 1e-8),
                         doctest::Contains("grid point"), validation_error);

    SandwichModel bad_window = violated;
    bad_window.g_robust = [](double r) { return 0.1 - 0.05 * r; };
    bad_window.r1 = 0.0;
    CHECK_THROWS_AS((void)redkit::sandwich_optimum(bad_window, 1e-8),
                    validation_error);
}

TEST_CASE("ushape fit reproduces the reference normal-equation solution") {
    const std::vector<std::pair<double, double>> points{
        {0.96, 35.6}, {0.96, 36.3}, {0.51, 41.4}, {0.19, 39.6}};
    const auto fit = redkit::ushape_fit(points, false);
    CHECK(fit.a < 0.0);
    CHECK(fit.vertex_defined);
    CHECK(std::abs(fit.a - -23.033910533910458) < 1e-6);
    CHECK(std::abs(fit.b - 21.74873737373727) < 1e-6);
    CHECK(std::abs(fit.c - 36.29926406926408) < 1e-6);
    CHECK(std::abs(fit.vertex - 0.4721025841816751) < 1e-8);
    CHECK(fit.interior);
    CHECK(fit.vertex > 0.19);
    CHECK(fit.vertex < 0.96);

    // independent optimality certificate: residuals orthogonal to the design
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (const auto& [r, y] : points) {
        const double resid = y - (fit.a * r * r + fit.b * r + fit.c);
        r0 += resid;
        r1 += resid * r;
        r2 += resid * r * r;
    }
    CHECK(std::abs(r0) < 1e-9);
    CHECK(std::abs(r1) < 1e-9);
    CHECK(std::abs(r2) < 1e-9);
}

TEST_CASE("ushape fit recovers an exact parabola") {
    const std::vector<std::pair<double, double>> points{
        {0.2, -(0.2 - 0.5) * (0.2 - 0.5) + 1.0},
        {0.5, 1.0},
        {0.8, -(0.8 - 0.5) * (0.8 - 0.5) + 1.0}};
    const auto fit = redkit::ushape_fit(points, false);
    CHECK(std::abs(fit.a - -1.0) < 1e-10);
    CHECK(std::abs(fit.vertex - 0.5) < 1e-10);
    CHECK(fit.interior);
}

TEST_CASE("ushape fit degenerate cases") {
    const std::vector<std::pair<double, double>> line{{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}};
    const auto fit = redkit::ushape_fit(line, true);
    CHECK(!fit.vertex_defined);
    CHECK(!fit.interior);
    CHECK(std::isnan(fit.vertex));

    CHECK_THROWS_AS(
        (void)redkit::ushape_fit({{0.5, 1.0}, {0.5, 2.0}, {0.5, 3.0}}, true),
        validation_error);
    CHECK_THROWS_AS((void)redkit::ushape_fit({{0.1, 1.0}, {0.2, 2.0}}, true),
                    validation_error);

    // curvature sign must match the optimization sense
    const std::vector<std::pair<double, double>> convex{
        {0.2, 1.0}, {0.5, 0.2}, {0.8, 1.1}};
    CHECK(redkit::ushape_fit(convex, true).interior);
    CHECK(!redkit::ushape_fit(convex, false).interior);
}
