#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace redkit {

// Scalar risk curve D(R) on [r_lo, r_hi], optionally with an analytic
// derivative; when absent, slopes fall back to central differences.
struct RiskCurve {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // may be empty
    double r_lo = 0.0;
    double r_hi = 1.0;
};

// Builtin curve families, selected by spec string:
//   quadratic:<center>[,<offset>]   (R-center)^2 + offset
//   affine:<slope>,<intercept>      slope*R + intercept
//   piecewise:<a>,<b>               max(a-R,0) + max(R-b,0)
//   table:<csv>                     linear interpolation of (R,value) rows
// For table curves the domain defaults to the data range.
RiskCurve parse_risk_curve(const std::string& spec, double r_lo, double r_hi);

struct EquilibriumProblem {
    RiskCurve curve;
    double lambda = 0.0;  // must be > 0
};

// Phi(R) = D(R) + lambda * R. Throws for R outside the curve domain.
double phi(const EquilibriumProblem& problem, double r);

// Phi'(R), analytic when the curve carries a derivative, else a central
// difference with step 1e-6 * max(1,|R|), one-sided at the domain edges.
double phi_slope(const EquilibriumProblem& problem, double r);

struct SearchOptions {
    std::size_t grid_points = 256;  // scan resolution before refinement
};

struct MinimizeResult {
    double r_star = 0.0;
    double value = 0.0;
    bool interior = false;   // local-minimum certificate away from the domain ends
    bool plateau = false;    // a flat valley of grid ties around the minimum
    double plateau_lo = 0.0;
    double plateau_hi = 0.0;
};

// Grid scan plus golden-section refinement of every grid-local minimum;
// |r_star - argmin| <= tol for unimodal Phi, best local optimum otherwise.
MinimizeResult find_equilibrium(const EquilibriumProblem& problem, double tol,
                                const SearchOptions& options = {});

// Step-size schedule eta_t, t = 0,1,...; specs "const:<eta>" and "invt:<c>"
// (eta_t = c/(t+1)).
struct StepSchedule {
    std::function<double(std::size_t)> eta;
    std::string spec;

    static StepSchedule constant(double eta);
    static StepSchedule inverse_time(double c);
    static StepSchedule parse(const std::string& spec);
};

struct Trajectory {
    std::vector<double> values;  // length steps+1, values[0] = r0
    double band_lo = 0.0;        // over the trailing window only
    double band_hi = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
};

// Noisy slope descent R_{t+1} = clamp(R_t - eta_t (Phi'(R_t) + xi_t)) with
// xi_t ~ N(0, sigma^2) from the seeded generator (no draws when sigma = 0).
// Band = (min, max) over the trailing window_fraction of steps.
// Deterministic given (seed, schedule, r0).
Trajectory simulate_band(const EquilibriumProblem& problem, std::size_t steps,
                         const StepSchedule& schedule, double sigma,
                         std::uint64_t seed, double r0,
                         double window_fraction = 0.2,
                         const SearchOptions& options = {});

// Error curve E on [0, c0] sandwiched by user-supplied bounding curves:
// g_robust(R) <= E(R) <= g_info(c0 - R) on a validation grid.
struct SandwichModel {
    std::function<double(double)> error_curve;
    double c0 = 1.0;
    double r1 = 0.0;
    double r2 = 1.0;
    std::function<double(double)> g_robust;
    std::function<double(double)> g_info;
};

struct SandwichResult {
    double r_star = 0.0;
    double value = 0.0;
    bool plateau = false;
};

// Verifies the bound ordering and the boundary slope signs, then minimizes E
// over [r1, r2]; the result is interior to (r1, r2) or an error is thrown.
SandwichResult sandwich_optimum(const SandwichModel& model, double tol,
                                const SearchOptions& options = {});

struct UShapeFit {
    double a = 0.0, b = 0.0, c = 0.0;  // score ~ a R^2 + b R + c
    double vertex = 0.0;               // NaN when !vertex_defined
    bool vertex_defined = false;
    bool interior = false;  // vertex strictly inside the data range with the
                            // curvature sign matching the minimize flag
};

// Least-squares quadratic through (R, score) points; needs >= 3 distinct R.
UShapeFit ushape_fit(const std::vector<std::pair<double, double>>& points,
                     bool minimize);

}  // namespace redkit
