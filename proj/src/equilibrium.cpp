#include "redkit/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "redkit/csv.hpp"
#include "redkit/errors.hpp"
#include "redkit/rng.hpp"

namespace redkit {

namespace {

std::vector<double> parse_args(const std::string& spec, const std::string& family,
                               std::size_t min_n, std::size_t max_n) {
    const std::string args = spec.substr(family.size() + 1);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= args.size()) {
        const std::size_t comma = args.find(',', start);
        const std::string tok =
            args.substr(start, comma == std::string::npos ? comma : comma - start);
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw validation_error("curve spec '" + spec + "': cannot parse '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() < min_n || out.size() > max_n)
        throw validation_error("curve spec '" + spec + "': wrong number of parameters");
    return out;
}

double validate_domain(const RiskCurve& curve) {
    if (!(curve.r_lo < curve.r_hi))
        throw validation_error("curve domain is empty (r_lo >= r_hi)");
    return curve.r_hi - curve.r_lo;
}

void require_in_domain(const RiskCurve& curve, double r, const char* what) {
    if (!(r >= curve.r_lo && r <= curve.r_hi))
        throw validation_error(std::string(what) + ": R = " + std::to_string(r) +
                               " outside the curve domain [" +
                               std::to_string(curve.r_lo) + ", " +
                               std::to_string(curve.r_hi) + "]");
}

void validate_problem(const EquilibriumProblem& p) {
    validate_domain(p.curve);
    if (!p.curve.value) throw validation_error("risk curve has no value function");
    if (!(p.lambda > 0.0))
        throw validation_error("equilibrium problem: lambda must be positive");
}

double finite_or_throw(double v, double r, const char* what) {
    if (!std::isfinite(v))
        throw numeric_error(std::string(what) + " is not finite at R = " +
                            std::to_string(r));
    return v;
}

// Golden-section minimization; returns the bracket midpoint once the bracket
// is narrower than tol.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Grid scan, golden refinement of every grid-local minimum, plateau and
// interiority detection. Deterministic tie-breaks (leftmost candidate wins).
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol, std::size_t grid_points,
                               const char* what) {
    if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
    const std::size_t n = std::max<std::size_t>(grid_points, 8);
    const double h = (hi - lo) / static_cast<double>(n - 1);

    std::vector<double> xs(n), fs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = (i + 1 == n) ? hi : lo + h * static_cast<double>(i);
        fs[i] = finite_or_throw(f(xs[i]), xs[i], what);
    }

    std::size_t grid_arg = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (fs[i] < fs[grid_arg]) grid_arg = i;

    MinimizeResult result;
    result.value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const bool left_ok = (i == 0) || fs[i] <= fs[i - 1];
        const bool right_ok = (i + 1 == n) || fs[i] <= fs[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double blo = xs[i == 0 ? 0 : i - 1];
        const double bhi = xs[i + 1 >= n ? n - 1 : i + 1];
        const double r = golden_min(f, blo, bhi, tol);
        const double v = finite_or_throw(f(r), r, what);
        if (v < result.value) {
            result.value = v;
            result.r_star = r;
        }
    }

    // Plateau: contiguous run of grid ties around the grid minimum.
    const double tie_eps = 1e-12 * std::max(1.0, std::abs(fs[grid_arg]));
    std::size_t run_lo = grid_arg, run_hi = grid_arg;
    while (run_lo > 0 && fs[run_lo - 1] <= fs[grid_arg] + tie_eps) --run_lo;
    while (run_hi + 1 < n && fs[run_hi + 1] <= fs[grid_arg] + tie_eps) ++run_hi;
    result.plateau = (run_hi - run_lo) >= 2;
    result.plateau_lo = result.plateau ? xs[run_lo] : result.r_star;
    result.plateau_hi = result.plateau ? xs[run_hi] : result.r_star;

    // Interior: both-sided local-minimum certificate strictly inside.
    const double delta = std::max(tol, 1e-9 * (hi - lo));
    if (result.r_star - delta >= lo && result.r_star + delta <= hi) {
        const double cert_eps = 1e-12 * std::max(1.0, std::abs(result.value));
        result.interior = f(result.r_star - delta) >= result.value - cert_eps &&
                          f(result.r_star + delta) >= result.value - cert_eps;
    }
    return result;
}

}  // namespace

RiskCurve parse_risk_curve(const std::string& spec, double r_lo, double r_hi) {
    RiskCurve curve;
    curve.r_lo = r_lo;
    curve.r_hi = r_hi;
    if (spec.rfind("quadratic:", 0) == 0) {
        const auto a = parse_args(spec, "quadratic", 1, 2);
        const double center = a[0], offset = a.size() > 1 ? a[1] : 0.0;
        curve.value = [center, offset](double r) {
            return (r - center) * (r - center) + offset;
        };
        curve.derivative = [center](double r) { return 2.0 * (r - center); };
    } else if (spec.rfind("affine:", 0) == 0) {
        const auto a = parse_args(spec, "affine", 2, 2);
        const double slope = a[0], intercept = a[1];
        curve.value = [slope, intercept](double r) { return slope * r + intercept; };
        curve.derivative = [slope](double) { return slope; };
    } else if (spec.rfind("piecewise:", 0) == 0) {
        const auto a = parse_args(spec, "piecewise", 2, 2);
        const double lo_knee = a[0], hi_knee = a[1];
        curve.value = [lo_knee, hi_knee](double r) {
            return std::max(lo_knee - r, 0.0) + std::max(r - hi_knee, 0.0);
        };
    } else if (spec.rfind("table:", 0) == 0) {
        const std::string path = spec.substr(6);
        auto pairs = csv::read_pairs(path);
        if (pairs.size() < 2)
            throw validation_error("table curve: need at least 2 points in " + path);
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (!(pairs[i].first > pairs[i - 1].first))
                throw validation_error("table curve: duplicate abscissa in " + path);
        curve.r_lo = pairs.front().first;
        curve.r_hi = pairs.back().first;
        curve.value = [pairs](double r) {
            auto it = std::lower_bound(
                pairs.begin(), pairs.end(), r,
                [](const std::pair<double, double>& p, double v) { return p.first < v; });
            if (it == pairs.begin()) return it->second;
            if (it == pairs.end()) return pairs.back().second;
            const auto& [x1, y1] = *(it - 1);
            const auto& [x2, y2] = *it;
            const double w = (r - x1) / (x2 - x1);
            return y1 + w * (y2 - y1);
        };
    } else {
        throw validation_error(
            "unknown curve spec '" + spec +
            "' (expected quadratic:..., affine:..., piecewise:..., table:...)");
    }
    validate_domain(curve);
    return curve;
}

double phi(const EquilibriumProblem& problem, double r) {
    validate_problem(problem);
    require_in_domain(problem.curve, r, "phi");
    return problem.curve.value(r) + problem.lambda * r;
}

double phi_slope(const EquilibriumProblem& problem, double r) {
    validate_problem(problem);
    require_in_domain(problem.curve, r, "phi_slope");
    if (problem.curve.derivative)
        return problem.curve.derivative(r) + problem.lambda;
    const double h = 1e-6 * std::max(1.0, std::abs(r));
    const double a = std::max(problem.curve.r_lo, r - h);
    const double b = std::min(problem.curve.r_hi, r + h);
    return (phi(problem, b) - phi(problem, a)) / (b - a);
}

MinimizeResult find_equilibrium(const EquilibriumProblem& problem, double tol,
                                const SearchOptions& options) {
    validate_problem(problem);
    auto objective = [&](double r) {
        return problem.curve.value(r) + problem.lambda * r;
    };
    return minimize_scalar(objective, problem.curve.r_lo, problem.curve.r_hi, tol,
                           options.grid_points, "phi");
}

namespace {
std::string schedule_tag(const char* family, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s:%.9g", family, v);
    return buf;
}
}  // namespace

StepSchedule StepSchedule::constant(double eta) {
    if (!(eta > 0.0)) throw validation_error("step schedule: eta must be positive");
    return StepSchedule{[eta](std::size_t) { return eta; },
                        schedule_tag("const", eta)};
}

StepSchedule StepSchedule::inverse_time(double c) {
    if (!(c > 0.0)) throw validation_error("step schedule: c must be positive");
    return StepSchedule{[c](std::size_t t) { return c / static_cast<double>(t + 1); },
                        schedule_tag("invt", c)};
}

StepSchedule StepSchedule::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string family = spec.substr(0, colon);
        const std::string arg = spec.substr(colon + 1);
        try {
            std::size_t pos = 0;
            const double v = std::stod(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
            if (family == "const") return constant(v);
            if (family == "invt") return inverse_time(v);
        } catch (const validation_error&) {
            throw;
        } catch (const std::exception&) {
            throw validation_error("step schedule '" + spec + "': bad parameter");
        }
    }
    throw validation_error("unknown step schedule '" + spec +
                           "' (expected const:<eta> or invt:<c>)");
}

Trajectory simulate_band(const EquilibriumProblem& problem, std::size_t steps,
                         const StepSchedule& schedule, double sigma,
                         std::uint64_t seed, double r0, double window_fraction,
                         const SearchOptions&) {
    validate_problem(problem);
    if (steps < 1) throw validation_error("simulate: need at least one step");
    if (!(sigma >= 0.0)) throw validation_error("simulate: sigma must be >= 0");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw validation_error("simulate: window fraction must be in (0, 1]");
    require_in_domain(problem.curve, r0, "simulate");
    if (!schedule.eta) throw validation_error("simulate: empty step schedule");

    Trajectory traj;
    traj.sigma = sigma;
    traj.seed = seed;
    traj.values.reserve(steps + 1);
    traj.values.push_back(r0);

    SplitMix64 rng(seed);
    double r = r0;
    for (std::size_t t = 0; t < steps; ++t) {
        const double eta = schedule.eta(t);
        if (!(eta > 0.0))
            throw validation_error("simulate: nonpositive step size at step " +
                                   std::to_string(t));
        const double slope = phi_slope(problem, r);
        if (!std::isfinite(slope))
            throw numeric_error("simulate: non-finite slope at step " +
                                std::to_string(t));
        const double noise = sigma > 0.0 ? sigma * rng.normal() : 0.0;
        r = r - eta * (slope + noise);
        r = std::clamp(r, problem.curve.r_lo, problem.curve.r_hi);
        traj.values.push_back(r);
    }

    const std::size_t count = std::max<std::size_t>(
        1, static_cast<std::size_t>(static_cast<double>(steps) * window_fraction));
    double lo = traj.values.back(), hi = traj.values.back();
    for (std::size_t i = traj.values.size() - count; i < traj.values.size(); ++i) {
        lo = std::min(lo, traj.values[i]);
        hi = std::max(hi, traj.values[i]);
    }
    traj.band_lo = lo;
    traj.band_hi = hi;
    return traj;
}

SandwichResult sandwich_optimum(const SandwichModel& model, double tol,
                                const SearchOptions& options) {
    if (!(tol > 0.0)) throw validation_error("tolerance must be positive");
    if (!(model.c0 > 0.0)) throw validation_error("sandwich: C0 must be positive");
    if (!(0.0 < model.r1 && model.r1 <= model.r2 && model.r2 < model.c0))
        throw validation_error("sandwich: need 0 < R1 <= R2 < C0");
    if (!model.error_curve || !model.g_robust || !model.g_info)
        throw validation_error("sandwich: all three curves must be supplied");

    const std::size_t n = std::max<std::size_t>(options.grid_points, 8);
    const double h = model.c0 / static_cast<double>(n - 1);
    std::vector<double> xs(n), es(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = (i + 1 == n) ? model.c0 : h * static_cast<double>(i);
        es[i] = finite_or_throw(model.error_curve(xs[i]), xs[i], "error curve");
        const double eps = 1e-12 * std::max(1.0, std::abs(es[i]));
        const double lo_bound = model.g_robust(xs[i]);
        if (lo_bound > es[i] + eps)
            throw validation_error(
                "sandwich: g_robust exceeds the error curve at grid point R = " +
                std::to_string(xs[i]));
        const double hi_bound = model.g_info(model.c0 - xs[i]);
        if (es[i] > hi_bound + eps)
            throw validation_error(
                "sandwich: error curve exceeds g_info(C0-R) at grid point R = " +
                std::to_string(xs[i]));
    }
    if (!(es[1] < es[0]))
        throw validation_error(
            "sandwich: assumption failure, no negative slope near R = 0");
    if (!(es[n - 1] > es[n - 2]))
        throw validation_error(
            "sandwich: assumption failure, no positive slope near R = C0");

    const MinimizeResult inner = minimize_scalar(
        model.error_curve, model.r1, model.r2, tol, options.grid_points,
        "error curve");
    const double margin = std::max(tol, 1e-9 * (model.r2 - model.r1));
    if (inner.r_star <= model.r1 + margin || inner.r_star >= model.r2 - margin)
        throw validation_error(
            "sandwich: assumption failure, minimizer sits on the [R1, R2] boundary");
    return SandwichResult{inner.r_star, inner.value, inner.plateau};
}

UShapeFit ushape_fit(const std::vector<std::pair<double, double>>& points,
                     bool minimize) {
    if (points.size() < 3)
        throw validation_error("ushape fit: need at least 3 points");
    std::vector<double> abscissae;
    for (const auto& [r, score] : points) {
        if (!std::isfinite(r) || !std::isfinite(score))
            throw validation_error("ushape fit: non-finite point");
        abscissae.push_back(r);
    }
    std::sort(abscissae.begin(), abscissae.end());
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < abscissae.size(); ++i)
        if (abscissae[i] != abscissae[i - 1]) ++distinct;
    if (distinct < 3)
        throw validation_error("ushape fit: need at least 3 distinct R values");

    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    for (const auto& [r, y] : points) {
        const double r2 = r * r;
        s1 += r;
        s2 += r2;
        s3 += r2 * r;
        s4 += r2 * r2;
        t0 += y;
        t1 += r * y;
        t2 += r2 * y;
    }
    Matrix normal(3, 3);
    normal.at(0, 0) = s4; normal.at(0, 1) = s3; normal.at(0, 2) = s2;
    normal.at(1, 0) = s3; normal.at(1, 1) = s2; normal.at(1, 2) = s1;
    normal.at(2, 0) = s2; normal.at(2, 1) = s1;
    normal.at(2, 2) = static_cast<double>(points.size());
    const auto coef = linalg::solve(normal, {t2, t1, t0});

    UShapeFit fit;
    fit.a = coef[0];
    fit.b = coef[1];
    fit.c = coef[2];
    const double scale = std::max({1.0, std::abs(fit.b), std::abs(fit.c)});
    fit.vertex_defined = std::abs(fit.a) > 1e-9 * scale;
    if (fit.vertex_defined) {
        fit.vertex = -fit.b / (2.0 * fit.a);
        const bool curvature_ok = minimize ? fit.a > 0.0 : fit.a < 0.0;
        fit.interior = curvature_ok && fit.vertex > abscissae.front() &&
                       fit.vertex < abscissae.back();
    } else {
        fit.vertex = std::numeric_limits<double>::quiet_NaN();
        fit.interior = false;
    }
    return fit;
}

}  // namespace redkit
