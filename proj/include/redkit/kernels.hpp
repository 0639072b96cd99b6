#pragma once

#include <string>

namespace redkit {

enum class KernelKind {
    kl,                 // f(t) = t ln t
    chi_squared,        // f(t) = (t-1)^2 / 2
    power_alpha,        // f(t) = (t^a - 1 - a(t-1)) / (a(a-1)),  a not in {0,1}
    squared_hellinger,  // f(t) = (sqrt(t) - 1)^2
    jensen_shannon      // f(t) = [t ln(2t/(1+t)) + ln(2/(1+t))] / 2
};

// Convex kernel with f(1) = 0; the redundancy geometry is selected by its
// kind. Immutable after construction, so safe to share across threads.
//
// Values at t = 0 are the analytic right limits, never ln(0):
//   kl:        lim t ln t            = 0
//   chi2:      (0-1)^2 / 2           = 1/2
//   power a:   (0 - 1 + a)/(a(a-1))  = 1/a   for a > 0; +inf for a < 0
//   hellinger: (0-1)^2               = 1
//   js:        [0 + ln 2] / 2        = ln(2)/2
class Kernel {
public:
    static Kernel kl() { return Kernel(KernelKind::kl, 0.0); }
    static Kernel chi_squared() { return Kernel(KernelKind::chi_squared, 0.0); }
    static Kernel squared_hellinger() {
        return Kernel(KernelKind::squared_hellinger, 0.0);
    }
    static Kernel jensen_shannon() {
        return Kernel(KernelKind::jensen_shannon, 0.0);
    }
    // Throws validation_error for alpha in {0, 1} (those limits are the KL
    // kernel; select it explicitly) or non-finite alpha.
    static Kernel power(double alpha);

    // Accepts "kl", "chi2", "power:<alpha>", "hellinger2", "js".
    static Kernel from_name(const std::string& name);

    KernelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string name() const;

    // f(t) for t >= 0; throws validation_error for negative or NaN t.
    double eval(double t) const;

    // f''(1): kl 1, chi2 1, power 1, hellinger2 1/2, js 1/4.
    double curvature_at_one() const;

    // f'(1): kl 1, all other kinds 0.
    double slope_at_one() const;

private:
    Kernel(KernelKind kind, double alpha) : kind_(kind), alpha_(alpha) {}

    KernelKind kind_;
    double alpha_;
};

}  // namespace redkit
