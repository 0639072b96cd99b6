#include "redkit/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "redkit/errors.hpp"

namespace redkit {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

Kernel Kernel::power(double alpha) {
    if (!std::isfinite(alpha))
        throw validation_error("power kernel: alpha must be finite");
    if (alpha == 0.0 || alpha == 1.0)
        throw validation_error(
            "power kernel: alpha in {0,1} is the KL limit; use the kl kernel");
    return Kernel(KernelKind::power_alpha, alpha);
}

Kernel Kernel::from_name(const std::string& name) {
    if (name == "kl") return kl();
    if (name == "chi2") return chi_squared();
    if (name == "hellinger2") return squared_hellinger();
    if (name == "js") return jensen_shannon();
    if (name.rfind("power:", 0) == 0) {
        const std::string arg = name.substr(6);
        std::size_t pos = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(arg, &pos);
        } catch (const std::exception&) {
            throw validation_error("power kernel: cannot parse alpha in '" + name + "'");
        }
        if (pos != arg.size())
            throw validation_error("power kernel: trailing characters in '" + name + "'");
        return power(alpha);
    }
    throw validation_error("unknown kernel '" + name +
                           "' (expected kl, chi2, power:<alpha>, hellinger2, js)");
}

std::string Kernel::name() const {
    switch (kind_) {
        case KernelKind::kl: return "kl";
        case KernelKind::chi_squared: return "chi2";
        case KernelKind::power_alpha: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "power:%.9g", alpha_);
            return buf;
        }
        case KernelKind::squared_hellinger: return "hellinger2";
        case KernelKind::jensen_shannon: return "js";
    }
    return "?";
}

double Kernel::eval(double t) const {
    if (!(t >= 0.0))
        throw validation_error("kernel argument must be a nonnegative real");
    switch (kind_) {
        case KernelKind::kl:
            return t > 0.0 ? t * std::log(t) : 0.0;
        case KernelKind::chi_squared: {
            const double d = t - 1.0;
            return 0.5 * d * d;
        }
        case KernelKind::power_alpha: {
            if (t == 0.0) {
                if (alpha_ > 0.0) return 1.0 / alpha_;
                return std::numeric_limits<double>::infinity();
            }
            return (std::pow(t, alpha_) - 1.0 - alpha_ * (t - 1.0)) /
                   (alpha_ * (alpha_ - 1.0));
        }
        case KernelKind::squared_hellinger: {
            const double d = std::sqrt(t) - 1.0;
            return d * d;
        }
        case KernelKind::jensen_shannon: {
            if (t == 0.0) return 0.5 * kLn2;
            return 0.5 * (t * std::log(2.0 * t / (1.0 + t)) +
                          std::log(2.0 / (1.0 + t)));
        }
    }
    return 0.0;
}

double Kernel::curvature_at_one() const {
    switch (kind_) {
        case KernelKind::kl:
        case KernelKind::chi_squared:
        case KernelKind::power_alpha:
            return 1.0;
        case KernelKind::squared_hellinger:
            return 0.5;
        case KernelKind::jensen_shannon:
            return 0.25;
    }
    return 0.0;
}

double Kernel::slope_at_one() const {
    return kind_ == KernelKind::kl ? 1.0 : 0.0;
}

}  // namespace redkit
