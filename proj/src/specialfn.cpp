#include "sharpgap/specialfn.hpp"

#include "sharpgap/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sharpgap {

double ck(double kappa, double tau) noexcept
{
    if (kappa == 0.0)
        return 1.0;
    const double x = kappa * tau * tau;
    if (std::fabs(x) < kTrigSeriesThreshold)
        return 1.0 - x / 2.0 + x * x / 24.0;
    if (kappa > 0.0)
        return std::cos(std::sqrt(kappa) * tau);
    return std::cosh(std::sqrt(-kappa) * tau);
}

double sk(double kappa, double tau) noexcept
{
    if (kappa == 0.0)
        return tau;
    const double x = kappa * tau * tau;
    if (std::fabs(x) < kTrigSeriesThreshold)
        return tau * (1.0 - x / 6.0 + x * x / 120.0);
    if (kappa > 0.0) {
        const double r = std::sqrt(kappa);
        return std::sin(r * tau) / r;
    }
    const double r = std::sqrt(-kappa);
    return std::sinh(r * tau) / r;
}

double tk(double kappa, double s)
{
    if (kappa == 0.0)
        return 0.0;
    const double c = ck(kappa, s);
    const double num = kappa * sk(kappa, s);
    if (std::fabs(c) < kPoleTolerance * std::max(1.0, std::fabs(num))) {
        std::ostringstream msg;
        msg << "T_kappa pole: kappa=" << kappa << " s=" << s
            << " (C_kappa(s)=" << c << ")";
        throw PoleError(msg.str());
    }
    return num / c;
}

double KappaTrig::first_pole() const noexcept
{
    if (kappa_ <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::numbers::pi / (2.0 * std::sqrt(kappa_));
}

} // namespace sharpgap
