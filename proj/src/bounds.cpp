#include "sharpgap/bounds.hpp"

#include "sharpgap/errors.hpp"
#include "sharpgap/sturm.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace sharpgap {

ShiZhang shi_zhang_bound(int n, double kappa, double diameter) noexcept
{
    const double a = std::numbers::pi * std::numbers::pi / (diameter * diameter);
    const double b = (n - 1) * kappa;
    const double s = std::clamp(0.5 + b / (8.0 * a), 0.0, 1.0);
    return {4.0 * s * (1.0 - s) * a + s * b, s};
}

BoundsReport classical_bounds(const ModelParams& params, double tol)
{
    params.validate();
    BoundsReport r;
    r.sharp_mu = first_eigenvalue(params, tol).mu;
    if (params.kappa > 0.0)
        r.lichnerowicz = params.n * params.kappa;
    r.zhong_yang = std::numbers::pi * std::numbers::pi / (params.diameter * params.diameter);
    r.li_conjecture = r.zhong_yang + (params.n - 1) * params.kappa;
    const ShiZhang sz = shi_zhang_bound(params.n, params.kappa, params.diameter);
    r.shi_zhang = sz.value;
    r.shi_zhang_s = sz.s;
    r.li_violated = r.sharp_mu < r.li_conjecture - kLiSlack;
    return r;
}

double asymptotic_slope(int n, double h, double tol)
{
    if (!(h > 0.0) || h > 0.05) {
        std::ostringstream msg;
        msg << "slope step h must lie in (0, 0.05] (got " << h << ")";
        throw InvalidParams(msg.str());
    }
    const double plus = first_eigenvalue({n, h, std::numbers::pi}, tol).mu;
    const double minus = first_eigenvalue({n, -h, std::numbers::pi}, tol).mu;
    return (plus - minus) / (2.0 * h);
}

} // namespace sharpgap
