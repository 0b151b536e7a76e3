#include "sharpgap/moc_pde.hpp"

#include "sharpgap/errors.hpp"
#include "stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sharpgap {

double oscillation(std::span<const double> values) noexcept
{
    if (values.empty())
        return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

Profile make_profile(const ModelParams& params, std::vector<double> values, double t)
{
    params.validate();
    if (values.size() < kMinGridCells + 1) {
        std::ostringstream msg;
        msg << "profile needs at least " << kMinGridCells + 1 << " samples (got " << values.size() << ")";
        throw InvalidParams(msg.str());
    }
    Profile p;
    p.grid = {params.half_diameter(), values.size() - 1};
    p.t = t;
    p.values = std::move(values);
    return p;
}

double matching_robin_coefficient(const Profile& phi0)
{
    const auto& v = phi0.values;
    const std::size_t m = v.size() - 1;
    const double slope = (3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) / (2.0 * phi0.grid.h());
    if (v[m] == 0.0)
        throw InvalidParams("Robin matching needs a nonzero endpoint value");
    return slope / v[m];
}

std::vector<Profile> evolve(const Flux& flux, const ModelParams& params, const Profile& phi0, double t_end,
                            const StepControls& controls)
{
    params.validate();
    flux.validate();
    if (!(t_end > 0.0))
        throw InvalidParams("t_end must be positive");
    const Grid1D& grid = phi0.grid;
    if (grid.cells < kMinGridCells || phi0.values.size() != grid.nodes())
        throw InvalidParams("initial profile does not match its grid (or has fewer than 16 cells)");
    if (std::fabs(grid.half_diameter - params.half_diameter()) > 1e-12 * params.half_diameter())
        throw InvalidParams("initial profile grid does not span [0, D/2]");
    if (phi0.values[0] != 0.0)
        throw InvalidParams("initial profile must vanish at s = 0");
    const double osc = oscillation(phi0.values);
    for (std::size_t i = 0; i + 1 < phi0.values.size(); ++i) {
        if (phi0.values[i + 1] < phi0.values[i] - 1e-14 * osc) {
            std::ostringstream msg;
            msg << "initial profile must be nondecreasing (drops at s=" << grid.node(i + 1) << ")";
            throw InvalidParams(msg.str());
        }
    }

    detail::StepperSetup setup;
    setup.params = params;
    setup.flux = resolve_regularization(flux, osc, params.diameter);
    setup.origin = 0.0;
    setup.h = grid.h();
    setup.cells = grid.cells;
    setup.left = detail::LeftEnd::OddPivot;

    auto timed = detail::run_explicit(setup, phi0.values, t_end, controls);
    std::vector<Profile> out;
    out.reserve(timed.size());
    for (auto& tv : timed)
        out.push_back(Profile{grid, tv.t, std::move(tv.values)});
    return out;
}

} // namespace sharpgap
