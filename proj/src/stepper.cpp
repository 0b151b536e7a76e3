#include "stepper.hpp"

#include "sharpgap/errors.hpp"
#include "sharpgap/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sharpgap::detail {

std::vector<double> output_schedule(const std::vector<double>& requested, double t_end)
{
    std::vector<double> times;
    times.reserve(requested.size() + 1);
    for (double t : requested) {
        if (!(t >= 0.0) || t > t_end) {
            std::ostringstream msg;
            msg << "output time " << t << " outside [0, " << t_end << "]";
            throw InvalidParams(msg.str());
        }
        times.push_back(t);
    }
    times.push_back(t_end);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

std::vector<TimedValues> run_explicit(const StepperSetup& setup, std::vector<double> u, double t_end,
                                      const StepControls& controls)
{
    if (!(controls.cfl > 0.0) || controls.cfl > 0.5) {
        std::ostringstream msg;
        msg << "cfl must lie in (0, 0.5] (got " << controls.cfl << ")";
        throw InvalidParams(msg.str());
    }
    const std::size_t last = setup.cells;
    const double h = setup.h;
    const double inv_h = 1.0 / h;
    const double inv_2h = 0.5 / h;
    const Boundary& bc = controls.boundary;
    const double robin = bc.kind == Boundary::Kind::Robin ? bc.robin : 0.0;

    // (n-1) T_k at the nodes.
    std::vector<double> drift(last + 1);
    for (std::size_t j = 0; j <= last; ++j) {
        const double x = j == last && setup.left == LeftEnd::OddPivot
                             ? setup.params.half_diameter()
                             : setup.origin + static_cast<double>(j) * h;
        drift[j] = (setup.params.n - 1) * tk(setup.params.kappa, x);
    }

    const std::vector<double> schedule = output_schedule(controls.output_times, t_end);
    std::vector<TimedValues> out;
    out.reserve(schedule.size());

    std::vector<double> rhs(last + 1, 0.0);
    std::size_t next = 0;
    double t = 0.0;
    std::size_t steps = 0;
    const std::size_t first = setup.left == LeftEnd::OddPivot ? 1 : 0;
    // alpha = beta = 1. Multiplying by 1.0 is exact, so this shortcut is
    // bitwise identical to the generic path with p = 2.
    const bool heat = setup.flux.kind == Flux::Kind::Heat;
    if (setup.left == LeftEnd::OddPivot)
        u[0] = 0.0;

    for (;;) {
        while (next < schedule.size() && schedule[next] <= t) {
            out.push_back({schedule[next], u});
            ++next;
        }
        if (next == schedule.size())
            break;

        // alpha(u') u'' is taken in divergence form (F(q+) - F(q-)) / h with
        // F(q) = beta(q) q evaluated on cell faces; F' = alpha for both flux
        // families, and it reduces to the centred second difference when
        // alpha = beta = 1. The drift uses the centred nodal gradient.
        double max_rate = 0.0;
        auto face = [&](double q) {
            if (heat)
                return q;
            const FluxCoefficients c = flux_eval(setup.flux, q);
            max_rate = std::max(max_rate, std::max(c.alpha, c.beta));
            return c.beta * q;
        };
        auto drift_term = [&](std::size_t j, double q) {
            if (heat)
                return drift[j] * q;
            return drift[j] * flux_eval(setup.flux, q).beta * q;
        };

        // Ghosts: d_nu u = r u at the outer ends (d_nu = -d/ds on the left).
        const double ghost_left = u[1] + 2.0 * h * robin * u[0];
        const double ghost_right = u[last - 1] + 2.0 * h * robin * u[last];
        double f_left = face((u[first] - (first == 0 ? ghost_left : u[0])) * inv_h);
        for (std::size_t j = first; j <= last; ++j) {
            const double below = j == 0 ? ghost_left : u[j - 1];
            const double above = j == last ? ghost_right : u[j + 1];
            const double f_right = face((above - u[j]) * inv_h);
            rhs[j] = (f_right - f_left) * inv_h - drift_term(j, (above - below) * inv_2h);
            f_left = f_right;
        }
        const double max_alpha = heat ? 1.0 : max_rate;

        const double remaining = schedule[next] - t;
        double dt = remaining;
        if (max_alpha > 0.0) {
            const double stable = controls.cfl * h * h / max_alpha;
            if (!(stable > 1e-13 * t_end)) {
                std::ostringstream msg;
                msg << "explicit step collapsed to " << stable << " (max alpha " << max_alpha << ") at t=" << t;
                throw CflViolation(msg.str());
            }
            dt = std::min(dt, stable);
        }
        if (++steps > controls.max_steps) {
            std::ostringstream msg;
            msg << "step budget of " << controls.max_steps << " exhausted at t=" << t << " of " << t_end;
            throw CflViolation(msg.str());
        }
        for (std::size_t j = first; j <= last; ++j)
            u[j] += dt * rhs[j];
        t = dt == remaining ? schedule[next] : t + dt;
    }
    return out;
}

} // namespace sharpgap::detail
