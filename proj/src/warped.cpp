#include "sharpgap/warped.hpp"

#include "sharpgap/errors.hpp"
#include "sharpgap/specialfn.hpp"
#include "sharpgap/sturm.hpp"
#include "stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace sharpgap {

RicciReport ricci_bounds(int n, double kappa, double a, double diameter)
{
    ModelParams{n, kappa, diameter}.validate();
    if (!(a > 0.0) || !std::isfinite(a)) {
        std::ostringstream msg;
        msg << "warp amplitude a must be positive (got " << a << ")";
        throw InvalidParams(msg.str());
    }
    const double base = (n - 1) * kappa;
    const double gap = 1.0 / a - kappa;
    // C_k^2 is monotone in |s|, so the extremum sits at s = 0 or s = D/2.
    auto tangential = [&](double s) {
        const double c = ck(kappa, s);
        return base + (n - 2) * gap / (c * c);
    };
    RicciReport r;
    r.radial = base;
    r.tangential_min = std::min(tangential(0.0), tangential(0.5 * diameter));
    r.admissible = std::min(r.radial, r.tangential_min) >= base - kRicciSlack;
    return r;
}

double default_warp(double kappa) noexcept
{
    if (kappa <= 0.0)
        return 1.0;
    return std::min(1.0, 1.0 / (2.0 * kappa));
}

std::vector<double> odd_extension(const Profile& phi)
{
    const std::size_t m = phi.grid.cells;
    std::vector<double> u(2 * m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        u[m + k] = phi.values[k];
        u[m - k] = -phi.values[k];
    }
    u[m] = 0.0;
    return u;
}

RadialSolution radial_flow(const WarpedMetric& metric, const Flux& flux, std::vector<double> u0, double t_end,
                           const StepControls& controls)
{
    const ModelParams& params = metric.params;
    params.validate();
    flux.validate();
    if (!(t_end > 0.0))
        throw InvalidParams("t_end must be positive");
    const RicciReport ricci = metric.ricci();
    if (!ricci.admissible) {
        std::ostringstream msg;
        msg << "warped metric with a=" << metric.a << " violates Ric >= (n-1)kappa (tangential minimum "
            << ricci.tangential_min << ")";
        throw InvalidParams(msg.str());
    }
    if (u0.size() < 2 * kMinGridCells + 1 || u0.size() % 2 == 0)
        throw InvalidParams("radial initial data needs an odd sample count of at least 33");

    RadialSolution sol;
    sol.grid = {params.half_diameter(), (u0.size() - 1) / 2};
    sol.flux = resolve_regularization(flux, oscillation(u0), params.diameter);
    sol.metric = metric;

    detail::StepperSetup setup;
    setup.params = params;
    setup.flux = sol.flux;
    setup.origin = -params.half_diameter();
    setup.h = sol.grid.h();
    setup.cells = u0.size() - 1;
    setup.left = detail::LeftEnd::Outer;

    auto timed = detail::run_explicit(setup, std::move(u0), t_end, controls);
    sol.profiles.reserve(timed.size());
    for (auto& tv : timed)
        sol.profiles.push_back({tv.t, std::move(tv.values)});
    return sol;
}

ViolationReport verify_moc(const RadialSolution& solution, const std::vector<Profile>& phi_series, double tol)
{
    if (solution.profiles.size() != phi_series.size()) {
        std::ostringstream msg;
        msg << "radial solution has " << solution.profiles.size() << " time stamps, modulus series has "
            << phi_series.size();
        throw Mismatch(msg.str());
    }
    const std::size_t m = solution.grid.cells_per_side;
    const std::size_t nodes = solution.grid.nodes();

    ViolationReport rep;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < phi_series.size(); ++k) {
        const Snapshot& snap = solution.profiles[k];
        const Profile& phi = phi_series[k];
        if (std::fabs(snap.t - phi.t) > 1e-12 * std::max(1.0, std::fabs(snap.t))) {
            std::ostringstream msg;
            msg << "time stamp " << k << " differs: " << snap.t << " vs " << phi.t;
            throw Mismatch(msg.str());
        }
        if (phi.grid.cells != m || snap.values.size() != nodes || phi.values.size() != m + 1)
            throw Mismatch("modulus grid does not match the radial grid");

        const auto& u = snap.values;
        const auto& f = phi.values;
        // phi at half the separation d h.
        auto modulus = [&](std::size_t d) {
            return d % 2 == 0 ? f[d / 2] : 0.5 * (f[d / 2] + f[d / 2 + 1]);
        };
        for (std::size_t i = 0; i < nodes; ++i) {
            for (std::size_t j = i + 1; j < nodes; ++j) {
                const double margin = std::fabs(u[j] - u[i]) - 2.0 * modulus(j - i);
                rep.worst_margin = std::max(rep.worst_margin, margin);
                if (margin > tol)
                    ++rep.violations;
                ++rep.pairs_checked;
            }
        }
        for (std::size_t s = 0; s <= m; ++s)
            rep.antipodal_defect = std::max(rep.antipodal_defect, std::fabs(u[m + s] - u[m - s] - 2.0 * f[s]));
        ++rep.time_stamps;
    }
    return rep;
}

std::vector<DecaySample> oscillation_series(const RadialSolution& solution)
{
    std::vector<DecaySample> out;
    out.reserve(solution.profiles.size());
    for (const auto& snap : solution.profiles)
        out.push_back({snap.t, oscillation(snap.values)});
    return out;
}

double fit_decay(std::span<const DecaySample> series, double window)
{
    if (!(window > 0.0) || window > 1.0)
        throw InvalidParams("fit window must lie in (0, 1]");
    const auto count = static_cast<std::size_t>(std::ceil(window * static_cast<double>(series.size()) - 1e-9));
    if (count < 4) {
        std::ostringstream msg;
        msg << "decay fit needs at least 4 samples in the window (got " << count << ")";
        throw InvalidParams(msg.str());
    }
    const auto tail = series.subspan(series.size() - count);
    double st = 0.0;
    double sy = 0.0;
    for (const auto& smp : tail) {
        if (!(smp.osc > 0.0)) {
            std::ostringstream msg;
            msg << "non-positive oscillation " << smp.osc << " at t=" << smp.t;
            throw InvalidParams(msg.str());
        }
        st += smp.t;
        sy += std::log(smp.osc);
    }
    const double n = static_cast<double>(count);
    const double tbar = st / n;
    const double ybar = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& smp : tail) {
        const double dx = smp.t - tbar;
        sxx += dx * dx;
        sxy += dx * (std::log(smp.osc) - ybar);
    }
    if (!(sxx > 0.0))
        throw InvalidParams("decay fit needs distinct sample times");
    return -sxy / sxx;
}

std::vector<double> seeded_odd_data(const ModelParams& params, std::size_t cells_per_side, std::uint64_t seed,
                                    double tol)
{
    params.validate();
    const std::size_t m = cells_per_side;
    if (2 * m < kMinOracleCells)
        throw InvalidParams("seeded data needs at least 32 cells per side");

    const double mu = first_eigenvalue(params, tol).mu;
    const PhiTrajectory phi = integrate_phi(params, mu, m);
    double peak = 0.0;
    for (double v : phi.phi)
        peak = std::max(peak, std::fabs(v));

    std::vector<double> f(2 * m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        f[m + k] = phi.phi[k] / peak;
        f[m - k] = -phi.phi[k] / peak;
    }

    const auto modes = sl_fd_modes(params, 2 * m, 6);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-0.5, 0.5);
    for (std::size_t k = 1; k < modes.size(); ++k) {
        const double c = coef(rng);
        for (std::size_t j = 0; j < f.size(); ++j)
            f[j] += c * modes[k].vector[j];
    }

    std::vector<double> u(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        u[j] = 0.5 * (f[j] - f[f.size() - 1 - j]);
    u[m] = 0.0;
    return u;
}

Profile seeded_concave_profile(const ModelParams& params, std::size_t cells, std::uint64_t seed)
{
    params.validate();
    if (cells < kMinGridCells)
        throw InvalidParams("profile needs at least 16 cells");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(0.2, 1.0);
    double c[3];
    for (double& ci : c)
        ci = coef(rng);

    const Grid1D grid{params.half_diameter(), cells};
    std::vector<double> v(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        const double x = 1.0 - grid.node(i) / grid.half_diameter;
        double acc = 0.0;
        double pow = x;
        for (int k = 1; k <= 3; ++k) {
            pow *= x;   // x^{k+1}
            acc += c[k - 1] * (1.0 - pow) / (k + 1);
        }
        v[i] = acc;
    }
    const double top = v.back();
    for (double& val : v)
        val /= top;
    v[0] = 0.0;
    return Profile{grid, 0.0, std::move(v)};
}

DecayRun decay_run(const ModelParams& params, const Flux& flux, std::size_t cells_per_side, std::uint64_t seed,
                   std::optional<double> t_end, double cfl, std::size_t samples, double window, double tol)
{
    if (samples < 4)
        throw InvalidParams("decay run needs at least 4 samples");
    DecayRun run;
    run.mu = first_eigenvalue(params, tol).mu;
    run.t_end = t_end.value_or(6.0 / run.mu);
    run.window = window;

    StepControls controls;
    controls.cfl = cfl;
    for (std::size_t k = 0; k + 1 < samples; ++k)
        controls.output_times.push_back(run.t_end * static_cast<double>(k) / static_cast<double>(samples - 1));

    const WarpedMetric metric{params, default_warp(params.kappa)};
    const auto sol = radial_flow(metric, flux, seeded_odd_data(params, cells_per_side, seed, tol), run.t_end, controls);
    run.series = oscillation_series(sol);
    run.rate = fit_decay(run.series, window);
    return run;
}

MocRun moc_run(const ModelParams& params, const Flux& flux, std::size_t cells, std::uint64_t seed, double t_end,
               std::optional<double> a, double cfl, std::size_t samples)
{
    const Profile phi0 = seeded_concave_profile(params, cells, seed);
    const std::vector<double> u0 = odd_extension(phi0);

    MocRun run;
    run.a = a.value_or(default_warp(params.kappa));
    run.flux = resolve_regularization(flux, oscillation(phi0.values), params.diameter);
    const double h = phi0.grid.h();
    run.tolerance = 5.0 * h * h * oscillation(u0);

    StepControls controls;
    controls.cfl = cfl;
    for (std::size_t k = 0; k < samples; ++k)
        controls.output_times.push_back(t_end * static_cast<double>(k) / static_cast<double>(samples));

    run.phi = evolve(run.flux, params, phi0, t_end, controls);
    run.radial = radial_flow(WarpedMetric{params, run.a}, run.flux, u0, t_end, controls);
    run.report = verify_moc(run.radial, run.phi, run.tolerance);
    return run;
}

} // namespace sharpgap
