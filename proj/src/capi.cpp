#include "sharpgap/sharpgap.h"

#include "sharpgap/bounds.hpp"
#include "sharpgap/errors.hpp"
#include "sharpgap/flux.hpp"
#include "sharpgap/moc_pde.hpp"
#include "sharpgap/specialfn.hpp"
#include "sharpgap/sturm.hpp"
#include "sharpgap/warped.hpp"

#include <algorithm>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

using namespace sharpgap;

struct sg_eigen {
    EigenResult result;
};

struct sg_series {
    double origin = 0.0;
    double spacing = 0.0;
    std::variant<std::vector<Profile>, RadialSolution> data;

    [[nodiscard]] std::size_t count() const
    {
        return std::visit(
            [](const auto& d) -> std::size_t {
                if constexpr (std::is_same_v<std::decay_t<decltype(d)>, RadialSolution>)
                    return d.profiles.size();
                else
                    return d.size();
            },
            data);
    }
    [[nodiscard]] double time(std::size_t i) const
    {
        if (const auto* r = std::get_if<RadialSolution>(&data))
            return r->profiles[i].t;
        return std::get<std::vector<Profile>>(data)[i].t;
    }
    [[nodiscard]] const std::vector<double>& values(std::size_t i) const
    {
        if (const auto* r = std::get_if<RadialSolution>(&data))
            return r->profiles[i].values;
        return std::get<std::vector<Profile>>(data)[i].values;
    }
};

struct sg_decay_run {
    DecayRun run;
    std::vector<double> t;
    std::vector<double> osc;
};

namespace {

thread_local std::string g_last_error;

sg_status fail(sg_status status, const char* what)
{
    g_last_error = what;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
sg_status guarded(F&& body) noexcept
{
    try {
        body();
        return SG_OK;
    } catch (const InvalidParams& e) {
        return fail(SG_ERR_INVALID_PARAMS, e.what());
    } catch (const NonConvergence& e) {
        return fail(SG_ERR_NONCONVERGENCE, e.what());
    } catch (const PoleError& e) {
        return fail(SG_ERR_POLE, e.what());
    } catch (const CflViolation& e) {
        return fail(SG_ERR_CFL, e.what());
    } catch (const DegenerateFlux& e) {
        return fail(SG_ERR_DEGENERATE, e.what());
    } catch (const Mismatch& e) {
        return fail(SG_ERR_MISMATCH, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SG_ERR_INTERNAL, "unknown error");
    }
}


template <class... Ptrs>
bool any_null(const Ptrs*... ptrs)
{
    return ((ptrs == nullptr) || ...);
}

ModelParams to_params(const sg_model& m)
{
    return {m.n, m.kappa, m.diameter};
}

Flux to_flux(const sg_flux& f)
{
    Flux out;
    out.kind = f.kind == SG_FLUX_PLAPLACIAN ? Flux::Kind::PLaplacian : Flux::Kind::Heat;
    out.p = f.kind == SG_FLUX_PLAPLACIAN ? f.p : 2.0;
    if (f.has_epsilon)
        out.epsilon = f.epsilon;
    out.validate();
    return out;
}

StepControls to_controls(const sg_controls* c)
{
    StepControls out;
    if (c == nullptr)
        return out;
    out.cfl = c->cfl;
    if (c->output_times != nullptr)
        out.output_times.assign(c->output_times, c->output_times + c->output_count);
    out.boundary = c->boundary == SG_BOUNDARY_ROBIN ? Boundary::robin_with(c->robin) : Boundary::neumann();
    if (c->max_steps > 0)
        out.max_steps = c->max_steps;
    return out;
}

} // namespace

#define SG_REQUIRE(...)                                                                                      \
    do {                                                                                                     \
        if (any_null(__VA_ARGS__))                                                                           \
            return fail(SG_ERR_NULL_ARGUMENT, "null argument");                                              \
    } while (0)

extern "C" {

SG_API const char* sg_last_error(void)
{
    return g_last_error.c_str();
}

SG_API const char* sg_status_name(sg_status status)
{
    switch (status) {
    case SG_OK: return "ok";
    case SG_ERR_IO: return "io";
    case SG_ERR_INVALID_PARAMS: return "invalid_params";
    case SG_ERR_NONCONVERGENCE: return "nonconvergence";
    case SG_ERR_POLE: return "pole";
    case SG_ERR_CFL: return "cfl";
    case SG_ERR_DEGENERATE: return "degenerate";
    case SG_ERR_MISMATCH: return "mismatch";
    case SG_ERR_NULL_ARGUMENT: return "null_argument";
    case SG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

SG_API const char* sg_version(void)
{
    return "1.0.0";
}

SG_API sg_status sg_model_validate(const sg_model* model)
{
    SG_REQUIRE(model);
    return guarded([&] { to_params(*model).validate(); });
}

SG_API double sg_ck(double kappa, double tau)
{
    return ck(kappa, tau);
}

SG_API double sg_sk(double kappa, double tau)
{
    return sk(kappa, tau);
}

SG_API sg_status sg_tk(double kappa, double s, double* out)
{
    SG_REQUIRE(out);
    return guarded([&] { *out = tk(kappa, s); });
}

// ---- eigenvalue -------------------------------------------------------------

SG_API sg_status sg_eigen_solve(const sg_model* model, double tol, sg_eigen** out)
{
    SG_REQUIRE(model, out);
    *out = nullptr;
    return guarded([&] { *out = new sg_eigen{first_eigenvalue(to_params(*model), tol)}; });
}

SG_API double sg_eigen_mu(const sg_eigen* eigen)
{
    return eigen ? eigen->result.mu : 0.0;
}

SG_API void sg_eigen_bracket(const sg_eigen* eigen, double* lo, double* hi)
{
    if (!eigen)
        return;
    if (lo)
        *lo = eigen->result.bracket_lo;
    if (hi)
        *hi = eigen->result.bracket_hi;
}

SG_API int sg_eigen_iterations(const sg_eigen* eigen)
{
    return eigen ? eigen->result.iterations : 0;
}

SG_API size_t sg_eigen_steps(const sg_eigen* eigen)
{
    return eigen ? eigen->result.steps : 0;
}

SG_API size_t sg_eigen_trajectory(const sg_eigen* eigen, const double** s, const double** phi, const double** dphi)
{
    if (!eigen)
        return 0;
    const PhiTrajectory& tr = eigen->result.trajectory;
    if (s)
        *s = tr.grid.data();
    if (phi)
        *phi = tr.phi.data();
    if (dphi)
        *dphi = tr.dphi.data();
    return tr.grid.size();
}

SG_API void sg_eigen_free(sg_eigen* eigen)
{
    delete eigen;
}

SG_API sg_status sg_integrate_phi(const sg_model* model, double sigma, size_t steps, double* s, double* phi,
                                  double* dphi, double* first_zero)
{
    SG_REQUIRE(model);
    return guarded([&] {
        const PhiTrajectory tr = integrate_phi(to_params(*model), sigma, steps);
        for (std::size_t i = 0; i < tr.grid.size(); ++i) {
            if (s)
                s[i] = tr.grid[i];
            if (phi)
                phi[i] = tr.phi[i];
            if (dphi)
                dphi[i] = tr.dphi[i];
        }
        if (first_zero)
            *first_zero = tr.first_dphi_zero.value_or(-1.0);
    });
}

SG_API sg_status sg_sphere_limit(int n, double kappa, double* out)
{
    SG_REQUIRE(out);
    return guarded([&] { *out = sphere_limit_eigenvalue(n, kappa); });
}

SG_API sg_status sg_fd_oracle(const sg_model* model, size_t cells, double* out)
{
    SG_REQUIRE(model, out);
    return guarded([&] { *out = sl_fd_oracle(to_params(*model), cells); });
}

SG_API sg_status sg_fd_oracle_extrapolated(const sg_model* model, size_t cells, double* out)
{
    SG_REQUIRE(model, out);
    return guarded([&] { *out = sl_fd_oracle_extrapolated(to_params(*model), cells); });
}

// ---- bounds -----------------------------------------------------------------

SG_API sg_status sg_classical_bounds(const sg_model* model, double tol, sg_bounds* out)
{
    SG_REQUIRE(model, out);
    return guarded([&] {
        const BoundsReport r = classical_bounds(to_params(*model), tol);
        out->sharp_mu = r.sharp_mu;
        out->has_lichnerowicz = r.lichnerowicz.has_value() ? 1 : 0;
        out->lichnerowicz = r.lichnerowicz.value_or(0.0);
        out->zhong_yang = r.zhong_yang;
        out->li_conjecture = r.li_conjecture;
        out->shi_zhang = r.shi_zhang;
        out->shi_zhang_s = r.shi_zhang_s;
        out->li_violated = r.li_violated ? 1 : 0;
    });
}

SG_API sg_status sg_asymptotic_slope(int n, double h, double tol, double* out)
{
    SG_REQUIRE(out);
    return guarded([&] { *out = asymptotic_slope(n, h, tol); });
}

// ---- flux and evolution -----------------------------------------------------

SG_API sg_status sg_flux_parse(const char* spec, sg_flux* out)
{
    SG_REQUIRE(spec, out);
    return guarded([&] {
        const Flux f = Flux::parse(spec);
        out->kind = f.kind == Flux::Kind::PLaplacian ? SG_FLUX_PLAPLACIAN : SG_FLUX_HEAT;
        out->p = f.p;
        out->has_epsilon = f.epsilon.has_value() ? 1 : 0;
        out->epsilon = f.epsilon.value_or(0.0);
    });
}

SG_API sg_status sg_flux_eval(const sg_flux* flux, double q, double* alpha, double* beta)
{
    SG_REQUIRE(flux, alpha, beta);
    return guarded([&] {
        const FluxCoefficients c = flux_eval(to_flux(*flux), q);
        *alpha = c.alpha;
        *beta = c.beta;
    });
}

SG_API void sg_controls_default(sg_controls* controls)
{
    if (!controls)
        return;
    const StepControls d;
    controls->cfl = d.cfl;
    controls->output_times = nullptr;
    controls->output_count = 0;
    controls->boundary = SG_BOUNDARY_NEUMANN;
    controls->robin = 0.0;
    controls->max_steps = d.max_steps;
}

SG_API size_t sg_series_count(const sg_series* series)
{
    return series ? series->count() : 0;
}

SG_API double sg_series_time(const sg_series* series, size_t index)
{
    if (!series || index >= series->count())
        return 0.0;
    return series->time(index);
}

SG_API size_t sg_series_values(const sg_series* series, size_t index, const double** values)
{
    if (!series || index >= series->count())
        return 0;
    const auto& v = series->values(index);
    if (values)
        *values = v.data();
    return v.size();
}

SG_API double sg_series_origin(const sg_series* series)
{
    return series ? series->origin : 0.0;
}

SG_API double sg_series_spacing(const sg_series* series)
{
    return series ? series->spacing : 0.0;
}

SG_API double sg_series_oscillation(const sg_series* series, size_t index)
{
    if (!series || index >= series->count())
        return 0.0;
    return oscillation(series->values(index));
}

SG_API void sg_series_free(sg_series* series)
{
    delete series;
}

SG_API sg_status sg_evolve(const sg_flux* flux, const sg_model* model, const double* phi0, size_t count,
                           double t_end, const sg_controls* controls, sg_series** out)
{
    SG_REQUIRE(flux, model, phi0, out);
    *out = nullptr;
    return guarded([&] {
        const ModelParams params = to_params(*model);
        const Profile p0 = make_profile(params, std::vector<double>(phi0, phi0 + count));
        auto series = std::make_unique<sg_series>();
        series->origin = 0.0;
        series->spacing = p0.grid.h();
        series->data = evolve(to_flux(*flux), params, p0, t_end, to_controls(controls));
        *out = series.release();
    });
}

// ---- warped -------------------------------------------------------------------

SG_API sg_status sg_ricci_bounds(int n, double kappa, double a, double diameter, sg_ricci_report* out)
{
    SG_REQUIRE(out);
    return guarded([&] {
        const RicciReport r = ricci_bounds(n, kappa, a, diameter);
        out->radial = r.radial;
        out->tangential_min = r.tangential_min;
        out->admissible = r.admissible ? 1 : 0;
    });
}

SG_API double sg_default_warp(double kappa)
{
    return default_warp(kappa);
}

SG_API sg_status sg_radial_flow(const sg_model* model, double a, const sg_flux* flux, const double* u0,
                                size_t count, double t_end, const sg_controls* controls, sg_series** out)
{
    SG_REQUIRE(model, flux, u0, out);
    *out = nullptr;
    return guarded([&] {
        const WarpedMetric metric{to_params(*model), a};
        auto sol = radial_flow(metric, to_flux(*flux), std::vector<double>(u0, u0 + count), t_end,
                               to_controls(controls));
        auto series = std::make_unique<sg_series>();
        series->origin = -sol.grid.half_diameter;
        series->spacing = sol.grid.h();
        series->data = std::move(sol);
        *out = series.release();
    });
}

SG_API sg_status sg_verify_moc(const sg_series* radial, const sg_series* phi, double tol, sg_violation_report* out)
{
    SG_REQUIRE(radial, phi, out);
    const auto* sol = std::get_if<RadialSolution>(&radial->data);
    const auto* prof = std::get_if<std::vector<Profile>>(&phi->data);
    if (!sol || !prof)
        return fail(SG_ERR_MISMATCH, "verify_moc needs a radial series and a comparison series");
    return guarded([&] {
        const ViolationReport r = verify_moc(*sol, *prof, tol);
        out->violations = r.violations;
        out->pairs_checked = r.pairs_checked;
        out->time_stamps = r.time_stamps;
        out->worst_margin = r.worst_margin;
        out->antipodal_defect = r.antipodal_defect;
    });
}

SG_API sg_status sg_fit_decay(const double* t, const double* osc, size_t count, double window, double* rate)
{
    SG_REQUIRE(t, osc, rate);
    return guarded([&] {
        std::vector<DecaySample> series(count);
        for (std::size_t i = 0; i < count; ++i)
            series[i] = {t[i], osc[i]};
        *rate = fit_decay(series, window);
    });
}

SG_API sg_status sg_seeded_odd_data(const sg_model* model, size_t cells_per_side, uint64_t seed, double* out)
{
    SG_REQUIRE(model, out);
    return guarded([&] {
        const auto u = seeded_odd_data(to_params(*model), cells_per_side, seed);
        std::copy(u.begin(), u.end(), out);
    });
}

SG_API sg_status sg_seeded_concave_profile(const sg_model* model, size_t cells, uint64_t seed, double* out)
{
    SG_REQUIRE(model, out);
    return guarded([&] {
        const Profile p = seeded_concave_profile(to_params(*model), cells, seed);
        std::copy(p.values.begin(), p.values.end(), out);
    });
}

// ---- composite runs -------------------------------------------------------------

SG_API sg_status sg_decay_run_execute(const sg_model* model, const sg_flux* flux, size_t cells_per_side,
                                      uint64_t seed, double t_end, double cfl, size_t samples, double window,
                                      double tol, sg_decay_run** out)
{
    SG_REQUIRE(model, flux, out);
    *out = nullptr;
    return guarded([&] {
        auto run = std::make_unique<sg_decay_run>();
        run->run = decay_run(to_params(*model), to_flux(*flux), cells_per_side, seed,
                             t_end > 0.0 ? std::optional<double>(t_end) : std::nullopt, cfl, samples, window, tol);
        for (const auto& s : run->run.series) {
            run->t.push_back(s.t);
            run->osc.push_back(s.osc);
        }
        *out = run.release();
    });
}

SG_API double sg_decay_run_mu(const sg_decay_run* run)
{
    return run ? run->run.mu : 0.0;
}

SG_API double sg_decay_run_rate(const sg_decay_run* run)
{
    return run ? run->run.rate : 0.0;
}

SG_API double sg_decay_run_t_end(const sg_decay_run* run)
{
    return run ? run->run.t_end : 0.0;
}

SG_API size_t sg_decay_run_series(const sg_decay_run* run, const double** t, const double** osc)
{
    if (!run)
        return 0;
    if (t)
        *t = run->t.data();
    if (osc)
        *osc = run->osc.data();
    return run->t.size();
}

SG_API void sg_decay_run_free(sg_decay_run* run)
{
    delete run;
}

SG_API sg_status sg_moc_run(const sg_model* model, const sg_flux* flux, size_t cells, uint64_t seed, double t_end,
                            double a, double cfl, size_t samples, sg_moc_run_summary* out)
{
    SG_REQUIRE(model, flux, out);
    return guarded([&] {
        const MocRun run = moc_run(to_params(*model), to_flux(*flux), cells, seed, t_end,
                                   a > 0.0 ? std::optional<double>(a) : std::nullopt, cfl, samples);
        out->tolerance = run.tolerance;
        out->a = run.a;
        out->epsilon = run.flux.epsilon.value_or(0.0);
        out->report.violations = run.report.violations;
        out->report.pairs_checked = run.report.pairs_checked;
        out->report.time_stamps = run.report.time_stamps;
        out->report.worst_margin = run.report.worst_margin;
        out->report.antipodal_defect = run.report.antipodal_defect;
    });
}

} // extern "C"
