#include <doctest.h>

#include <sharpgap/errors.hpp>
#include <sharpgap/flux.hpp>
#include <sharpgap/moc_pde.hpp>
#include <sharpgap/sturm.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace sharpgap;

namespace {

constexpr double pi = std::numbers::pi;

Profile sampled(const ModelParams& p, std::size_t cells, double (*f)(double))
{
    std::vector<double> v(cells + 1);
    const Grid1D g{p.half_diameter(), cells};
    for (std::size_t i = 0; i <= cells; ++i)
        v[i] = f(g.node(i));
    v[0] = 0.0;
    return make_profile(p, std::move(v));
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

StepControls every(double dt, double t_end)
{
    StepControls c;
    for (double t = 0.0; t < t_end - 1e-12; t += dt)
        c.output_times.push_back(t);
    return c;
}

} // namespace

TEST_SUITE("flux")
{
    TEST_CASE("coefficient values")
    {
        auto c = flux_eval(Flux::heat(), 17.0);
        CHECK(c.alpha == 1.0);
        CHECK(c.beta == 1.0);
        c = flux_eval(Flux::p_laplacian(3.0, 0.0), 2.0);
        CHECK(c.alpha == doctest::Approx(4.0));
        CHECK(c.beta == doctest::Approx(2.0));
        c = flux_eval(Flux::p_laplacian(3.0, 0.0), 0.0);
        CHECK(c.alpha == 0.0);
        CHECK(c.beta == 0.0);
        c = flux_eval(Flux::p_laplacian(2.0, 0.0), -3.0);
        CHECK(c.alpha == 1.0);
        CHECK(c.beta == 1.0);
        c = flux_eval(Flux::p_laplacian(4.0, 1.0), 0.0);
        CHECK(c.alpha == doctest::Approx(3.0));
        CHECK(c.beta == doctest::Approx(1.0));
    }

    TEST_CASE("degenerate and invalid fluxes")
    {
        CHECK_THROWS_AS((void)flux_eval(Flux::p_laplacian(1.5, 0.0), 0.0), DegenerateFlux);
        CHECK_NOTHROW((void)flux_eval(Flux::p_laplacian(1.5, 1e-6), 0.0));
        CHECK_THROWS_AS(Flux::p_laplacian(1.0).validate(), InvalidParams);
        CHECK_THROWS_AS(Flux::p_laplacian(3.0, -1.0).validate(), InvalidParams);
    }

    TEST_CASE("parsing round trip")
    {
        CHECK(Flux::parse("heat").kind == Flux::Kind::Heat);
        const Flux f = Flux::parse("plap:3:1e-8");
        CHECK(f.kind == Flux::Kind::PLaplacian);
        CHECK(f.p == 3.0);
        REQUIRE(f.epsilon.has_value());
        CHECK(*f.epsilon == 1e-8);
        CHECK_FALSE(Flux::parse("plap:2.5").epsilon.has_value());
        for (const char* s : {"heat", "plap:3", "plap:2.5:0.001"})
            CHECK(Flux::parse(Flux::parse(s).to_string()).to_string() == Flux::parse(s).to_string());
        for (const char* s : {"", "heat:2", "plap", "plap:x", "plap:3:", "plap:3:1:2", "diffuse"})
            CHECK_THROWS_AS((void)Flux::parse(s), InvalidParams);
    }

    TEST_CASE("regularisation default")
    {
        CHECK(default_regularization(2.0, 4.0) == doctest::Approx(5e-9));
        CHECK(*resolve_regularization(Flux::p_laplacian(3.0), 2.0, 4.0).epsilon == doctest::Approx(5e-9));
        CHECK(*resolve_regularization(Flux::p_laplacian(3.0, 0.1), 2.0, 4.0).epsilon == 0.1);
    }
}

TEST_SUITE("moc_pde")
{
    TEST_CASE("heat flow of a sine")
    {
        const ModelParams p{2, 0.0, pi};
        const auto phi0 = sampled(p, 256, [](double s) { return std::sin(s); });
        const auto out = evolve(Flux::heat(), p, phi0, 1.0);
        REQUIRE(out.size() == 1);
        CHECK(out.back().t == 1.0);
        std::vector<double> exact(phi0.values);
        for (double& v : exact)
            v *= std::exp(-1.0);
        CHECK(sup_diff(out.back().values, exact) < 5e-4);
    }

    TEST_CASE("eigenprofile decays at rate sigma with a matched outer boundary")
    {
        const ModelParams p{3, -1.0, 2.0};
        const double sigma = 0.9 * first_eigenvalue(p, 1e-10).mu;
        double prev = 0.0;
        for (std::size_t m : {128u, 256u}) {
            const auto tr = integrate_phi(p, sigma, m);
            const auto phi0 = make_profile(p, tr.phi);
            StepControls c;
            c.boundary = Boundary::robin_with(matching_robin_coefficient(phi0));
            const auto out = evolve(Flux::heat(), p, phi0, 0.5, c);
            std::vector<double> exact(tr.phi);
            for (double& v : exact)
                v *= std::exp(-0.5 * sigma);
            const double err = sup_diff(out.back().values, exact) / *std::max_element(exact.begin(), exact.end());
            CHECK(err < 1e-3);
            if (prev > 0.0)
                CHECK(prev / err > 3.0);
            prev = err;
        }
    }

    TEST_CASE("zero is a fixed point")
    {
        for (const Flux& f : {Flux::heat(), Flux::p_laplacian(3.0)}) {
            const ModelParams p{3, -1.0, 2.0};
            const auto out = evolve(f, p, make_profile(p, std::vector<double>(65, 0.0)), 0.3, every(0.1, 0.3));
            CHECK(out.size() == 4);
            for (const auto& prof : out)
                for (double v : prof.values)
                    CHECK(v == 0.0);
        }
    }

    TEST_CASE("output times are hit exactly and recorded")
    {
        const ModelParams p{2, 0.0, 2.0};
        const auto phi0 = sampled(p, 32, [](double s) { return s; });
        StepControls c;
        c.output_times = {0.0, 0.0123, 0.05};
        const auto out = evolve(Flux::heat(), p, phi0, 0.1, c);
        REQUIRE(out.size() == 4);
        CHECK(out[0].t == 0.0);
        CHECK(out[0].values == phi0.values);
        CHECK(out[1].t == doctest::Approx(0.0123).epsilon(1e-14));
        CHECK(out[3].t == doctest::Approx(0.1).epsilon(1e-14));
    }

    TEST_CASE("monotone, ordered and sup-norm non-expansive")
    {
        for (const Flux& f : {Flux::heat(), Flux::p_laplacian(3.0, 1e-8), Flux::p_laplacian(1.5, 1e-3)})
            for (const ModelParams& p : {ModelParams{2, -1.0, 2.0}, ModelParams{3, 0.5, 3.0}}) {
                CAPTURE(f.to_string());
                const auto lo = sampled(p, 64, [](double s) { return std::tanh(2 * s); });
                auto hi_values = lo.values;
                for (std::size_t i = 0; i < hi_values.size(); ++i)
                    hi_values[i] = 1.2 * hi_values[i] + 0.01 * static_cast<double>(i) / 64.0;
                const auto hi = make_profile(p, hi_values);
                StepControls c = every(0.02, 0.4);
                // Pin the regularisation so both runs share one equation.
                Flux fixed = resolve_regularization(f, oscillation(hi.values), p.diameter);
                const auto a = evolve(fixed, p, lo, 0.4, c);
                const auto b = evolve(fixed, p, hi, 0.4, c);
                REQUIRE(a.size() == b.size());
                double prev_sup = 1e300;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    const auto& u = a[k].values;
                    const double tol = 1e-10 * oscillation(lo.values);
                    for (std::size_t i = 0; i + 1 < u.size(); ++i)
                        CHECK(u[i + 1] >= u[i] - tol);
                    for (std::size_t i = 0; i < u.size(); ++i)
                        CHECK(u[i] <= b[k].values[i] + 1e-14);
                    double sup = 0.0;
                    for (double v : u)
                        sup = std::max(sup, std::fabs(v));
                    CHECK(sup <= prev_sup + 1e-14);
                    prev_sup = sup;
                }
            }
    }

    TEST_CASE("p = 2 reproduces heat bit for bit")
    {
        const ModelParams p{3, 0.25, 2.5};
        const auto phi0 = sampled(p, 96, [](double s) { return std::sin(s) + 0.1 * s * s; });
        const StepControls c = every(0.05, 0.5);
        const auto a = evolve(Flux::heat(), p, phi0, 0.5, c);
        const auto b = evolve(Flux::p_laplacian(2.0, 0.0), p, phi0, 0.5, c);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].t == b[k].t);
            CHECK(a[k].values == b[k].values);
        }
    }

    TEST_CASE("error paths")
    {
        const ModelParams p{2, 0.0, 2.0};
        const auto phi0 = sampled(p, 32, [](double s) { return s; });
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, phi0, 0.0), InvalidParams);

        StepControls tight;
        tight.max_steps = 10;
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, phi0, 1.0, tight), CflViolation);

        StepControls bad_cfl;
        bad_cfl.cfl = 0.9;
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, phi0, 1.0, bad_cfl), InvalidParams);

        auto decreasing = phi0;
        decreasing.values[5] = -1.0;
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, decreasing, 1.0), InvalidParams);

        auto shifted = phi0;
        shifted.values[0] = 0.1;
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, shifted, 1.0), InvalidParams);

        CHECK_THROWS_AS((void)evolve(Flux::heat(), ModelParams{2, 0.0, 3.0}, phi0, 1.0), InvalidParams);
        CHECK_THROWS_AS((void)make_profile(p, std::vector<double>(8, 0.0)), InvalidParams);

        StepControls late;
        late.output_times = {2.0};
        CHECK_THROWS_AS((void)evolve(Flux::heat(), p, phi0, 1.0, late), InvalidParams);

        // p < 2 with no regularisation on flat data has no finite coefficient.
        const auto flat = make_profile(p, std::vector<double>(33, 0.0));
        CHECK_THROWS_AS((void)evolve(Flux::p_laplacian(1.5, 0.0), p, flat, 0.1), DegenerateFlux);
    }
}
