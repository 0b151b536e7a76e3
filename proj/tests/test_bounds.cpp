#include <doctest.h>

#include <sharpgap/bounds.hpp>
#include <sharpgap/errors.hpp>

#include <cmath>
#include <numbers>

using namespace sharpgap;

namespace {

constexpr double pi = std::numbers::pi;

// Brute-force maximum of 4 s (1 - s) pi^2/D^2 + s (n-1) kappa over [0, 1].
double shi_zhang_scan(int n, double kappa, double d)
{
    double best = -1e300;
    for (int i = 0; i <= 200000; ++i) {
        const double s = i / 200000.0;
        best = std::max(best, 4 * s * (1 - s) * pi * pi / (d * d) + s * (n - 1) * kappa);
    }
    return best;
}

} // namespace

TEST_SUITE("bounds")
{
    TEST_CASE("all bounds coincide at kappa = 0")
    {
        const auto r = classical_bounds({3, 0.0, pi}, 1e-10);
        CHECK(r.zhong_yang == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.li_conjecture == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.shi_zhang == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.shi_zhang_s == 0.5);
        CHECK(r.sharp_mu == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(r.li_violated);
        CHECK_FALSE(r.lichnerowicz.has_value());
    }

    TEST_CASE("sphere limit matches Lichnerowicz")
    {
        const auto r = classical_bounds({2, 1.0, pi * (1 - 1e-4)}, 1e-9);
        REQUIRE(r.lichnerowicz.has_value());
        CHECK(*r.lichnerowicz == 2.0);
        CHECK(std::fabs(r.sharp_mu - 2.0) < 5e-3);
    }

    TEST_CASE("Li conjecture fails for small positive kappa")
    {
        for (int n : {2, 3, 5})
            for (double k : {0.05, 0.1, 0.2}) {
                const auto r = classical_bounds({n, k, pi}, 1e-10);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(r.li_violated);
                CHECK(r.li_conjecture - r.sharp_mu > k * k / 10);
            }
        // Value from an independent adaptive integration.
        CHECK(classical_bounds({2, 0.1, pi}, 1e-11).sharp_mu == doctest::Approx(1.052550609163478).epsilon(1e-9));
    }

    TEST_CASE("Shi-Zhang closed form against a scan")
    {
        for (int n : {2, 3, 5})
            for (double k : {-3.0, -1.0, 0.0, 0.25, 0.5, 2.0})
                for (double d : {1.0, 2.0}) {
                    if (k > 0 && d >= pi / std::sqrt(k))
                        continue;
                    const auto sz = shi_zhang_bound(n, k, d);
                    CHECK(sz.value == doctest::Approx(shi_zhang_scan(n, k, d)).epsilon(1e-9));
                    CHECK(sz.s >= 0.0);
                    CHECK(sz.s <= 1.0);
                }
        // Vertex beyond s = 1 clamps to the endpoint value (n-1) kappa.
        const auto clamped = shi_zhang_bound(8, 9.0, 1.0);
        CHECK(clamped.s == 1.0);
        CHECK(clamped.value == doctest::Approx(63.0));
    }

    TEST_CASE("bound chain on the lattice")
    {
        for (int n : {2, 3, 5})
            for (double k : {-1.0, -0.25, 0.0, 0.25, 0.5})
                for (double d : {1.0, 2.0, 3.0}) {
                    if (k > 0 && d >= pi / std::sqrt(k))
                        continue;
                    const auto r = classical_bounds({n, k, d}, 1e-10);
                    const double half = pi * pi / (d * d) + 0.5 * (n - 1) * k;
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(d);
                    CHECK(r.sharp_mu >= r.shi_zhang * (1 - 1e-8));
                    CHECK(r.shi_zhang >= half * (1 - 1e-8));
                    if (r.lichnerowicz)
                        CHECK(r.sharp_mu >= *r.lichnerowicz * (1 - 1e-8));
                    if (k <= 0)
                        CHECK(r.sharp_mu <= r.zhong_yang * (1 + 1e-8));
                    else
                        CHECK(r.sharp_mu >= r.zhong_yang);
                }
    }

    TEST_CASE("continuity at kappa = 0")
    {
        for (int n : {2, 3, 5})
            for (double d : {1.0, pi})
                for (double k : {1e-6, -1e-6})
                    CHECK(std::fabs(classical_bounds({n, k, d}, 1e-10).sharp_mu - pi * pi / (d * d)) <= 1e-5);
    }

    TEST_CASE("every field scales by 1/c^2")
    {
        const ModelParams base{3, 0.4, 2.0};
        const auto r = classical_bounds(base, 1e-11);
        for (double c : {0.5, 2.0, 3.0}) {
            const auto s = classical_bounds({3, 0.4 / (c * c), 2.0 * c}, 1e-11);
            const double c2 = c * c;
            CHECK(s.sharp_mu * c2 == doctest::Approx(r.sharp_mu).epsilon(1e-7));
            CHECK(*s.lichnerowicz * c2 == doctest::Approx(*r.lichnerowicz).epsilon(1e-12));
            CHECK(s.zhong_yang * c2 == doctest::Approx(r.zhong_yang).epsilon(1e-12));
            CHECK(s.li_conjecture * c2 == doctest::Approx(r.li_conjecture).epsilon(1e-12));
            CHECK(s.shi_zhang * c2 == doctest::Approx(r.shi_zhang).epsilon(1e-12));
            CHECK(s.shi_zhang_s == doctest::Approx(r.shi_zhang_s).epsilon(1e-12));
            CHECK(s.li_violated == r.li_violated);
        }
    }

    TEST_CASE("asymptotic slope")
    {
        for (int n : {2, 3, 4})
            CHECK(asymptotic_slope(n, 1e-3, 1e-10) == doctest::Approx((n - 1) / 2.0).epsilon(1e-3).scale(1.0));
        // Central differences: halving h cuts the error by about 4.
        const double e1 = asymptotic_slope(3, 0.04, 1e-12) - 1.0;
        const double e2 = asymptotic_slope(3, 0.02, 1e-12) - 1.0;
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
        CHECK_THROWS_AS((void)asymptotic_slope(3, 0.0, 1e-10), InvalidParams);
        CHECK_THROWS_AS((void)asymptotic_slope(3, 0.1, 1e-10), InvalidParams);
    }

    TEST_CASE("invalid input")
    {
        CHECK_THROWS_AS((void)classical_bounds({2, 4.0, 2.0}, 1e-9), InvalidParams);
        CHECK_THROWS_AS((void)classical_bounds({0, 0.0, 2.0}, 1e-9), InvalidParams);
    }
}
