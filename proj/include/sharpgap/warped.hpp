#pragma once

#include "sharpgap/flux.hpp"
#include "sharpgap/model.hpp"
#include "sharpgap/moc_pde.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sharpgap {

// Ricci curvatures of g = ds^2 + a C_k(s)^2 gbar on S^{n-1} x [-D/2, D/2]:
//   Ric(d_s, d_s) = (n-1) k
//   Ric(v, v)     = (n-1) k + (n-2) (1/a - k) / C_k(s)^2     (|v| = 1)
struct RicciReport {
    double radial = 0.0;
    double tangential_min = 0.0;   // over s in [-D/2, D/2]
    bool admissible = false;       // min of the two >= (n-1) k - 1e-12
};

inline constexpr double kRicciSlack = 1e-12;

[[nodiscard]] RicciReport ricci_bounds(int n, double kappa, double a, double diameter);

struct WarpedMetric {
    ModelParams params;
    double a = 1.0;

    [[nodiscard]] RicciReport ricci() const { return ricci_bounds(params.n, params.kappa, a, params.diameter); }
};

// min(1, 1 / (2 max(k, 0))): admissible for every k.
[[nodiscard]] double default_warp(double kappa) noexcept;

// Uniform grid s_j = -D/2 + j h, j = 0 .. 2m, with h = (D/2) / m. Node m is s = 0.
struct SymmetricGrid {
    double half_diameter = 0.0;
    std::size_t cells_per_side = 0;

    [[nodiscard]] double h() const noexcept { return half_diameter / static_cast<double>(cells_per_side); }
    [[nodiscard]] std::size_t nodes() const noexcept { return 2 * cells_per_side + 1; }
    [[nodiscard]] double node(std::size_t j) const noexcept
    {
        return -half_diameter + static_cast<double>(j) * h();
    }
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> values;
};

// Angularly constant solution u(z, s, t) = u(s, t) on the warped product.
struct RadialSolution {
    SymmetricGrid grid;
    std::vector<Snapshot> profiles;
    Flux flux;
    WarpedMetric metric;
};

// u(s) = phi(s) for s >= 0 and -phi(-s) for s < 0.
[[nodiscard]] std::vector<double> odd_extension(const Profile& phi);

// Evolves u_t = alpha(u') u'' - (n-1) T_k beta(u') u' on [-D/2, D/2] with
// the outer boundary condition of `controls` at both ends. Throws
// InvalidParams when the metric is not Ricci-admissible.
[[nodiscard]] RadialSolution radial_flow(const WarpedMetric& metric, const Flux& flux, std::vector<double> u0,
                                         double t_end, const StepControls& controls = {});

struct ViolationReport {
    std::size_t violations = 0;
    std::size_t pairs_checked = 0;
    std::size_t time_stamps = 0;
    double worst_margin = 0.0;      // max over pairs of |u_j - u_i| - 2 phi(|s_j - s_i| / 2)
    double antipodal_defect = 0.0;  // max over t, s of |u(s) - u(-s) - 2 phi(s)|
};

// Two-point check |u(s_j,t) - u(s_i,t)| <= 2 phi(|s_j - s_i|/2, t) + tol
// over every pair of grid nodes at every time stamp. Half-step distances
// use linear interpolation of phi.
[[nodiscard]] ViolationReport verify_moc(const RadialSolution& solution, const std::vector<Profile>& phi_series,
                                         double tol);

struct DecaySample {
    double t;
    double osc;
};

[[nodiscard]] std::vector<DecaySample> oscillation_series(const RadialSolution& solution);

// Negated least-squares slope of log(osc) against t over the trailing
// `window` fraction of the samples.
[[nodiscard]] double fit_decay(std::span<const DecaySample> series, double window);

// Odd part of Phi_mu + sum_{k=1..5} c_k v_k (v_k the discrete Neumann modes,
// c_k seeded uniform in [-1/2, 1/2]) on the symmetric grid.
[[nodiscard]] std::vector<double> seeded_odd_data(const ModelParams& params, std::size_t cells_per_side,
                                                  std::uint64_t seed, double tol = 1e-9);

// Concave nondecreasing phi0 with phi0(0) = 0, phi0'(D/2) = 0 and max 1:
// phi0' = sum_{k=1..3} c_k (1 - s/(D/2))^k with seeded c_k in [0.2, 1].
[[nodiscard]] Profile seeded_concave_profile(const ModelParams& params, std::size_t cells, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Composite runs used by the CLI and the acceptance suite.

struct DecayRun {
    double mu = 0.0;
    double rate = 0.0;
    double t_end = 0.0;
    double window = 0.5;
    std::vector<DecaySample> series;
};

// Heat or p-flow of seeded odd data, oscillation sampled at `samples`
// uniform times on [0, t_end] (t_end defaults to 6/mu) and fitted.
[[nodiscard]] DecayRun decay_run(const ModelParams& params, const Flux& flux, std::size_t cells_per_side,
                                 std::uint64_t seed, std::optional<double> t_end = std::nullopt,
                                 double cfl = kDefaultCfl, std::size_t samples = 101, double window = 0.5,
                                 double tol = 1e-9);

struct MocRun {
    double tolerance = 0.0;     // 5 h^2 osc(u0)
    double a = 0.0;
    Flux flux;                  // with the regularisation actually used
    ViolationReport report;
    std::vector<Profile> phi;
    RadialSolution radial;
};

// Seeded concave phi0, its comparison evolution and the radial flow of its
// odd extension, checked against each other at `samples` + 1 time stamps.
[[nodiscard]] MocRun moc_run(const ModelParams& params, const Flux& flux, std::size_t cells, std::uint64_t seed,
                             double t_end, std::optional<double> a = std::nullopt, double cfl = kDefaultCfl,
                             std::size_t samples = 10);

} // namespace sharpgap
