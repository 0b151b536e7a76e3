#pragma once

#include "sharpgap/flux.hpp"
#include "sharpgap/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sharpgap {

// Uniform grid s_i = i h on [0, D/2], h = (D/2) / cells.
struct Grid1D {
    double half_diameter = 0.0;
    std::size_t cells = 0;

    [[nodiscard]] double h() const noexcept { return half_diameter / static_cast<double>(cells); }
    [[nodiscard]] double node(std::size_t i) const noexcept
    {
        return i == cells ? half_diameter : static_cast<double>(i) * h();
    }
    [[nodiscard]] std::size_t nodes() const noexcept { return cells + 1; }
};

inline constexpr std::size_t kMinGridCells = 16;

// phi(., t) sampled on a Grid1D.
struct Profile {
    Grid1D grid;
    double t = 0.0;
    std::vector<double> values;
};

// Boundary condition at the outer end(s) s = +-D/2, stated for the outward
// normal derivative: Neumann d_nu phi = 0, Robin d_nu phi = r phi.
struct Boundary {
    enum class Kind { Neumann, Robin };

    Kind kind = Kind::Neumann;
    double robin = 0.0;

    static Boundary neumann() { return {}; }
    static Boundary robin_with(double r) { return {Kind::Robin, r}; }
};

struct StepControls {
    double cfl = 0.4;
    // Times at which profiles are returned; t_end is always appended. The
    // stepper shortens the step that would overshoot a requested time, so
    // every returned profile sits exactly on a completed step.
    std::vector<double> output_times;
    Boundary boundary;
    std::size_t max_steps = 200'000'000;
};

inline constexpr double kDefaultCfl = 0.4;

// Robin coefficient phi'(D/2) / phi(D/2) of a profile, estimated with a
// second-order one-sided difference. Keeps separable profiles separable.
[[nodiscard]] double matching_robin_coefficient(const Profile& phi0);

// Explicit evolution of
//   phi_t = alpha(phi') phi'' - (n-1) T_k beta(phi') phi'
// on [0, D/2] with phi(0, t) = 0 (odd reflection) and the outer boundary
// condition from `controls`.
[[nodiscard]] std::vector<Profile> evolve(const Flux& flux, const ModelParams& params, const Profile& phi0,
                                          double t_end, const StepControls& controls = {});

// max - min over the samples.
[[nodiscard]] double oscillation(std::span<const double> values) noexcept;

// Profile from nodal values; validates the grid size.
[[nodiscard]] Profile make_profile(const ModelParams& params, std::vector<double> values, double t = 0.0);

} // namespace sharpgap
