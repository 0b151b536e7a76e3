#pragma once

#include "sharpgap/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sharpgap {

// Samples of the shooting solution
//   Phi'' - (n-1) T_k Phi' + sigma Phi = 0,  Phi(0) = 0,  Phi'(0) = 1
// on a uniform grid of [0, D/2].
struct PhiTrajectory {
    double sigma = 0.0;
    std::vector<double> grid;
    std::vector<double> phi;
    std::vector<double> dphi;
    std::optional<double> first_dphi_zero;

    [[nodiscard]] std::size_t steps() const noexcept { return grid.empty() ? 0 : grid.size() - 1; }
    // True when Phi' > 0 on the whole of [0, D/2].
    [[nodiscard]] bool increasing() const noexcept { return !first_dphi_zero.has_value(); }
};

struct EigenResult {
    double mu = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;           // bisection steps over all grid levels
    double tol = 0.0;             // achieved bracket width
    std::size_t steps = 0;        // RK4 steps on [0, D/2] at the accepted level
    PhiTrajectory trajectory;     // at sigma = bracket_lo
};

inline constexpr std::size_t kMinShootingSteps = 16;
inline constexpr std::size_t kInitialShootingSteps = 256;
inline constexpr std::size_t kMaxShootingSteps = std::size_t{1} << 22;
inline constexpr double kSigmaCap = 1e12;
inline constexpr double kZeroLocationTol = 1e-13;

// Classical RK4 on [0, D/2] with h = (D/2)/steps. The first sign change of
// Phi' is located by bisection on the cubic Hermite interpolant of the step.
[[nodiscard]] PhiTrajectory integrate_phi(const ModelParams& params, double sigma, std::size_t steps);

// mu = sup{sigma : Phi'_sigma > 0 on [0, D/2]} by bisection, with the RK4
// grid doubled until two successive refinements move mu by less than tol/4.
[[nodiscard]] EigenResult first_eigenvalue(const ModelParams& params, double tol);

// Same predicate and bisection at one fixed grid resolution.
[[nodiscard]] EigenResult first_eigenvalue_fixed(const ModelParams& params, double tol, std::size_t steps);

// Lichnerowicz value n*k, the limit of mu as D approaches pi/sqrt(k).
[[nodiscard]] double sphere_limit_eigenvalue(int n, double kappa);

// ---------------------------------------------------------------------------
// Finite-volume oracle for -(w Phi')'/w = lambda Phi on [-D/2, D/2], with
// w = C_k^{n-1} at cell midpoints and Neumann ends by ghost reflection.
// `cells` is the number of uniform cells (cells + 1 nodes).

inline constexpr std::size_t kMinOracleCells = 64;

// First nonzero eigenvalue of the discrete operator.
[[nodiscard]] double sl_fd_oracle(const ModelParams& params, std::size_t cells);

// Richardson extrapolation (4 l(2m) - l(m)) / 3 over cells and 2*cells.
[[nodiscard]] double sl_fd_oracle_extrapolated(const ModelParams& params, std::size_t cells);

struct DiscreteMode {
    double eigenvalue = 0.0;
    std::vector<double> vector;   // nodal values, max-norm 1
};

// The lowest `count` eigenpairs (including the constant mode), with nodes
// s_j = -D/2 + j D/cells.
[[nodiscard]] std::vector<DiscreteMode> sl_fd_modes(const ModelParams& params, std::size_t cells, std::size_t count);

} // namespace sharpgap
