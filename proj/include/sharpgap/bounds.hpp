#pragma once

#include "sharpgap/model.hpp"

#include <optional>

namespace sharpgap {

// Classical lower bounds for the first nonzero eigenvalue next to the sharp mu.
struct BoundsReport {
    double sharp_mu = 0.0;
    std::optional<double> lichnerowicz;   // n k, only for k > 0
    double zhong_yang = 0.0;              // pi^2 / D^2
    double li_conjecture = 0.0;           // pi^2 / D^2 + (n-1) k
    double shi_zhang = 0.0;               // sup_{s in (0,1)} 4 s (1-s) pi^2/D^2 + (n-1) s k
    double shi_zhang_s = 0.5;             // maximiser (clamped to [0, 1])
    bool li_violated = false;             // sharp_mu < li_conjecture - 1e-10
};

inline constexpr double kLiSlack = 1e-10;

struct ShiZhang {
    double value;
    double s;
};

// Closed-form supremum: vertex s* = 1/2 + (n-1) k D^2 / (8 pi^2), with the
// one-sided limit at the nearer end when s* leaves (0, 1).
[[nodiscard]] ShiZhang shi_zhang_bound(int n, double kappa, double diameter) noexcept;

[[nodiscard]] BoundsReport classical_bounds(const ModelParams& params, double tol);

// (mu(n, +h, pi) - mu(n, -h, pi)) / (2h); the limit is the coefficient of
// k in the expansion of mu about k = 0 at D = pi.
[[nodiscard]] double asymptotic_slope(int n, double h, double tol);

} // namespace sharpgap
