#pragma once

// Curvature-adapted trigonometric functions
//
//   C_k(t) = cos(sqrt(k) t),  1,  cosh(sqrt(-k) t)
//   S_k(t) = sin(sqrt(k) t)/sqrt(k),  t,  sinh(sqrt(-k) t)/sqrt(-k)
//   T_k(s) = k S_k(s) / C_k(s)
//
// for k > 0, k = 0, k < 0 respectively.

namespace sharpgap {

// Below this value of |k| t^2 the functions are evaluated by their
// three-term Taylor series in k t^2.
inline constexpr double kTrigSeriesThreshold = 1e-8;

// tk() reports a pole when |C_k(s)| < kPoleTolerance * max(1, |k S_k(s)|).
inline constexpr double kPoleTolerance = 1e-12;

[[nodiscard]] double ck(double kappa, double tau) noexcept;
[[nodiscard]] double sk(double kappa, double tau) noexcept;

// Throws PoleError near a zero of C_k (only possible for k > 0).
[[nodiscard]] double tk(double kappa, double s);

// Evaluation context for a fixed curvature bound.
class KappaTrig {
public:
    explicit KappaTrig(double kappa) noexcept : kappa_(kappa) {}

    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] double c(double tau) const noexcept { return ck(kappa_, tau); }
    [[nodiscard]] double s(double tau) const noexcept { return sk(kappa_, tau); }
    [[nodiscard]] double t(double s) const { return tk(kappa_, s); }

    // First positive zero of C_k, or +infinity when k <= 0.
    [[nodiscard]] double first_pole() const noexcept;

private:
    double kappa_;
};

} // namespace sharpgap
