#pragma once

namespace sharpgap {

// Reject k > 0 inputs with D > (1 - kBonnetMyersMargin) * pi / sqrt(k).
inline constexpr double kBonnetMyersMargin = 1e-10;

// Dimension, lower Ricci bound (Ric >= (n-1) k g) and diameter.
struct ModelParams {
    int n = 2;
    double kappa = 0.0;
    double diameter = 1.0;

    [[nodiscard]] double half_diameter() const noexcept { return 0.5 * diameter; }

    // Throws InvalidParams; the message names the Bonnet-Myers bound when
    // that is what failed.
    void validate() const;

    // pi / sqrt(k) for k > 0, +infinity otherwise.
    [[nodiscard]] double bonnet_myers_diameter() const noexcept;
};

} // namespace sharpgap
