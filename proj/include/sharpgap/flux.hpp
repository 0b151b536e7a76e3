#pragma once

#include <optional>
#include <string>

namespace sharpgap {

// Coefficient pair (alpha, beta) of an isotropic quasilinear flow
//   u_t = alpha(|Du|) (normal second derivative) + beta(|Du|) (tangential part).
struct Flux {
    enum class Kind { Heat, PLaplacian };

    Kind kind = Kind::Heat;
    double p = 2.0;
    // Regularisation m(q) = sqrt(q^2 + eps^2); unset means "choose from the
    // initial data" (see default_regularization).
    std::optional<double> epsilon;

    static Flux heat() { return {}; }
    static Flux p_laplacian(double p, std::optional<double> epsilon = std::nullopt)
    {
        return {Kind::PLaplacian, p, epsilon};
    }

    // Throws InvalidParams for p <= 1 or epsilon < 0.
    void validate() const;

    // "heat", "plap:P" or "plap:P:EPS".
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] static Flux parse(const std::string& spec);
};

struct FluxCoefficients {
    double alpha;
    double beta;
};

// Throws DegenerateFlux for a p < 2 p-Laplacian with epsilon = 0 at q = 0.
[[nodiscard]] FluxCoefficients flux_eval(const Flux& flux, double q);

// 1e-8 * osc(phi0) / D.
[[nodiscard]] double default_regularization(double oscillation, double diameter) noexcept;

// Copy of `flux` with epsilon filled in when it was left unset.
[[nodiscard]] Flux resolve_regularization(const Flux& flux, double oscillation, double diameter);

} // namespace sharpgap
