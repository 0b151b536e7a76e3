#include "sharpgap/flux.hpp"

#include "sharpgap/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sharpgap {

void Flux::validate() const
{
    if (kind == Kind::Heat)
        return;
    if (!(p > 1.0) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "p-Laplacian exponent must satisfy p > 1 (got " << p << ")";
        throw InvalidParams(msg.str());
    }
    if (epsilon && (!(*epsilon >= 0.0) || !std::isfinite(*epsilon))) {
        std::ostringstream msg;
        msg << "p-Laplacian regularisation must be >= 0 (got " << *epsilon << ")";
        throw InvalidParams(msg.str());
    }
}

std::string Flux::to_string() const
{
    if (kind == Kind::Heat)
        return "heat";
    char buf[64];
    if (epsilon)
        std::snprintf(buf, sizeof buf, "plap:%.12g:%.12g", p, *epsilon);
    else
        std::snprintf(buf, sizeof buf, "plap:%.12g", p);
    return buf;
}

Flux Flux::parse(const std::string& spec)
{
    if (spec == "heat")
        return heat();
    const std::string prefix = "plap:";
    if (spec.rfind(prefix, 0) != 0)
        throw InvalidParams("unknown flux '" + spec + "' (expected heat or plap:P[:EPS])");

    const std::string rest = spec.substr(prefix.size());
    const auto colon = rest.find(':');
    auto number = [&](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size())
            throw InvalidParams("malformed number '" + text + "' in flux '" + spec + "'");
        return v;
    };
    Flux f;
    f.kind = Kind::PLaplacian;
    f.p = number(rest.substr(0, colon));
    if (colon != std::string::npos)
        f.epsilon = number(rest.substr(colon + 1));
    f.validate();
    return f;
}

FluxCoefficients flux_eval(const Flux& flux, double q)
{
    if (flux.kind == Flux::Kind::Heat)
        return {1.0, 1.0};
    const double eps = flux.epsilon.value_or(0.0);
    const double m = std::sqrt(q * q + eps * eps);
    if (m == 0.0 && flux.p < 2.0) {
        std::ostringstream msg;
        msg << "p-Laplacian with p=" << flux.p << " and no regularisation is unbounded at zero gradient";
        throw DegenerateFlux(msg.str());
    }
    const double beta = std::pow(m, flux.p - 2.0);
    return {(flux.p - 1.0) * beta, beta};
}

double default_regularization(double oscillation, double diameter) noexcept
{
    return 1e-8 * oscillation / diameter;
}

Flux resolve_regularization(const Flux& flux, double oscillation, double diameter)
{
    Flux out = flux;
    if (out.kind == Flux::Kind::PLaplacian && !out.epsilon)
        out.epsilon = default_regularization(oscillation, diameter);
    return out;
}

} // namespace sharpgap
