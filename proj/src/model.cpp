#include "sharpgap/model.hpp"

#include "sharpgap/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sharpgap {

double ModelParams::bonnet_myers_diameter() const noexcept
{
    if (kappa <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::numbers::pi / std::sqrt(kappa);
}

void ModelParams::validate() const
{
    std::ostringstream msg;
    if (n < 2) {
        msg << "dimension n must be >= 2 (got " << n << ")";
        throw InvalidParams(msg.str());
    }
    if (!std::isfinite(kappa)) {
        msg << "kappa must be finite (got " << kappa << ")";
        throw InvalidParams(msg.str());
    }
    if (!std::isfinite(diameter) || diameter <= 0.0) {
        msg << "diameter must be positive and finite (got " << diameter << ")";
        throw InvalidParams(msg.str());
    }
    if (kappa > 0.0) {
        const double bm = bonnet_myers_diameter();
        if (diameter > (1.0 - kBonnetMyersMargin) * bm) {
            msg.precision(17);
            msg << "diameter " << diameter << " violates the Bonnet-Myers bound D < pi/sqrt(kappa) = "
                << bm << " for kappa = " << kappa;
            throw InvalidParams(msg.str());
        }
    }
}

} // namespace sharpgap
