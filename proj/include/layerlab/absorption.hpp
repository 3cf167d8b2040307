#pragma once

#include <stdexcept>

namespace layerlab {

/**
 * Absorption coefficient sigma(x), a function of x alone. Zero to the left of
 * support_start, then either a constant value or the cubic
 * scale*(x - support_start)^3.
 */
struct AbsorptionProfile {
    enum class Kind { zero, constant, cubic };

    Kind kind{Kind::zero};
    double value{0.0};  // constant level, or cubic scale factor
    double support_start{0.0};
    double support_end{0.0};

    static AbsorptionProfile none() { return {}; }

    static AbsorptionProfile constant(double level, double a, double b) {
        if (level < 0.0) throw std::invalid_argument("AbsorptionProfile: sigma must be >= 0");
        if (!(a < b)) throw std::invalid_argument("AbsorptionProfile: empty support");
        return {Kind::constant, level, a, b};
    }

    static AbsorptionProfile cubic(double scale, double a, double b) {
        if (scale < 0.0) throw std::invalid_argument("AbsorptionProfile: scale must be >= 0");
        if (!(a < b)) throw std::invalid_argument("AbsorptionProfile: empty support");
        return {Kind::cubic, scale, a, b};
    }

    [[nodiscard]] double operator()(double x) const {
        if (kind == Kind::zero || x < support_start) return 0.0;
        if (kind == Kind::constant) return value;
        const double s = x - support_start;
        return value * s * s * s;
    }
};

inline double sample_sigma(const AbsorptionProfile& p, double x) { return p(x); }

}  // namespace layerlab
