#pragma once

#include <string>

#include "layerlab/absorption.hpp"
#include "layerlab/grid.hpp"
#include "layerlab/initial.hpp"

namespace layerlab {

enum class Method { maxwell, berenger, smart, spml, hml_v1, hml_v2, hml_v3 };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct Rect {
    double x0{0.0}, x1{0.0}, y0{0.0}, y1{0.0};
    [[nodiscard]] bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

/**
 * Full description of one simulation: geometry at refinement 0, the layer,
 * the scheme, and the initial data. grid() yields the refined grid actually
 * stepped.
 */
struct SimConfig {
    YeeGrid base_grid;            // refinement-0 grid (holds dt and n_steps)
    int refinement{0};
    Rect interest;                // region over which errors are measured
    AbsorptionProfile layer;
    Method method{Method::maxwell};
    double nu{0.0};
    double mu{1.0};
    InitialCondition init;
    double t_final{4.0};

    [[nodiscard]] YeeGrid grid() const { return base_grid.refined(refinement); }

    /// Throws std::invalid_argument naming the offending field on violation.
    void validate() const;
};

/// The baseline setup: domain (0,10)^2 with dx = dy = 0.1, dt = 0.0702,
/// interest region (0,6)x(0,10), t_final = 4, constant sigma = 2 on [6,10],
/// modulated bump (k = 10, v = (1,0)) at (5,5) with radius 0.8.
SimConfig baseline_config();

}  // namespace layerlab
