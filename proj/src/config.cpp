#include "layerlab/config.hpp"

#include <cmath>
#include <stdexcept>

namespace layerlab {

std::string method_name(Method m) {
    switch (m) {
        case Method::maxwell: return "maxwell";
        case Method::berenger: return "berenger";
        case Method::smart: return "smart";
        case Method::spml: return "spml";
        case Method::hml_v1: return "hml_v1";
        case Method::hml_v2: return "hml_v2";
        case Method::hml_v3: return "hml_v3";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "maxwell") return Method::maxwell;
    if (name == "berenger") return Method::berenger;
    if (name == "smart") return Method::smart;
    if (name == "spml") return Method::spml;
    if (name == "hml_v1") return Method::hml_v1;
    if (name == "hml_v2") return Method::hml_v2;
    if (name == "hml_v3") return Method::hml_v3;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void SimConfig::validate() const {
    const YeeGrid& g = base_grid;  // construction already enforced CFL etc.
    if (interest.x0 < g.x_min || interest.x1 > g.x_max ||
        interest.y0 < g.y_min || interest.y1 > g.y_max)
        throw std::invalid_argument("interest: region must lie inside the grid domain");
    if (!(interest.x0 < interest.x1) || !(interest.y0 < interest.y1))
        throw std::invalid_argument("interest: empty region");
    if (layer.kind != AbsorptionProfile::Kind::zero) {
        if (layer.support_start < g.x_min || layer.support_end > g.x_max)
            throw std::invalid_argument("layer: support must lie inside the grid domain");
        if (layer.support_start < interest.x1 && layer.support_end > interest.x0)
            throw std::invalid_argument(
                "layer: support must not overlap the interest region interior");
    }
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("nu: must be finite and >= 0");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("mu: must be finite and >= 0");
    if (refinement < 0 || refinement > 12)
        throw std::invalid_argument("refinement: must be in [0, 12]");
    if (!(t_final > 0.0))
        throw std::invalid_argument("t_final: must be positive");
    const int want = static_cast<int>(std::ceil(t_final / base_grid.dt - 1e-9));
    if (base_grid.n_steps != want)
        throw std::invalid_argument("n_steps: base grid carries " +
                                    std::to_string(base_grid.n_steps) +
                                    " steps but t_final/dt requires " + std::to_string(want));
}

SimConfig baseline_config() {
    SimConfig cfg;
    const double dt = 0.0702;
    const double t_final = 4.0;
    const int n_steps = static_cast<int>(std::ceil(t_final / dt - 1e-9));  // 57
    cfg.base_grid = YeeGrid(0.0, 10.0, 0.0, 10.0, 100, 100, dt, n_steps);
    cfg.interest = Rect{0.0, 6.0, 0.0, 10.0};
    cfg.layer = AbsorptionProfile::constant(2.0, 6.0, 10.0);
    cfg.method = Method::maxwell;
    cfg.nu = 0.0;
    cfg.mu = 1.0;
    cfg.init = InitialCondition{};  // bump, (5,5), r=0.8, k=10, v=(1,0)
    cfg.t_final = t_final;
    return cfg;
}

}  // namespace layerlab
