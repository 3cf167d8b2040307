#pragma once

#include <cstdint>

#include "layerlab/grid.hpp"

namespace layerlab {

/**
 * Initial transverse magnetic field Hz(0,x). The electric field always starts
 * at zero.
 *
 * modulated_bump:  cos^2(pi*|x-xc|/r) * cos(k*pi*v.(x-xc)/r) inside B(xc,r),
 *                  zero outside. v is used exactly as given (not normalized).
 * gaussian:        exp(-|x-xc|^2/(2 r^2)) truncated below 1e-12 (r plays the
 *                  role of the width).
 * random:          independent uniform values in [-1,1] on cells of size
 *                  base_cell, restricted to B(xc,r). The field is a fixed
 *                  function of (seed, cell index), so refined grids sample the
 *                  same underlying data.
 */
struct InitialCondition {
    enum class Kind { modulated_bump, gaussian, random };

    Kind kind{Kind::modulated_bump};
    double xc{5.0}, yc{5.0};
    double r{0.8};
    double k{10.0};
    double vx{1.0}, vy{0.0};
    std::uint64_t seed{0};
    double base_cell{0.1};  // cell size of the unrefined grid (random kind)

    /// Radius outside which the initial field is identically zero.
    [[nodiscard]] double support_radius() const;
};

/// Pointwise initial Hz value at (x, y).
double initial_hz(const InitialCondition& init, double x, double y);

/// Samples initial_hz at every hz node of the grid into state.hz.
/// Split-field states get hzx = hzy = hz/2; SPML states start with w = 0.
void fill_initial_state(const InitialCondition& init, const YeeGrid& grid, FieldState& state);

}  // namespace layerlab
