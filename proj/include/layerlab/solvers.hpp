#pragma once

#include <vector>

#include "layerlab/absorption.hpp"
#include "layerlab/config.hpp"
#include "layerlab/grid.hpp"

namespace layerlab {

/**
 * How the domain edges are treated.
 *   layer_east: Ey = 0 on the west, Ex = 0 on the north and south, and on the
 *               east Ey is set from the adjacent Hz value (weakly reflecting
 *               outflow behind the layer).
 *   pec_all:    tangential E zero on all four walls.
 *   periodic:   all fields wrap; used by the test harnesses.
 */
enum class BoundaryMode { layer_east, pec_all, periodic };

/**
 * Precomputed per-column absorption samples plus the scheme parameters.
 * sigma_at_int[i]  = sigma(x_i)       for Ey columns, i in [0, nx]
 * sigma_at_half[i] = sigma(x_{i+1/2}) for Hz/Ex columns, i in [0, nx)
 * The steppers use mu*sigma wherever sigma appears.
 */
struct StepContext {
    YeeGrid grid;
    std::vector<double> sigma_at_int;
    std::vector<double> sigma_at_half;
    double nu{0.0};
    double mu{1.0};
    BoundaryMode boundary{BoundaryMode::layer_east};

    static StepContext make(const YeeGrid& grid, const AbsorptionProfile& layer,
                            double nu, double mu,
                            BoundaryMode boundary = BoundaryMode::layer_east);
};

/// One leapfrog step of the plain TE Maxwell scheme: E advanced from Hz,
/// then Hz advanced from the new E. Boundaries applied between the phases.
void step_maxwell(FieldState& s, const StepContext& c);

/// One step of the split-field scheme: Ey and Hzx damped semi-implicitly,
/// Hzy absorption-free, hz recomposed as hzx + hzy.
void step_berenger(FieldState& s, const StepContext& c);

/// One step of the smart-layer scheme with the sigma-weighted cross coupling
/// between Ey and Hz and the (1 +- nu)/2 weights.
void step_smart(FieldState& s, const StepContext& c);

/// One step of the unsplit auxiliary-variable scheme:
///   dt Ex - dy Hz - s*Ex + s^2*W = 0,  dt Ey + dx Hz + s*Ey = 0,
///   dt Hz + dx Ey - dy Ex + s*Hz = 0,  dt W + s*W - Ex = 0,
/// with every s*field term time-averaged (Ex and W solved jointly per node).
void step_spml(FieldState& s, const StepContext& c);

/**
 * Imposes the E-field boundary conditions. Precondition: the E fields have
 * just been advanced and state.hz still holds the previous half-level, from
 * which the east Ey value is taken. Ex carries no nodes on the east/west
 * walls, so Ex = 0 there is automatic.
 */
void apply_boundaries(FieldState& s, const StepContext& c);

namespace kernels {

/// Plain Ex update (absorption-free), shared by every scheme.
void update_ex_plain(FieldState& s, const StepContext& c);

/// Smart-layer Ey update into ey_out (may alias s.ey). sigma_scale multiplies
/// the absorption on top of c.mu; reads s.ey and s.hz at the old levels.
void update_ey_smart(const FieldState& s, const StepContext& c,
                     double sigma_scale, std::vector<double>& ey_out);

/// Smart-layer Hz update into hz_out (may alias s.hz), consuming the given
/// advanced ey array and s.ex; reads s.hz at the old level.
void update_hz_smart(const FieldState& s, const std::vector<double>& ey,
                     const StepContext& c, double sigma_scale,
                     std::vector<double>& hz_out);

/// E-phase boundary fill for an ey array given the previous-level hz.
void apply_ey_boundary(const FieldState& s, const StepContext& c,
                       std::vector<double>& ey);

/// Zeroes the tangential Ex on the north and south walls (no-op when periodic).
void apply_ex_boundary(FieldState& s, const StepContext& c);

}  // namespace kernels

}  // namespace layerlab
