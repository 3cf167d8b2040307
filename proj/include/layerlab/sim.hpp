#pragma once

#include <memory>
#include <optional>

#include "layerlab/config.hpp"
#include "layerlab/hml.hpp"
#include "layerlab/solvers.hpp"

namespace layerlab {

/// Half-open index window of hz nodes.
struct HzWindow {
    int i0{0}, i1{0}, j0{0}, j1{0};
    [[nodiscard]] int width() const { return i1 - i0; }
    [[nodiscard]] int height() const { return j1 - j0; }
    [[nodiscard]] size_t count() const {
        return static_cast<size_t>(width()) * static_cast<size_t>(height());
    }
};

/// hz nodes of the grid strictly inside the open rectangle.
HzWindow hz_window(const YeeGrid& grid, const Rect& region);

/**
 * Owns the field state(s) for one configured run and advances them step by
 * step. For hml_v1 two full smart-layer branches march in lockstep and the
 * observable field is their extrapolation; for hml_v2/v3 the local pair
 * stepping is used. A Simulation must not be advanced by two threads at once;
 * distinct Simulations are independent.
 */
class Simulation {
public:
    explicit Simulation(const SimConfig& cfg,
                        BoundaryMode boundary = BoundaryMode::layer_east);

    void advance();  // one time step

    [[nodiscard]] int steps_done() const { return steps_done_; }
    [[nodiscard]] int total_steps() const { return grid_.n_steps; }
    [[nodiscard]] const YeeGrid& grid() const { return grid_; }
    [[nodiscard]] const SimConfig& config() const { return cfg_; }

    /// Copies the observable hz values (extrapolated for hml_v1) on a window.
    void sample_hz(const HzWindow& win, double* out) const;

    /// Observable hz at a single node.
    [[nodiscard]] double hz_at(int i, int j) const;

    /// Sup norm over all observable field arrays.
    [[nodiscard]] double sup_norm() const;

    /// Primary state: the single state for plain methods, branch_1 (== the
    /// combined state between steps) for hml_v2/v3, the sigma branch for v1.
    [[nodiscard]] const FieldState& state() const;
    [[nodiscard]] FieldState& state();

private:
    SimConfig cfg_;
    YeeGrid grid_;
    StepContext ctx_;
    StepContext ctx2_;  // doubled absorption, hml only
    FieldState state_;
    std::optional<FieldState> branch2_;  // hml_v1
    std::optional<HmlPair> pair_;        // hml_v2 / hml_v3
    int steps_done_{0};
};

}  // namespace layerlab
