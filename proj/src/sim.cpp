#include "layerlab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace layerlab {

HzWindow hz_window(const YeeGrid& grid, const Rect& region) {
    // hz nodes strictly inside the open rectangle
    auto first_in = [](double lo, double origin, double h) {
        return static_cast<int>(std::floor((lo - origin) / h - 0.5 + 1e-9)) + 1;
    };
    auto last_ex = [](double hi, double origin, double h) {
        return static_cast<int>(std::ceil((hi - origin) / h - 0.5 - 1e-9));
    };
    HzWindow w;
    w.i0 = std::max(0, first_in(region.x0, grid.x_min, grid.dx));
    w.i1 = std::min(grid.nx, last_ex(region.x1, grid.x_min, grid.dx));
    w.j0 = std::max(0, first_in(region.y0, grid.y_min, grid.dy));
    w.j1 = std::min(grid.ny, last_ex(region.y1, grid.y_min, grid.dy));
    if (w.i0 >= w.i1 || w.j0 >= w.j1)
        throw std::invalid_argument("hz_window: region contains no hz nodes");
    return w;
}

Simulation::Simulation(const SimConfig& cfg, BoundaryMode boundary)
    : cfg_(cfg), grid_(cfg.grid()) {
    cfg_.validate();
    ctx_ = StepContext::make(grid_, cfg.layer, cfg.nu, cfg.mu, boundary);

    const bool split = cfg.method == Method::berenger;
    const bool with_w = cfg.method == Method::spml;
    state_ = FieldState(grid_.nx, grid_.ny, split, with_w);
    fill_initial_state(cfg.init, grid_, state_);

    switch (cfg.method) {
        case Method::hml_v1:
            ctx2_ = StepContext::make(grid_, cfg.layer, cfg.nu, 2.0 * cfg.mu, boundary);
            branch2_ = state_;
            break;
        case Method::hml_v2:
        case Method::hml_v3:
            pair_.emplace(state_);
            break;
        default:
            break;
    }
}

void Simulation::advance() {
    switch (cfg_.method) {
        case Method::maxwell: step_maxwell(state_, ctx_); break;
        case Method::berenger: step_berenger(state_, ctx_); break;
        case Method::smart: step_smart(state_, ctx_); break;
        case Method::spml: step_spml(state_, ctx_); break;
        case Method::hml_v1:
            step_smart(state_, ctx_);
            step_smart(*branch2_, ctx2_);
            break;
        case Method::hml_v2:
            step_hml_v2(*pair_, ctx_);
            break;
        case Method::hml_v3:
            step_hml_v3(*pair_, ctx_);
            break;
    }
    ++steps_done_;
}

double Simulation::hz_at(int i, int j) const {
    switch (cfg_.method) {
        case Method::hml_v1:
            return 2.0 * state_.hz_at(i, j) - branch2_->hz_at(i, j);
        case Method::hml_v2:
        case Method::hml_v3:
            return pair_->branch_1.hz_at(i, j);
        default:
            return state_.hz_at(i, j);
    }
}

void Simulation::sample_hz(const HzWindow& win, double* out) const {
    size_t n = 0;
    switch (cfg_.method) {
        case Method::hml_v1:
            for (int j = win.j0; j < win.j1; ++j)
                for (int i = win.i0; i < win.i1; ++i)
                    out[n++] = 2.0 * state_.hz_at(i, j) - branch2_->hz_at(i, j);
            break;
        case Method::hml_v2:
        case Method::hml_v3:
            for (int j = win.j0; j < win.j1; ++j)
                for (int i = win.i0; i < win.i1; ++i)
                    out[n++] = pair_->branch_1.hz_at(i, j);
            break;
        default:
            for (int j = win.j0; j < win.j1; ++j)
                for (int i = win.i0; i < win.i1; ++i) out[n++] = state_.hz_at(i, j);
            break;
    }
}

double Simulation::sup_norm() const {
    switch (cfg_.method) {
        case Method::hml_v1:
            return std::max(max_abs(state_), max_abs(*branch2_));
        case Method::hml_v2:
        case Method::hml_v3:
            return max_abs(pair_->branch_1);
        default:
            return max_abs(state_);
    }
}

const FieldState& Simulation::state() const {
    if (pair_) return pair_->branch_1;
    return state_;
}

FieldState& Simulation::state() {
    if (pair_) return pair_->branch_1;
    return state_;
}

}  // namespace layerlab
