#include "layerlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace layerlab {

namespace {

constexpr size_t kMaxReferenceNodes = 64ull * 1000 * 1000;  // per field array

/// Enlarged-domain plain-Maxwell configuration whose grid stays aligned with
/// the original one (the margin is a whole number of base cells).
SimConfig enlarged_config(const SimConfig& cfg, double margin_scale) {
    const double margin = margin_scale * (cfg.t_final + 2.0 * cfg.init.support_radius());
    const YeeGrid& b = cfg.base_grid;
    const int mx = static_cast<int>(std::ceil(margin / b.dx - 1e-9));
    const int my = static_cast<int>(std::ceil(margin / b.dy - 1e-9));
    SimConfig ref = cfg;
    ref.method = Method::maxwell;
    ref.layer = AbsorptionProfile::none();
    ref.base_grid = YeeGrid(b.x_min - mx * b.dx, b.x_max + mx * b.dx,
                            b.y_min - my * b.dy, b.y_max + my * b.dy,
                            b.nx + 2 * mx, b.ny + 2 * my, b.dt, b.n_steps);
    const YeeGrid g = ref.grid();
    const size_t nodes = static_cast<size_t>(g.nx) * g.ny;
    if (nodes > kMaxReferenceNodes)
        throw std::invalid_argument(
            "reference_run: enlarged grid needs " + std::to_string(g.nx) + " x " +
            std::to_string(g.ny) + " cells (" + std::to_string(nodes) +
            " nodes), above the budget of " + std::to_string(kMaxReferenceNodes));
    return ref;
}

}  // namespace

History reference_run(const SimConfig& cfg, double margin_scale) {
    const SimConfig ref_cfg = enlarged_config(cfg, margin_scale);
    Simulation sim(ref_cfg, BoundaryMode::pec_all);
    const HzWindow win = hz_window(sim.grid(), cfg.interest);

    History h;
    h.window = win;
    h.frames.reserve(sim.total_steps() + 1);
    // level 1/2 (the sampled initial data) first, then one frame per step
    h.frames.emplace_back(win.count());
    sim.sample_hz(win, h.frames.back().data());
    for (int n = 0; n < sim.total_steps(); ++n) {
        sim.advance();
        h.frames.emplace_back(win.count());
        sim.sample_hz(win, h.frames.back().data());
    }
    return h;
}

History method_run(const SimConfig& cfg) {
    Simulation sim(cfg);
    const HzWindow win = hz_window(sim.grid(), cfg.interest);
    History h;
    h.window = win;
    h.frames.reserve(sim.total_steps() + 1);
    h.frames.emplace_back(win.count());
    sim.sample_hz(win, h.frames.back().data());
    for (int n = 0; n < sim.total_steps(); ++n) {
        sim.advance();
        h.frames.emplace_back(win.count());
        sim.sample_hz(win, h.frames.back().data());
    }
    return h;
}

History baseline_run(const SimConfig& cfg) {
    SimConfig base = cfg;
    base.method = Method::maxwell;
    base.layer = AbsorptionProfile::none();
    return method_run(base);
}

double linf_error(const History& a, const History& b) {
    if (a.frames.size() != b.frames.size() || a.frame_size() != b.frame_size())
        throw std::invalid_argument("linf_error: histories sampled on different lattices");
    double m = 0.0;
    for (size_t f = 0; f < a.frames.size(); ++f) {
        const auto& fa = a.frames[f];
        const auto& fb = b.frames[f];
        for (size_t n = 0; n < fa.size(); ++n) m = std::max(m, std::abs(fa[n] - fb[n]));
    }
    return m;
}

double linf_error_vs_reference(const SimConfig& cfg, const History& ref, double* sup_ratio) {
    Simulation sim(cfg);
    const HzWindow win = hz_window(sim.grid(), cfg.interest);
    if (win.count() != ref.window.count() ||
        ref.frames.size() != static_cast<size_t>(sim.total_steps()) + 1)
        throw std::invalid_argument("linf_error_vs_reference: lattice mismatch with reference");

    std::vector<double> buf(win.count());
    const double sup0 = sim.sup_norm();
    double sup_max = sup0;
    double m = 0.0;
    auto fold = [&](const std::vector<double>& ref_frame) {
        sim.sample_hz(win, buf.data());
        for (size_t n = 0; n < buf.size(); ++n) m = std::max(m, std::abs(buf[n] - ref_frame[n]));
    };
    fold(ref.frames[0]);
    for (int n = 0; n < sim.total_steps(); ++n) {
        sim.advance();
        fold(ref.frames[n + 1]);
        sup_max = std::max(sup_max, sim.sup_norm());
    }
    if (sup_ratio) *sup_ratio = sup0 > 0.0 ? sup_max / sup0 : 0.0;
    return m;
}

}  // namespace layerlab
