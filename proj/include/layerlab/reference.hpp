#pragma once

#include <string>
#include <vector>

#include "layerlab/config.hpp"
#include "layerlab/sim.hpp"

namespace layerlab {

/// Hz sampled on a fixed window after every step (frames[n] is level n+1/2).
struct History {
    HzWindow window;
    std::vector<std::vector<double>> frames;

    [[nodiscard]] size_t frame_size() const { return window.count(); }
};

/// One table cell. runtime and sup_ratio are recorded in the run manifest;
/// the CSV rows carry the remaining fields plus a status string.
struct ErrorReport {
    std::string method;
    int refinement{0};
    double incidence_deg{0.0};
    double frequency_k{0.0};
    double linf_error{0.0};
    double runtime_s{0.0};
    double sup_ratio{0.0};  // max field sup-norm over the run / initial
    std::string status{"ok"};
};

/**
 * Runs plain Maxwell on a domain enlarged on all sides by at least
 * t_final + 2*(support radius), so that no boundary influence reaches the
 * interest region within [0, t_final], and records Hz over the interest
 * region at every step. margin_scale stretches the margin for robustness
 * studies. Throws std::invalid_argument if the enlarged grid would exceed the
 * memory budget, naming the required size.
 */
History reference_run(const SimConfig& cfg, double margin_scale = 1.0);

/// Runs cfg.method on the configured domain and records the same window.
History method_run(const SimConfig& cfg);

/**
 * The no-layer baseline: plain Maxwell on the same domain with the same wall
 * conditions as a method run, so that everything the walls do cancels exactly
 * in a comparison and the difference isolates what the layer changes. The
 * benchmark tables are measured against this baseline; reference_run remains
 * the wall-free oracle for consistency checks at horizons where no wall can
 * interfere.
 */
History baseline_run(const SimConfig& cfg);

/// Max over all frames and nodes of |a - b|. Throws on lattice mismatch.
double linf_error(const History& a, const History& b);

/// Streaming variant: advances cfg.method against a stored reference and
/// folds the error without materializing the test history. Also reports the
/// sup-norm growth ratio if sup_ratio is non-null.
double linf_error_vs_reference(const SimConfig& cfg, const History& ref,
                               double* sup_ratio = nullptr);

}  // namespace layerlab
