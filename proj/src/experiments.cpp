#include "layerlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "layerlab/analysis.hpp"

namespace layerlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

InitialCondition incidence_init(const InitialCondition& base, double incidence_deg) {
    InitialCondition init = base;
    if (incidence_deg == 0.0) {
        init.vx = 1.0;
        init.vy = 0.0;
    } else if (incidence_deg == 45.0) {
        init.vx = 1.0;  // used unnormalized, exactly as the tables are defined
        init.vy = 1.0;
    } else {
        const double th = incidence_deg * std::numbers::pi / 180.0;
        init.vx = std::cos(th);
        init.vy = std::sin(th);
    }
    return init;
}

SimConfig cell_config(const TableSpec& spec, Method method, int refinement,
                      double incidence_deg) {
    SimConfig cfg = baseline_config();
    cfg.layer = spec.layer;
    cfg.init = incidence_init(spec.init, incidence_deg);
    cfg.method = method;
    cfg.refinement = refinement;
    return cfg;
}

/// Max |frame value| over a sub-window of a history frame.
double frame_max_abs(const std::vector<double>& frame, const HzWindow& full,
                     const HzWindow& sub) {
    double m = 0.0;
    for (int j = sub.j0; j < sub.j1; ++j) {
        const double* row = frame.data() + static_cast<size_t>(j - full.j0) * full.width();
        for (int i = sub.i0; i < sub.i1; ++i) m = std::max(m, std::abs(row[i - full.i0]));
    }
    return m;
}

/// Streams cfg.method against ref, folding max |test - ref| over a sub-window
/// of the sampled region, counting only frames >= from_frame.
double fold_subwindow_error(const SimConfig& cfg, const History& ref, const HzWindow& sub,
                            size_t from_frame) {
    Simulation sim(cfg);
    const HzWindow full = hz_window(sim.grid(), cfg.interest);
    if (full.count() != ref.window.count())
        throw std::invalid_argument("fold_subwindow_error: lattice mismatch");
    std::vector<double> buf(full.count());
    std::vector<double> diff(full.count());
    double m = 0.0;
    auto fold = [&](size_t f) {
        if (f < from_frame) return;
        sim.sample_hz(full, buf.data());
        const auto& rf = ref.frames[f];
        for (size_t n = 0; n < buf.size(); ++n) diff[n] = buf[n] - rf[n];
        m = std::max(m, frame_max_abs(diff, full, sub));
    };
    fold(0);
    for (int n = 0; n < sim.total_steps(); ++n) {
        sim.advance();
        fold(static_cast<size_t>(n) + 1);
    }
    return m;
}

// ---- radix-2 FFT for the carrier estimate -------------------------------

void fft_inplace(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// 2-D FFT of a real window zero-padded to pad x pad.
std::vector<std::complex<double>> fft2(const std::vector<double>& win, int wx, int wy, int pad) {
    std::vector<std::complex<double>> grid(static_cast<size_t>(pad) * pad);
    for (int j = 0; j < wy; ++j)
        for (int i = 0; i < wx; ++i)
            grid[static_cast<size_t>(j) * pad + i] = win[static_cast<size_t>(j) * wx + i];
    std::vector<std::complex<double>> row(pad);
    for (int j = 0; j < pad; ++j) {
        std::copy_n(grid.begin() + static_cast<size_t>(j) * pad, pad, row.begin());
        fft_inplace(row);
        std::copy_n(row.begin(), pad, grid.begin() + static_cast<size_t>(j) * pad);
    }
    std::vector<std::complex<double>> col(pad);
    for (int i = 0; i < pad; ++i) {
        for (int j = 0; j < pad; ++j) col[j] = grid[static_cast<size_t>(j) * pad + i];
        fft_inplace(col);
        for (int j = 0; j < pad; ++j) grid[static_cast<size_t>(j) * pad + i] = col[j];
    }
    return grid;
}

}  // namespace

TableSpec TableSpec::standard(int id) {
    TableSpec s;
    s.table_id = id;
    const auto constant2 = AbsorptionProfile::constant(2.0, 6.0, 10.0);
    const auto constant3 = AbsorptionProfile::constant(3.0, 6.0, 10.0);
    const auto cubic = AbsorptionProfile::cubic(1.0 / 8.0, 6.0, 10.0);

    InitialCondition bump;  // (5,5), r = 0.8
    InitialCondition gauss;
    gauss.kind = InitialCondition::Kind::gaussian;
    // width and center chosen so the truncated tail stays inside the region
    // of interest, clear of the layer
    gauss.xc = 3.0;
    gauss.yc = 5.0;
    gauss.r = 0.4;
    InitialCondition random;
    random.kind = InitialCondition::Kind::random;
    random.r = 1.0;
    random.seed = 424242;
    random.base_cell = 0.1;

    switch (id) {
        case 1: s.layer = constant2; s.init = bump; s.init.k = 10.0; s.incidences_deg = {0.0, 45.0}; break;
        case 2: s.layer = constant2; s.init = bump; s.init.k = 1.0; s.incidences_deg = {0.0, 45.0}; break;
        case 3: s.layer = cubic; s.init = bump; s.init.k = 10.0; s.incidences_deg = {0.0, 45.0}; break;
        case 4: s.layer = cubic; s.init = bump; s.init.k = 1.0; s.incidences_deg = {0.0, 45.0}; break;
        case 5: s.layer = constant2; s.init = gauss; break;
        case 6: s.layer = cubic; s.init = gauss; break;
        case 7: s.layer = constant3; s.init = random; break;
        case 8: s.layer = cubic; s.init = random; break;
        default: throw std::invalid_argument("TableSpec::standard: table_id must be 1..8");
    }
    return s;
}

const ErrorReport* TableResult::find(const std::string& method, int refinement,
                                     double incidence_deg) const {
    for (const auto& r : cells)
        if (r.method == method && r.refinement == refinement &&
            r.incidence_deg == incidence_deg)
            return &r;
    return nullptr;
}

TableResult run_table(const TableSpec& spec, int n_workers) {
    TableResult out;
    out.spec = spec;
    const std::vector<double> incidences =
        spec.incidences_deg.empty() ? std::vector<double>{0.0} : spec.incidences_deg;
    const bool parallel = n_workers != 1;

    for (double inc : incidences) {
        for (int ref_level : spec.refinements) {
            History ref;
            try {
                SimConfig probe = cell_config(spec, Method::maxwell, ref_level, inc);
                ref = baseline_run(probe);
            } catch (const std::exception& e) {
                for (Method m : spec.methods) {
                    ErrorReport r;
                    r.method = method_name(m);
                    r.refinement = ref_level;
                    r.incidence_deg = inc;
                    r.frequency_k = spec.init.kind == InitialCondition::Kind::modulated_bump
                                        ? spec.init.k : 0.0;
                    r.linf_error = std::numeric_limits<double>::quiet_NaN();
                    r.status = std::string("failed: reference: ") + e.what();
                    out.cells.push_back(r);
                }
                continue;
            }

            auto run_cell = [&, inc, ref_level](Method m) {
                ErrorReport r;
                r.method = method_name(m);
                r.refinement = ref_level;
                r.incidence_deg = inc;
                r.frequency_k = spec.init.kind == InitialCondition::Kind::modulated_bump
                                    ? spec.init.k : 0.0;
                const auto t0 = Clock::now();
                try {
                    const SimConfig cfg = cell_config(spec, m, ref_level, inc);
                    r.linf_error = linf_error_vs_reference(cfg, ref, &r.sup_ratio);
                } catch (const std::exception& e) {
                    r.linf_error = std::numeric_limits<double>::quiet_NaN();
                    r.status = std::string("failed: ") + e.what();
                }
                r.runtime_s = seconds_since(t0);
                return r;
            };

            if (parallel) {
                std::vector<std::future<ErrorReport>> futs;
                futs.reserve(spec.methods.size());
                for (Method m : spec.methods)
                    futs.push_back(std::async(std::launch::async, run_cell, m));
                for (auto& f : futs) out.cells.push_back(f.get());
            } else {
                for (Method m : spec.methods) out.cells.push_back(run_cell(m));
            }
        }
    }
    return out;
}

namespace {

struct TableRow {
    const char* method;
    double cells[6];  // r0, r1, r2 at normal incidence, then at 45 degrees
};

// Rows of the standard tables; tables 5-8 carry only the first three columns.
const std::map<int, std::array<TableRow, 5>> kTabulated = {
    {1, {{{"berenger", {9.4e-02, 3.9e-02, 7.9e-03, 1.3e-01, 2.9e-02, 5.6e-03}},
          {"smart", {5.2e-02, 1.3e-02, 5.1e-04, 6.2e-02, 1.1e-02, 5.3e-03}},
          {"hml_v1", {3.4e-02, 3.1e-03, 2.1e-05, 4.5e-02, 1.2e-03, 5.5e-04}},
          {"hml_v2", {2.5e-02, 6.0e-03, 1.2e-03, 7.4e-02, 1.1e-02, 1.7e-03}},
          {"hml_v3", {2.1e-02, 4.2e-03, 5.1e-04, 4.5e-02, 5.3e-03, 5.7e-04}}}}},
    {2, {{{"berenger", {1.5e-02, 7.1e-03, 3.5e-03, 1.3e-02, 6.1e-03, 3.0e-03}},
          {"smart", {2.0e-02, 2.0e-02, 2.01e-02, 4.3e-02, 4.2e-02, 4.2e-02}},
          {"hml_v1", {1.7e-02, 1.60e-02, 1.6e-02, 3.4e-02, 3.3e-02, 3.2e-02}},
          {"hml_v2", {1.8e-02, 1.1e-02, 6.7e-03, 3.1e-02, 1.9e-02, 1.1e-02}},
          {"hml_v3", {4.3e-03, 2.6e-03, 1.4e-03, 8.2e-03, 4.8e-03, 2.6e-03}}}}},
    {3, {{{"berenger", {3.8e-05, 1.9e-07, 2.1e-09, 2.0e-04, 9.1e-07, 1.6e-09}},
          {"smart", {2.7e-05, 2.2e-07, 1.7e-07, 1.7e-04, 9.0e-07, 3.1e-08}},
          {"hml_v1", {5.5e-07, 6.0e-08, 5.6e-08, 5.6e-06, 1.2e-08, 4.7e-09}},
          {"hml_v2", {6.8e-07, 6.5e-08, 3.1e-08, 2.6e-06, 8.1e-09, 2.8e-09}},
          {"hml_v3", {5.8e-08, 2.4e-09, 1.1e-09, 1.5e-06, 9.5e-10, 9.0e-11}}}}},
    {4, {{{"berenger", {6.2e-07, 3.2e-08, 7.8e-10, 5.2e-07, 2.9e-08, 6.5e-10}},
          {"smart", {5.3e-04, 5.3e-04, 5.2e-04, 3.9e-04, 3.8e-04, 3.7e-04}},
          {"hml_v1", {1.6e-04, 1.6e-04, 1.5e-04, 8.6e-05, 8.3e-05, 8.2e-05}},
          {"hml_v2", {4.1e-04, 2.0e-04, 9.6e-05, 2.0e-04, 9.8e-05, 4.8e-05}},
          {"hml_v3", {1.1e-05, 5.4e-06, 2.7e-06, 5.9e-06, 2.9e-06, 1.4e-06}}}}},
    {5, {{{"berenger", {1.5e-02, 6.7e-03, 3.3e-03, 0, 0, 0}},
          {"smart", {3.4e-02, 3.4e-02, 3.3e-02, 0, 0, 0}},
          {"hml_v1", {3.0e-02, 2.9e-02, 2.8e-02, 0, 0, 0}},
          {"hml_v2", {3.6e-02, 2.5e-02, 1.6e-02, 0, 0, 0}},
          {"hml_v3", {1.0e-02, 6.6e-03, 3.9e-03, 0, 0, 0}}}}},
    {6, {{{"berenger", {7.5e-07, 2.0e-08, 8.3e-10, 0, 0, 0}},
          {"smart", {4.3e-04, 4.2e-04, 4.1e-04, 0, 0, 0}},
          {"hml_v1", {1.3e-04, 1.2e-04, 1.2e-04, 0, 0, 0}},
          {"hml_v2", {3.0e-04, 1.5e-04, 7.3e-05, 0, 0, 0}},
          {"hml_v3", {8.8e-06, 4.3e-06, 2.1e-06, 0, 0, 0}}}}},
    {7, {{{"berenger", {5.7e-02, 4.9e-02, 4.4e-02, 0, 0, 0}},
          {"smart", {6.7e-02, 6.3e-02, 5.4e-02, 0, 0, 0}},
          {"hml_v1", {5.1e-02, 4.5e-02, 4.0e-02, 0, 0, 0}},
          {"hml_v2", {6.4e-02, 3.0e-02, 1.9e-02, 0, 0, 0}},
          {"hml_v3", {3.2e-02, 1.5e-02, 6.7e-03, 0, 0, 0}}}}},
    {8, {{{"berenger", {1.1e-04, 5.0e-05, 4.4e-06, 0, 0, 0}},
          {"smart", {7.2e-04, 6.9e-04, 6.4e-04, 0, 0, 0}},
          {"hml_v1", {2.1e-04, 2.2e-04, 2.0e-04, 0, 0, 0}},
          {"hml_v2", {5.0e-04, 2.7e-04, 1.2e-04, 0, 0, 0}},
          {"hml_v3", {1.5e-05, 7.9e-06, 3.7e-06, 0, 0, 0}}}}},
};

}  // namespace

std::optional<double> tabulated_linf(int table_id, const std::string& method,
                                     int refinement, double incidence_deg) {
    auto t = kTabulated.find(table_id);
    if (t == kTabulated.end() || refinement < 0 || refinement > 2) return std::nullopt;
    if (incidence_deg != 0.0 && incidence_deg != 45.0) return std::nullopt;
    if (table_id >= 5 && incidence_deg != 0.0) return std::nullopt;
    for (const auto& row : t->second)
        if (method == row.method)
            return row.cells[(incidence_deg == 45.0 ? 3 : 0) + refinement];
    return std::nullopt;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("log_log_slope: need >= 2 points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

/// Time at which the trailing edge of the packet has crossed the layer
/// interface (whole packet inside the layer).
double full_entry_time(const SimConfig& cfg) {
    const double vnorm = std::hypot(cfg.init.vx, cfg.init.vy);
    if (!(vnorm > 0.0) || !(cfg.init.vx > 0.0))
        throw std::invalid_argument("probe timing: packet must travel toward +x");
    const double vhat_x = cfg.init.vx / vnorm;
    return (cfg.layer.support_start - (cfg.init.xc - cfg.init.r)) / vhat_x;
}

constexpr double kErrorFloor = 1e-13;

}  // namespace

MuScalingResult mu_scaling_study(const SimConfig& base, const std::vector<double>& mu_values) {
    if (mu_values.size() < 4)
        throw std::invalid_argument("mu_scaling_study: need >= 4 mu values");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double m : mu_values) {
        if (m < 0.0) throw std::invalid_argument("mu_scaling_study: mu must be >= 0");
        if (m > 0.0) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
    }
    if (!(hi / lo >= 8.0 - 1e-12))  // mu = 0 entries are degenerate, not part of the span
        throw std::invalid_argument("mu_scaling_study: mu values must span about a decade");

    SimConfig probe = base;
    probe.interest = Rect{4.5, 5.5, base.base_grid.y_min, base.base_grid.y_max};
    const History ref = baseline_run(probe);

    const double t_entry = full_entry_time(probe);
    const size_t from_frame =
        static_cast<size_t>(std::max(0.0, std::ceil(t_entry / probe.grid().dt - 0.5)));
    const HzWindow full = hz_window(probe.grid(), probe.interest);

    MuScalingResult out;
    out.mu_values = mu_values;
    for (double mu : mu_values) {
        SimConfig cs = probe;
        cs.mu = mu;
        cs.method = Method::smart;
        out.smart_errors.push_back(fold_subwindow_error(cs, ref, full, from_frame));
        cs.method = Method::hml_v3;
        out.hml_errors.push_back(fold_subwindow_error(cs, ref, full, from_frame));
    }

    auto fit = [&](const std::vector<double>& errs, bool& saturated) {
        std::vector<double> xs, ys;
        for (size_t i = 0; i < errs.size(); ++i) {
            if (errs[i] <= kErrorFloor) {
                saturated = true;
                continue;
            }
            xs.push_back(mu_values[i]);
            ys.push_back(errs[i]);
        }
        if (xs.size() < 2) {
            saturated = true;
            return 0.0;
        }
        return log_log_slope(xs, ys);
    };
    out.smart_slope = fit(out.smart_errors, out.smart_saturated);
    out.hml_slope = fit(out.hml_errors, out.hml_saturated);
    return out;
}

ReflectionCheck reflection_vs_formula(const SimConfig& cfg) {
    if (cfg.init.kind != InitialCondition::Kind::modulated_bump)
        throw std::invalid_argument("reflection_vs_formula: needs a modulated bump packet");
    if (cfg.layer.kind != AbsorptionProfile::Kind::constant)
        throw std::invalid_argument("reflection_vs_formula: needs a discontinuous (constant) layer");

    SimConfig probe = cfg;
    probe.method = Method::smart;
    probe.interest = Rect{3.5, cfg.layer.support_start, cfg.base_grid.y_min, cfg.base_grid.y_max};
    const History ref = baseline_run(probe);

    const YeeGrid g = probe.grid();
    const HzWindow full = hz_window(g, probe.interest);

    // Incident snapshot when the leading edge reaches the interface; the
    // packet is then still entirely on the sampled side.
    const double vnorm = std::hypot(probe.init.vx, probe.init.vy);
    const double vhat_x = probe.init.vx / vnorm;
    const double vhat_y = probe.init.vy / vnorm;
    const double t_lead =
        (probe.layer.support_start - (probe.init.xc + probe.init.r)) / vhat_x;
    const auto snap_frame = static_cast<size_t>(std::llround(t_lead / g.dt - 0.5));
    if (snap_frame >= ref.frames.size())
        throw std::runtime_error("reflection_vs_formula: packet never reaches the layer");

    // DFT window: a square of side ~2.4 against the interface, centered on the
    // packet row.
    const double yc_now = probe.init.yc + vhat_y * t_lead;
    Rect dft_rect{probe.layer.support_start - 2.4, probe.layer.support_start,
                  yc_now - 1.2, yc_now + 1.2};
    const HzWindow dft_win = hz_window(g, dft_rect);
    const int wx = dft_win.width(), wy = dft_win.height();
    std::vector<double> win(static_cast<size_t>(wx) * wy);
    {
        const auto& frame = ref.frames[snap_frame];
        for (int j = dft_win.j0; j < dft_win.j1; ++j)
            for (int i = dft_win.i0; i < dft_win.i1; ++i)
                win[static_cast<size_t>(j - dft_win.j0) * wx + (i - dft_win.i0)] =
                    frame[static_cast<size_t>(j - full.j0) * full.width() + (i - full.i0)];
    }

    int pad = 256;
    while (pad < std::max(wx, wy)) pad *= 2;
    const auto spec = fft2(win, wx, wy, pad);

    // peak bin (signed frequencies)
    double peak = 0.0, total = 0.0;
    int pi = 0, pj = 0;
    for (int j = 0; j < pad; ++j)
        for (int i = 0; i < pad; ++i) {
            const double a = std::abs(spec[static_cast<size_t>(j) * pad + i]);
            total += a;
            if (a > peak) {
                peak = a;
                pi = i;
                pj = j;
            }
        }
    auto signed_bin = [pad](int b) { return b <= pad / 2 ? b : b - pad; };
    const double kx = 2.0 * std::numbers::pi * signed_bin(pi) / (pad * g.dx);
    const double ky = 2.0 * std::numbers::pi * signed_bin(pj) / (pad * g.dy);
    const double kmag = std::hypot(kx, ky);
    if (kmag * g.dx < 0.05 || peak < 50.0 * (total / (static_cast<double>(pad) * pad)))
        throw std::runtime_error(
            "reflection_vs_formula: no narrow-band carrier found (peak/mean too small "
            "or carrier too close to zero frequency)");

    ReflectionCheck out;
    out.carrier_xi1 = std::abs(kx);
    out.carrier_xi2 = std::abs(ky);
    out.carrier_tau = kmag;  // exact dispersion tau^2 = |xi|^2
    out.wavelength = 2.0 * std::numbers::pi / kmag;
    if (out.carrier_xi1 > 0.0) {
        Eigen::VectorXd xi(2);
        xi << out.carrier_xi1, out.carrier_xi2;
        out.predicted_ratio =
            std::abs(smart_reflection_coefficient(out.carrier_tau, xi, cfg.mu, cfg.nu));
    }

    // incident peak near the interface
    Rect inc_rect{probe.layer.support_start - 0.5, probe.layer.support_start,
                  probe.base_grid.y_min, probe.base_grid.y_max};
    const HzWindow inc_win = hz_window(g, inc_rect);
    double a_inc = 0.0;
    for (const auto& frame : ref.frames) a_inc = std::max(a_inc, frame_max_abs(frame, full, inc_win));

    // reflected peak over the probe strip after full entry
    Rect strip_rect{4.5, 5.5, probe.base_grid.y_min, probe.base_grid.y_max};
    const HzWindow strip = hz_window(g, strip_rect);
    const double t_entry = full_entry_time(probe);
    const auto from_frame =
        static_cast<size_t>(std::max(0.0, std::ceil(t_entry / g.dt - 0.5)));
    const double a_refl = fold_subwindow_error(probe, ref, strip, from_frame);

    out.measured_ratio = a_inc > 0.0 ? a_refl / a_inc : 0.0;
    out.measured_over_predicted =
        out.predicted_ratio > 0.0
            ? out.measured_ratio / out.predicted_ratio
            : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace layerlab
