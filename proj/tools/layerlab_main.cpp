// layerlab: 2-D TE Maxwell absorbing-layer laboratory.
//
// Subcommands: run, run-table, mu-scaling, reflection-check,
// amplification-map, symbol-check, rerun.
// Exit codes: 0 success, 1 configuration error, 2 runtime failure,
// 3 check failure (--check mode).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "layerlab/analysis.hpp"
#include "layerlab/experiments.hpp"
#include "layerlab/io.hpp"

namespace fs = std::filesystem;
using namespace layerlab;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure("check failed: " + what);
}

std::string cell_key(const ErrorReport& r) {
    std::ostringstream k;
    k << r.method << "/r" << r.refinement << "/inc" << r.incidence_deg;
    return k.str();
}

std::string table_config_echo(const TableSpec& spec) {
    std::ostringstream out;
    out << "[table]\n";
    out << "id = " << spec.table_id << "\n";
    out << "refinements = ";
    for (size_t i = 0; i < spec.refinements.size(); ++i)
        out << (i ? "," : "") << spec.refinements[i];
    out << "\n";
    return out.str();
}

void run_table_checks(const TableResult& res) {
    const int id = res.spec.table_id;
    const auto cell = [&](const std::string& m, int r, double inc) {
        const ErrorReport* rep = res.find(m, r, inc);
        check(rep != nullptr && rep->status == "ok",
              "missing/failed cell " + m + "/r" + std::to_string(r));
        return rep->linf_error;
    };
    const std::vector<double> incs =
        res.spec.incidences_deg.empty() ? std::vector<double>{0.0} : res.spec.incidences_deg;

    if (id == 1 || id == 2) {
        for (double inc : incs)
            for (int r : res.spec.refinements)
                for (const auto& m : {"berenger", "smart", "hml_v1", "hml_v2", "hml_v3"}) {
                    const auto expect = tabulated_linf(id, m, r, inc);
                    if (!expect) continue;
                    const double got = cell(m, r, inc);
                    check(got > 0.5 * *expect && got < 2.0 * *expect,
                          std::string(m) + "/r" + std::to_string(r) + " off the tabulated value");
                }
    }
    if (id == 3)
        check(cell("berenger", 0, 0.0) <= 1e-3, "berenger r0 above 1e-3");
    if (id >= 5) {
        for (const auto& m : {"berenger", "hml_v2", "hml_v3"})
            for (size_t i = 0; i + 1 < res.spec.refinements.size(); ++i)
                check(cell(m, res.spec.refinements[i + 1], 0.0) <=
                          cell(m, res.spec.refinements[i], 0.0),
                      std::string(m) + " row not refinement-monotone");
        const int last = res.spec.refinements.back();
        check(cell("hml_v3", last, 0.0) < cell("smart", last, 0.0),
              "hml_v3 not below smart at the finest refinement");
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int snapshots) {
    const ParsedConfig pc = parse_config(fs::path(config_path));
    if (!pc.sim) throw std::invalid_argument("run: config file must describe a single run");
    const SimConfig cfg = *pc.sim;

    RunManifest man;
    man.command = "run";
    man.args = {config_path};
    man.config_echo = serialize_config(cfg);
    man.seed = cfg.init.seed;

    const auto t0 = std::chrono::steady_clock::now();
    const History ref = baseline_run(cfg);
    ErrorReport rep;
    rep.method = method_name(cfg.method);
    rep.refinement = cfg.refinement;
    rep.frequency_k = cfg.init.kind == InitialCondition::Kind::modulated_bump ? cfg.init.k : 0.0;
    rep.linf_error = linf_error_vs_reference(cfg, ref, &rep.sup_ratio);
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_text_file(out_dir, "error.csv", reports_to_csv({rep}));
    man.add_file("error.csv");
    man.runtimes_s[cell_key(rep)] = rep.runtime_s;
    man.sup_ratios[cell_key(rep)] = rep.sup_ratio;

    if (snapshots > 0) {
        const History test = method_run(cfg);
        const int n_frames = static_cast<int>(test.frames.size());
        for (int s = 0; s < snapshots; ++s) {
            const int f = (s * (n_frames - 1)) / std::max(1, snapshots - 1);
            std::vector<double> diff(test.frame_size());
            for (size_t n = 0; n < diff.size(); ++n)
                diff[n] = test.frames[f][n] - ref.frames[f][n];
            char name[64];
            std::snprintf(name, sizeof name, "diff_%04d.pgm", f);
            const double scale =
                write_pgm(fs::path(out_dir) / name, diff, test.window.width(), test.window.height());
            man.add_file(name);
            man.scalars[std::string(name) + ".scale"] = scale;
        }
    }
    write_manifest(man, out_dir);
    std::cout << "linf_error = " << rep.linf_error << "\n";
    return 0;
}

int cmd_run_table(int id, const std::vector<int>& refinements, const std::string& out_dir,
                  bool do_check, int workers) {
    TableSpec spec = TableSpec::standard(id);
    if (!refinements.empty()) spec.refinements = refinements;
    const TableResult res = run_table(spec, workers);

    RunManifest man;
    man.command = "run-table";
    man.args = {std::to_string(id)};
    man.config_echo = table_config_echo(spec);
    man.seed = spec.init.seed;
    for (const auto& r : res.cells) {
        man.runtimes_s[cell_key(r)] = r.runtime_s;
        man.sup_ratios[cell_key(r)] = r.sup_ratio;
    }
    const std::string csv_name = "table" + std::to_string(id) + ".csv";
    write_text_file(out_dir, csv_name, reports_to_csv(res.cells));
    man.add_file(csv_name);
    write_manifest(man, out_dir);

    std::cout << reports_to_csv(res.cells);
    if (do_check) run_table_checks(res);
    return 0;
}

int cmd_mu_scaling(const std::string& out_dir, bool do_check, int refinement) {
    SimConfig base = baseline_config();
    base.refinement = refinement;
    base.init.vx = 1.0;
    base.init.vy = 1.0;  // 45 degrees
    const std::vector<double> mus{0.25, 0.5, 1.0, 2.0};
    const MuScalingResult res = mu_scaling_study(base, mus);

    std::string csv = "mu,smart_error,hml_v3_error\n";
    for (size_t i = 0; i < mus.size(); ++i) {
        std::ostringstream row;
        row << mus[i] << "," << res.smart_errors[i] << "," << res.hml_errors[i] << "\n";
        csv += row.str();
    }
    RunManifest man;
    man.command = "mu-scaling";
    man.args = {std::to_string(refinement)};
    man.config_echo = serialize_config(base);
    man.scalars["smart_slope"] = res.smart_slope;
    man.scalars["hml_v3_slope"] = res.hml_slope;
    write_text_file(out_dir, "mu_scaling.csv", csv);
    man.add_file("mu_scaling.csv");
    write_manifest(man, out_dir);

    std::cout << "smart slope = " << res.smart_slope << ", hml_v3 slope = " << res.hml_slope
              << "\n";
    if (do_check) {
        check(!res.smart_saturated && std::abs(res.smart_slope - 1.0) <= 0.15,
              "smart slope outside 1.0 +- 0.15");
        check(!res.hml_saturated && res.hml_slope >= 1.7, "hml_v3 slope below 1.7");
    }
    return 0;
}

int cmd_reflection_check(const std::string& out_dir, bool do_check, int refinement) {
    SimConfig cfg = baseline_config();
    cfg.refinement = refinement;
    cfg.method = Method::smart;
    cfg.init.vx = 1.0;
    cfg.init.vy = 1.0;
    const ReflectionCheck oblique = reflection_vs_formula(cfg);
    cfg.init.vy = 0.0;
    const ReflectionCheck normal = reflection_vs_formula(cfg);

    std::ostringstream csv;
    csv << "incidence_deg,carrier_tau,carrier_xi1,carrier_xi2,predicted,measured\n";
    csv << "45," << oblique.carrier_tau << "," << oblique.carrier_xi1 << ","
        << oblique.carrier_xi2 << "," << oblique.predicted_ratio << ","
        << oblique.measured_ratio << "\n";
    csv << "0," << normal.carrier_tau << "," << normal.carrier_xi1 << "," << normal.carrier_xi2
        << "," << normal.predicted_ratio << "," << normal.measured_ratio << "\n";

    RunManifest man;
    man.command = "reflection-check";
    man.args = {std::to_string(refinement)};
    man.config_echo = serialize_config(cfg);
    man.scalars["measured_over_predicted_45"] = oblique.measured_over_predicted;
    man.scalars["normal_to_45"] = normal.measured_ratio / oblique.measured_ratio;
    write_text_file(out_dir, "reflection.csv", csv.str());
    man.add_file("reflection.csv");
    write_manifest(man, out_dir);

    std::cout << "measured/predicted at 45 deg = " << oblique.measured_over_predicted
              << ", normal/45 = " << normal.measured_ratio / oblique.measured_ratio << "\n";
    if (do_check) {
        check(oblique.measured_over_predicted >= 0.5 && oblique.measured_over_predicted <= 2.0,
              "45-degree measured/predicted outside [0.5, 2]");
        check(normal.measured_ratio < 0.2 * oblique.measured_ratio,
              "normal-incidence reflection not below 0.2x the 45-degree one");
    }
    return 0;
}

int cmd_amplification_map(const std::string& out_dir, bool isotropic, double angle_deg,
                          double ev1, double ev2, double sigma1, int dirs) {
    const DispersionModel model =
        isotropic ? DispersionModel::isotropic(2)
                  : DispersionModel::rotated(angle_deg * 3.14159265358979323846 / 180.0, ev1, ev2);
    Eigen::VectorXd sigma(2);
    sigma << sigma1, 0.0;
    const auto labels = amplification_map(model, sigma, dirs);
    write_text_file(out_dir, "amplification.csv", amplification_to_csv(labels));

    RunManifest man;
    man.command = "amplification-map";
    man.config_echo = isotropic ? "isotropic" : "rotated";
    size_t amplified = 0;
    for (const auto& l : labels)
        if (l.cls == DirectionLabel::Class::amplified) ++amplified;
    man.scalars["amplified_directions"] = static_cast<double>(amplified);
    man.add_file("amplification.csv");
    write_manifest(man, out_dir);
    std::cout << "amplified directions: " << amplified << " of " << labels.size() << "\n";
    return 0;
}

int cmd_symbol_check(const std::string& out_dir, int samples, bool do_check) {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 3.0);

    const auto maxwell = HyperbolicSystem::te_maxwell();
    const auto scalar = HyperbolicSystem::scalar_advection_2d();
    double worst = 0.0;
    std::string csv = "system,sample,residual\n";
    for (const auto* sys : {&maxwell, &scalar}) {
        for (int s = 0; s < samples; ++s) {
            const std::complex<double> tau(2.0 * unit(rng) + 3.1, 2.0 * unit(rng));
            Eigen::VectorXd xi(2), sigma(2);
            xi << 3.0 * unit(rng), 3.0 * unit(rng);
            sigma << pos(rng), (s % 2 ? pos(rng) : 0.0);
            const double r = berenger_symbol_identity(*sys, tau, xi, sigma);
            worst = std::max(worst, r);
            csv += (sys == &maxwell ? "te_maxwell," : "scalar_advection,");
            csv += std::to_string(s) + "," + std::to_string(r) + "\n";
        }
    }
    write_text_file(out_dir, "symbol_check.csv", csv);
    RunManifest man;
    man.command = "symbol-check";
    man.scalars["max_residual"] = worst;
    man.add_file("symbol_check.csv");
    write_manifest(man, out_dir);
    std::cout << "max residual over " << samples << " samples/system: " << worst << "\n";
    if (do_check) check(worst < 1e-10, "symbol identity residual above 1e-10");
    return 0;
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir) {
    const RunManifest man = read_manifest(manifest_path);
    if (man.command == "run-table") {
        const ParsedConfig pc = parse_config_text(man.config_echo, manifest_path);
        if (!pc.table) throw std::invalid_argument("rerun: manifest does not carry a table config");
        return cmd_run_table(pc.table->table_id, pc.table->refinements, out_dir, false, 0);
    }
    if (man.command == "run") {
        const ParsedConfig pc = parse_config_text(man.config_echo, manifest_path);
        if (!pc.sim) throw std::invalid_argument("rerun: manifest does not carry a run config");
        const fs::path tmp = fs::path(out_dir) / "rerun_config.ini";
        write_text_file(out_dir, "rerun_config.ini", man.config_echo);
        return cmd_run(tmp.string(), out_dir, 0);
    }
    throw std::invalid_argument("rerun: command '" + man.command + "' is not re-runnable");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D TE Maxwell absorbing-layer laboratory"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::string config_path;
    std::string manifest_path;
    int snapshots = 0;
    int table_id = 1;
    std::vector<int> refinements;
    bool do_check = false;
    int workers = 0;
    int refinement = 1;
    bool isotropic = false;
    double angle_deg = 30.0, ev1 = 1.0, ev2 = 4.0, sigma1 = 1.0;
    int dirs = 720;
    int samples = 100;

    auto* run = app.add_subcommand("run", "run one configuration against the reference");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--snapshots", snapshots, "number of |Hz - ref| PGM snapshots");

    auto* table = app.add_subcommand("run-table", "run one of the standard tables 1..8");
    table->add_option("id", table_id, "table id")->required()->check(CLI::Range(1, 8));
    table->add_option("--refinements", refinements, "refinement levels")->delimiter(',');
    table->add_option("--out", out_dir, "output directory");
    table->add_flag("--check", do_check, "verify the results and exit 3 on failure");
    table->add_option("--workers", workers, "1 = serial, 0 = parallel cells");

    auto* mu = app.add_subcommand("mu-scaling", "reflected-error slope in the absorption scale");
    mu->add_option("--out", out_dir, "output directory");
    mu->add_option("--refinement", refinement, "grid refinement level");
    mu->add_flag("--check", do_check, "verify the slopes and exit 3 on failure");

    auto* refl = app.add_subcommand("reflection-check",
                                    "measured oblique reflection against the closed form");
    refl->add_option("--out", out_dir, "output directory");
    refl->add_option("--refinement", refinement, "grid refinement level")->default_val(2);
    refl->add_flag("--check", do_check, "verify the ratios and exit 3 on failure");

    auto* amp = app.add_subcommand("amplification-map", "classify outgoing/amplified directions");
    amp->add_option("--out", out_dir, "output directory");
    amp->add_flag("--isotropic", isotropic, "isotropic dispersion instead of the rotated form");
    amp->add_option("--angle-deg", angle_deg, "principal-axis rotation");
    amp->add_option("--ev1", ev1, "first eigenvalue of the form");
    amp->add_option("--ev2", ev2, "second eigenvalue of the form");
    amp->add_option("--sigma1", sigma1, "layer strength in x1");
    amp->add_option("--dirs", dirs, "number of sampled directions");

    auto* sym = app.add_subcommand("symbol-check", "determinant identities at random points");
    sym->add_option("--out", out_dir, "output directory");
    sym->add_option("--samples", samples, "points per system");
    sym->add_flag("--check", do_check, "exit 3 when a residual exceeds 1e-10");

    auto* rerun = app.add_subcommand("rerun", "reproduce a previous run from its manifest");
    rerun->add_option("manifest", manifest_path, "manifest.json of the previous run")->required();
    rerun->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, snapshots);
        if (table->parsed()) return cmd_run_table(table_id, refinements, out_dir, do_check, workers);
        if (mu->parsed()) return cmd_mu_scaling(out_dir, do_check, refinement);
        if (refl->parsed()) return cmd_reflection_check(out_dir, do_check, refinement);
        if (amp->parsed())
            return cmd_amplification_map(out_dir, isotropic, angle_deg, ev1, ev2, sigma1, dirs);
        if (sym->parsed()) return cmd_symbol_check(out_dir, samples, do_check);
        if (rerun->parsed()) return cmd_rerun(manifest_path, out_dir);
    } catch (const CheckFailure& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
