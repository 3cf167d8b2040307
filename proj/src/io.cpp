#include "layerlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "layerlab/analysis.hpp"

namespace layerlab {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// shortest round-trip decimal representation
std::string fmt_exact(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string fmt_sci6(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 5);
    std::string s(buf, res.ptr);
    // pad the exponent to two digits for a fixed-width column
    const auto e = s.find('e');
    const size_t digits_at = s[e + 1] == '-' || s[e + 1] == '+' ? e + 2 : e + 1;
    if (s.size() - digits_at < 2) s.insert(digits_at, "0");
    return s;
}

double parse_double(const std::string& key, const std::string& v) {
    double out{};
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::invalid_argument("config: key '" + key + "' has a malformed number '" + v + "'");
    return out;
}

long parse_long(const std::string& key, const std::string& v) {
    long out{};
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw std::invalid_argument("config: key '" + key + "' has a malformed integer '" + v + "'");
    return out;
}

struct RawConfig {
    // section -> key -> value
    std::map<std::string, std::map<std::string, std::string>> kv;

    [[nodiscard]] bool has(const std::string& sec, const std::string& key) const {
        auto s = kv.find(sec);
        return s != kv.end() && s->second.count(key) > 0;
    }
    [[nodiscard]] std::string get(const std::string& sec, const std::string& key,
                                  const std::string& fallback) const {
        auto s = kv.find(sec);
        if (s == kv.end()) return fallback;
        auto k = s->second.find(key);
        return k == s->second.end() ? fallback : k->second;
    }
    [[nodiscard]] double get_num(const std::string& sec, const std::string& key,
                                 double fallback) const {
        return has(sec, key) ? parse_double(sec + "." + key, kv.at(sec).at(key)) : fallback;
    }
    [[nodiscard]] long get_int(const std::string& sec, const std::string& key,
                               long fallback) const {
        return has(sec, key) ? parse_long(sec + "." + key, kv.at(sec).at(key)) : fallback;
    }
};

RawConfig parse_raw(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            raw.kv[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value' inside a [section]");
        raw.kv[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return raw;
}

const std::map<std::string, std::vector<std::string>> kSchema = {
    {"grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny", "dt"}},
    {"interest", {"x_min", "x_max", "y_min", "y_max"}},
    {"layer", {"kind", "value", "support_start", "support_end"}},
    {"init", {"kind", "xc", "yc", "r", "k", "vx", "vy", "seed", "base_cell"}},
    {"run", {"method", "nu", "mu", "t_final", "refinement", "extrapolation_order"}},
    {"table", {"id", "refinements"}},
};

void check_schema(const RawConfig& raw) {
    for (const auto& [sec, keys] : raw.kv) {
        auto it = kSchema.find(sec);
        if (it == kSchema.end())
            throw std::invalid_argument("config: unknown section [" + sec + "]");
        for (const auto& [key, value] : keys) {
            (void)value;
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
                throw std::invalid_argument("config: unknown key '" + key + "' in [" + sec + "]");
        }
    }
}

SimConfig sim_from_raw(const RawConfig& raw) {
    SimConfig base = baseline_config();
    SimConfig cfg = base;

    const double x_min = raw.get_num("grid", "x_min", base.base_grid.x_min);
    const double x_max = raw.get_num("grid", "x_max", base.base_grid.x_max);
    const double y_min = raw.get_num("grid", "y_min", base.base_grid.y_min);
    const double y_max = raw.get_num("grid", "y_max", base.base_grid.y_max);
    const int nx = static_cast<int>(raw.get_int("grid", "nx", base.base_grid.nx));
    const int ny = static_cast<int>(raw.get_int("grid", "ny", base.base_grid.ny));
    const double dt = raw.get_num("grid", "dt", base.base_grid.dt);
    cfg.t_final = raw.get_num("run", "t_final", base.t_final);
    const int n_steps = static_cast<int>(std::ceil(cfg.t_final / dt - 1e-9));
    cfg.base_grid = YeeGrid(x_min, x_max, y_min, y_max, nx, ny, dt, n_steps);

    cfg.interest = Rect{raw.get_num("interest", "x_min", base.interest.x0),
                        raw.get_num("interest", "x_max", base.interest.x1),
                        raw.get_num("interest", "y_min", base.interest.y0),
                        raw.get_num("interest", "y_max", base.interest.y1)};

    const std::string lkind = raw.get("layer", "kind", "constant");
    const double lv = raw.get_num("layer", "value", 2.0);
    const double la = raw.get_num("layer", "support_start", 6.0);
    const double lb = raw.get_num("layer", "support_end", 10.0);
    if (lkind == "zero")
        cfg.layer = AbsorptionProfile::none();
    else if (lkind == "constant")
        cfg.layer = AbsorptionProfile::constant(lv, la, lb);
    else if (lkind == "cubic")
        cfg.layer = AbsorptionProfile::cubic(lv, la, lb);
    else
        throw std::invalid_argument("config: layer.kind must be zero|constant|cubic, got '" +
                                    lkind + "'");

    const std::string ikind = raw.get("init", "kind", "modulated_bump");
    if (ikind == "modulated_bump")
        cfg.init.kind = InitialCondition::Kind::modulated_bump;
    else if (ikind == "gaussian")
        cfg.init.kind = InitialCondition::Kind::gaussian;
    else if (ikind == "random")
        cfg.init.kind = InitialCondition::Kind::random;
    else
        throw std::invalid_argument(
            "config: init.kind must be modulated_bump|gaussian|random, got '" + ikind + "'");
    cfg.init.xc = raw.get_num("init", "xc", 5.0);
    cfg.init.yc = raw.get_num("init", "yc", 5.0);
    cfg.init.r = raw.get_num("init", "r", ikind == "gaussian" ? 0.4 : (ikind == "random" ? 1.0 : 0.8));
    cfg.init.k = raw.get_num("init", "k", 10.0);
    cfg.init.vx = raw.get_num("init", "vx", 1.0);
    cfg.init.vy = raw.get_num("init", "vy", 0.0);
    cfg.init.seed = static_cast<std::uint64_t>(raw.get_int("init", "seed", 424242));
    cfg.init.base_cell = raw.get_num("init", "base_cell", (x_max - x_min) / nx);

    cfg.method = method_from_name(raw.get("run", "method", "maxwell"));
    cfg.nu = raw.get_num("run", "nu", 0.0);
    cfg.mu = raw.get_num("run", "mu", 1.0);
    cfg.refinement = static_cast<int>(raw.get_int("run", "refinement", 0));
    // hook for repeated extrapolation; only the two-branch variant exists
    if (raw.get_int("run", "extrapolation_order", 1) != 1)
        throw std::invalid_argument(
            "extrapolation_order: only the first-order (two-branch) extrapolation "
            "is implemented");

    cfg.validate();
    return cfg;
}

TableSpec table_from_raw(const RawConfig& raw) {
    const int id = static_cast<int>(raw.get_int("table", "id", 1));
    TableSpec spec = TableSpec::standard(id);
    if (raw.has("table", "refinements")) {
        spec.refinements.clear();
        std::istringstream ss(raw.kv.at("table").at("refinements"));
        std::string tok;
        while (std::getline(ss, tok, ','))
            spec.refinements.push_back(static_cast<int>(parse_long("table.refinements", trim(tok))));
        if (spec.refinements.empty())
            throw std::invalid_argument("config: table.refinements must list at least one level");
    }
    return spec;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    const RawConfig raw = parse_raw(text, origin);
    check_schema(raw);
    ParsedConfig out;
    if (raw.kv.count("table")) {
        for (const auto& [sec, keys] : raw.kv)
            if (sec != "table" && !keys.empty())
                throw std::invalid_argument("config: [table] cannot be combined with [" + sec + "]");
        out.table = table_from_raw(raw);
    } else {
        out.sim = sim_from_raw(raw);
    }
    return out;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "x_min = " << fmt_exact(cfg.base_grid.x_min) << "\n";
    out << "x_max = " << fmt_exact(cfg.base_grid.x_max) << "\n";
    out << "y_min = " << fmt_exact(cfg.base_grid.y_min) << "\n";
    out << "y_max = " << fmt_exact(cfg.base_grid.y_max) << "\n";
    out << "nx = " << cfg.base_grid.nx << "\n";
    out << "ny = " << cfg.base_grid.ny << "\n";
    out << "dt = " << fmt_exact(cfg.base_grid.dt) << "\n\n";
    out << "[interest]\n";
    out << "x_min = " << fmt_exact(cfg.interest.x0) << "\n";
    out << "x_max = " << fmt_exact(cfg.interest.x1) << "\n";
    out << "y_min = " << fmt_exact(cfg.interest.y0) << "\n";
    out << "y_max = " << fmt_exact(cfg.interest.y1) << "\n\n";
    out << "[layer]\n";
    switch (cfg.layer.kind) {
        case AbsorptionProfile::Kind::zero: out << "kind = zero\n"; break;
        case AbsorptionProfile::Kind::constant: out << "kind = constant\n"; break;
        case AbsorptionProfile::Kind::cubic: out << "kind = cubic\n"; break;
    }
    out << "value = " << fmt_exact(cfg.layer.value) << "\n";
    out << "support_start = " << fmt_exact(cfg.layer.support_start) << "\n";
    out << "support_end = " << fmt_exact(cfg.layer.support_end) << "\n\n";
    out << "[init]\n";
    switch (cfg.init.kind) {
        case InitialCondition::Kind::modulated_bump: out << "kind = modulated_bump\n"; break;
        case InitialCondition::Kind::gaussian: out << "kind = gaussian\n"; break;
        case InitialCondition::Kind::random: out << "kind = random\n"; break;
    }
    out << "xc = " << fmt_exact(cfg.init.xc) << "\n";
    out << "yc = " << fmt_exact(cfg.init.yc) << "\n";
    out << "r = " << fmt_exact(cfg.init.r) << "\n";
    out << "k = " << fmt_exact(cfg.init.k) << "\n";
    out << "vx = " << fmt_exact(cfg.init.vx) << "\n";
    out << "vy = " << fmt_exact(cfg.init.vy) << "\n";
    out << "seed = " << cfg.init.seed << "\n";
    out << "base_cell = " << fmt_exact(cfg.init.base_cell) << "\n\n";
    out << "[run]\n";
    out << "method = " << method_name(cfg.method) << "\n";
    out << "nu = " << fmt_exact(cfg.nu) << "\n";
    out << "mu = " << fmt_exact(cfg.mu) << "\n";
    out << "t_final = " << fmt_exact(cfg.t_final) << "\n";
    out << "refinement = " << cfg.refinement << "\n";
    return out.str();
}

std::string reports_to_csv(const std::vector<ErrorReport>& reports) {
    std::string out = "method,refinement,incidence_deg,k,linf_error,status\n";
    for (const auto& r : reports) {
        out += r.method;
        out += ',';
        out += std::to_string(r.refinement);
        out += ',';
        out += fmt_exact(r.incidence_deg);
        out += ',';
        out += fmt_exact(r.frequency_k);
        out += ',';
        out += fmt_sci6(r.linf_error);
        out += ',';
        out += r.status;
        out += '\n';
    }
    return out;
}

std::string amplification_to_csv(const std::vector<DirectionLabel>& labels) {
    std::string out = "direction_deg,v1,beta,label\n";
    for (const auto& l : labels) {
        out += fmt_sci6(l.angle_rad * 180.0 / 3.14159265358979323846);
        out += ',';
        out += fmt_sci6(l.v1);
        out += ',';
        out += fmt_sci6(l.beta);
        out += ',';
        switch (l.cls) {
            case DirectionLabel::Class::incoming: out += "incoming"; break;
            case DirectionLabel::Class::outgoing: out += "outgoing"; break;
            case DirectionLabel::Class::amplified: out += "amplified"; break;
            case DirectionLabel::Class::boundary: out += "boundary"; break;
        }
        out += '\n';
    }
    return out;
}

double write_pgm(const std::filesystem::path& path, const std::vector<double>& values,
                 int width, int height) {
    if (values.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("write_pgm: size mismatch");
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open '" + path.string() + "'");
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> row(width);
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const double v = std::abs(values[static_cast<size_t>(j) * width + i]);
            row[i] = scale > 0.0
                         ? static_cast<unsigned char>(std::lround(255.0 * v / scale))
                         : 0;
        }
        out.write(reinterpret_cast<const char*>(row.data()), width);
    }
    if (!out) throw std::runtime_error("write_pgm: write failed for '" + path.string() + "'");
    return scale;
}

void write_text_file(const std::filesystem::path& out_dir, const std::string& name,
                     const std::string& content) {
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<std::string> write_manifest(const RunManifest& m,
                                        const std::filesystem::path& out_dir) {
    json j;
    j["tool"] = kToolVersion;
    j["command"] = m.command;
    j["args"] = m.args;
    j["config_echo"] = m.config_echo;
    j["seed"] = m.seed;
    j["runtimes_s"] = m.runtimes_s;
    j["sup_ratios"] = m.sup_ratios;
    j["scalars"] = m.scalars;
    std::vector<std::string> inventory = m.files;
    inventory.push_back("manifest.json");
    j["files"] = inventory;
    write_text_file(out_dir, "manifest.json", j.dump(2) + "\n");
    return inventory;
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("manifest: cannot open '" + path.string() + "'");
    json j;
    in >> j;
    RunManifest m;
    m.command = j.value("command", "");
    m.args = j.value("args", std::vector<std::string>{});
    m.config_echo = j.value("config_echo", "");
    m.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("runtimes_s")) m.runtimes_s = j["runtimes_s"].get<std::map<std::string, double>>();
    if (j.contains("sup_ratios")) m.sup_ratios = j["sup_ratios"].get<std::map<std::string, double>>();
    if (j.contains("scalars")) m.scalars = j["scalars"].get<std::map<std::string, double>>();
    m.files = j.value("files", std::vector<std::string>{});
    return m;
}

}  // namespace layerlab
