#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "layerlab/config.hpp"
#include "layerlab/experiments.hpp"
#include "layerlab/reference.hpp"

namespace layerlab {

inline constexpr const char* kToolVersion = "layerlab 1.0.0";

/**
 * Parsed structured-text configuration: [section] headers with key = value
 * lines, '#' comments. Either a single run ([run] etc.) or a table selection
 * ([table]).
 */
struct ParsedConfig {
    std::optional<SimConfig> sim;
    std::optional<TableSpec> table;
};

ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin = "<memory>");

/// Serializes a SimConfig so that parsing the result reproduces it exactly.
std::string serialize_config(const SimConfig& cfg);

/// Fixed column order: method,refinement,incidence_deg,k,linf_error,status.
/// Locale-independent, scientific notation with 6 significant digits.
std::string reports_to_csv(const std::vector<ErrorReport>& reports);

/// CSV rows (direction_deg, v1, beta, label) for an amplification map.
std::string amplification_to_csv(const std::vector<struct DirectionLabel>& labels);

/// 8-bit binary PGM of |values| with a linear intensity map onto [0, 255];
/// returns the scale (value mapped to 255) used.
double write_pgm(const std::filesystem::path& path, const std::vector<double>& values,
                 int width, int height);

/**
 * Everything needed to reproduce a run: tool version, the command and its
 * arguments, the full config echo, seeds, per-cell runtimes and the output
 * file inventory. Serialized as JSON; written after all other outputs.
 */
struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    std::string config_echo;
    std::uint64_t seed{0};
    std::map<std::string, double> runtimes_s;
    std::map<std::string, double> sup_ratios;
    std::map<std::string, double> scalars;
    std::vector<std::string> files;

    void add_file(const std::string& name) { files.push_back(name); }
};

/// Writes the manifest (last) and returns the full inventory including it.
std::vector<std::string> write_manifest(const RunManifest& m,
                                        const std::filesystem::path& out_dir);

RunManifest read_manifest(const std::filesystem::path& path);

/// Writes a string to out_dir/name, creating directories as needed.
void write_text_file(const std::filesystem::path& out_dir, const std::string& name,
                     const std::string& content);

}  // namespace layerlab
