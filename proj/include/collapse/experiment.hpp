#pragma once

#include "collapse/geometry.hpp"
#include "collapse/magnetic.hpp"
#include "collapse/ooguri_vafa.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace collapse {

// Flat "section.key = value" store parsed from INI-style text. Comments start
// with '#' or ';'. Keys outside any section belong to section "main".
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    // Sorted "key=value" lines; the basis of the config hash.
    std::string canonical() const;
    std::uint64_t hash() const;
    std::string hash_hex() const;

private:
    std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a64(const std::string& data);

struct ExperimentConfig {
    ModelKind kind = ModelKind::SemiFlatAbelian;
    ModelParams params;
    double beta = 0.3;
    int n_grid = 64;
    double half_width = 0.5;
    Vec2 center{0.0, 0.0};
    Boundary bc = Boundary::Periodic;
    int mode_radius = -1;
    int n_eigs = 8;
    Vec2 a{0.0, 0.0};
    double window_R = 1.0;
    double hhat = 0.0; // constant harmonic shift of the OV model

    std::vector<double> sweep_s;
    std::vector<int> sweep_k;
    std::vector<double> sweep_R;

    std::vector<double> potential_y; // |y| values for the potential table
    int potential_u3 = 16;

    int gh_samples = 200;
    int gh_nt = 16;
    int gh_nb = 24;
    double gh_y_fiber = 0.1;

    std::uint64_t seed = 1;
    std::vector<std::string> emit{"csv", "json"};
    std::string hash;

    static ExperimentConfig from(const ConfigFile& cfg);
    void validate() const;
    LocalModel model(double s, int k) const;
    OVParams ov(double s) const;
};

// Largest common sample radius for a GH sweep: R clipped so that three
// times it fits in the image of the OV chart for every s.
double gh_effective_radius(double R, const std::vector<double>& sweep_s, double delta0);

// Exit codes of the runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

const std::vector<std::string>& subcommands();

// Formats with 17 significant digits.
std::string fmt17(double v);

// Comma-separated table with '#' header comments and LF line endings.
class CsvTable {
public:
    CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void comment(const std::string& line) { comments_.push_back(line); }
    void row(const std::vector<std::string>& cells);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

struct Artifact {
    std::string name;
    std::string content;
    bool binary = false;
};

// Computes all artifacts of a subcommand without touching the filesystem.
std::vector<Artifact> run_subcommand(const std::string& sub, const ExperimentConfig& cfg);

// Full pipeline: load, validate, compute, write. Returns an exit code and
// writes diagnostics to err. Artifacts are written only on success.
int run_experiment(const std::string& sub, const std::string& config_path, const std::string& out_dir,
                   const std::string& seed_override, std::ostream& err);

} // namespace collapse
