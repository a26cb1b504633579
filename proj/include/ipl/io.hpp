#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipl::io {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    std::filesystem::path path;
    IoError(std::filesystem::path p, const std::string& what)
        : std::runtime_error(what + ": " + p.string()), path(std::move(p)) {}
};

// 17 significant digits: lossless round-trip for binary64
std::string fmt(double x);

using Row = std::vector<std::string>;

// Atomic CSV write: temp file in the same directory, then rename.
void write_csv(const std::filesystem::path& file, const std::string& header,
               const std::vector<Row>& rows);
void write_text(const std::filesystem::path& file, const std::string& content);

// Exit statuses of the command-line tool.
enum ExitStatus : int {
    kOk = 0,
    kUsageError = 2,
    kNumericalFailure = 3,
    kIoFailure = 4,
};

struct RunConfig {
    std::string command;
    int n_cells = 2001;
    double lf = 1.0;
    double eps = 0.3;
    double d1 = 1.0;
    double d2 = 2.0;
    std::uint64_t seed = 1;
    int bins = 200;
    std::string out_dir = "out";
    std::vector<int> sizes;
    std::vector<double> points;
    int replicas = 1;
    std::vector<double> strength;
    std::string axis = "lf";
    std::string target = "mean_localized";
    std::string which = "fig1";
    int format_version = 1;

    bool operator==(const RunConfig&) const = default;
};

// Flat `key = value` lines, '#' comments. The same format serialize() emits.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& file);

// Command-line parsing; flags override config-file values. Throws UsageError
// with a message naming the offending key.
RunConfig parse_config(const std::vector<std::string>& args);

std::string serialize(const RunConfig& cfg);
RunConfig config_from_map(const std::string& command,
                          const std::map<std::string, std::string>& kv);

void write_manifest(const std::filesystem::path& out_dir, const RunConfig& cfg,
                    const std::map<std::string, std::string>& notes = {});

} // namespace ipl::io
