#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ipl/lattice.hpp"
#include "ipl/observables.hpp"

namespace ipl {

enum class SweepAxis { Lf, Epsilon, NSites, DisorderP };

const char* axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

// Default grids for sweeps; the paper gives endpoints and trends only.
std::vector<double> default_points(SweepAxis axis);

struct BaseConfig {
    int n_cells = 151;
    double lf = 1.0;
    double epsilon = 0.3;
    double d1 = 1.0;
    double d2 = 2.0;
    double disorder_p = 0.0;
    double theta = 1e-3;
    int bins = 200;
};

LatticeSpec make_spec(const BaseConfig& base, std::uint64_t disorder_seed = 0);

struct SweepSpec {
    SweepAxis axis = SweepAxis::Lf;
    std::vector<double> points;
    BaseConfig base;
    std::uint64_t seed = 1;
    int replicas = 1;
};

struct SweepRow {
    double point = 0.0;
    int replica = 0;
    double fraction_delocalized = 0.0;
    double band_gap = 0.0;
    double mean_ipr_a = 0.0;
    double mean_ipr_b = 0.0;
    double mean_ipr_c = 0.0;
    double fldc_lower = 0.0; // band-1 crossover energies; NaN when absent
    double fldc_upper = 0.0;
    bool ok = true;
    std::string error;
};

// One row per (point, replica), ordered by (point index, replica index),
// deterministic under a fixed master seed. Per-row failures are recorded,
// not thrown.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points; // (N_s, value)
};

struct InsufficientDataError : std::runtime_error {
    InsufficientDataError() : std::runtime_error("scaling fit needs at least 3 valid points") {}
};

enum class ScalingTarget { BandCenter, BandEdge, MeanLocalized, MeanDelocalized };

ScalingTarget target_from_name(const std::string& name);

// Least squares on (log N_s, log value).
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);

// Grows the lattice at fixed L and epsilon and fits the chosen IPR statistic.
ScalingFit size_scaling(const BaseConfig& base, const std::vector<int>& sizes,
                        ScalingTarget target);

struct DisorderStats {
    double strength = 0.0;
    double mean_fraction = 0.0;
    double std_fraction = 0.0;
};

std::vector<DisorderStats> disorder_robustness(const BaseConfig& base,
                                               const std::vector<double>& strengths, int replicas,
                                               std::uint64_t seed);

// Emits the CSV bundle for one of the paper-style figures into out_dir.
void reproduce_figure(const std::string& which, const std::filesystem::path& out_dir,
                      std::uint64_t seed);

// CSV emission shared by the CLI and the figure bundles. Formats are pinned:
// 17-significant-digit floats, fixed headers.
void write_eigenvalues_csv(const std::filesystem::path& file, const std::vector<double>& values,
                           int band_split);
void write_spacing_csv(const std::filesystem::path& file, const std::vector<double>& values,
                       int band_split);
void write_dos_csv(const std::filesystem::path& file, const DosHistogram& dos);
void write_states_csv(const std::filesystem::path& file, const SpectralSummary& summary);
void write_map_csv(const std::filesystem::path& file,
                   const std::vector<std::vector<double>>& rows, int first_state_index);
void write_sweep_csv(const std::filesystem::path& file, SweepAxis axis,
                     const std::vector<SweepRow>& rows);

} // namespace ipl
