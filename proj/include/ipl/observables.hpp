#pragma once

#include <array>
#include <span>
#include <vector>

#include "ipl/eigen.hpp"
#include "ipl/lattice.hpp"

namespace ipl {

// Per-state quantities derived from one eigenvector. Site indices are
// 1-based, so center lies in [1, N_s]. Domain is 'A', 'B' or 'C' within the
// state's band, assigned from the localization pattern in energy order.
struct StateObservables {
    int index = 0;
    double energy = 0.0;
    double ipr = 0.0;
    double center = 0.0;
    double width = 0.0; // site-index standard deviation
    double fwhm_sites = 0.0;
    double edge_weight = 0.0;
    bool localized = false;
    int band = 1;
    char domain = 'A';
    std::array<double, 3> moments{}; // central moments of order 2, 3, 4
};

struct DosHistogram {
    std::vector<double> edges;  // bins+1 edges
    std::vector<int> counts;    // size bins
};

struct BandRange {
    int begin = 0; // state index range [begin, end)
    int end = 0;
    double fldc_lower = 0.0; // energy of the lower crossover, if present
    double fldc_upper = 0.0;
    bool has_lower = false;
    bool has_upper = false;
};

struct SpectralSummary {
    std::vector<StateObservables> states;
    std::vector<std::vector<double>> spacings; // per band
    DosHistogram dos;
    double band_gap = 0.0;
    double fraction_delocalized = 0.0;
    std::vector<BandRange> bands; // one or two
};

double ipr(std::span<const double> v);

// boundary window: max(2, floor(0.02 * N_s)) sites per side
int boundary_sites(int n_sites);

// probability mass on the outermost B sites of each side, summed
double edge_weight(std::span<const double> v, int b_sites);

// delocalized iff the boundary mass reaches theta times the uniform-state
// expectation 2B/N_s
bool is_delocalized(double edge_w, int b_sites, int n_sites, double theta = 1e-3);

struct StateProfile {
    double center = 0.0;      // probability centroid, 1-based site index
    double sigma_sites = 0.0;
    double fwhm_sites = 0.0;  // 2x the cell-envelope FWHM
    std::vector<double> envelope; // per-cell amplitude
};

StateProfile state_profile(std::span<const double> v);

// mu_k = sum_i |psi_i|^2 (i - center)^k for k = 2, 3, 4
std::array<double, 3> central_moments(std::span<const double> v);

// split at the largest gap within the middle third, provided it exceeds 3x
// the median spacing; returns the first index of the upper band, or -1
int band_split_index(const std::vector<double>& values);

DosHistogram dos_histogram(const std::vector<double>& values, int bins);

SpectralSummary spectral_summary(const EigenSolution& sol, const LatticeSpec& spec,
                                 int bins = 200, double theta = 1e-3);
// variant for lattices not described by a LatticeSpec (e.g. random binary)
SpectralSummary spectral_summary(const EigenSolution& sol, int bins = 200, double theta = 1e-3);

// |psi| magnitudes for the states in [band_begin, band_end), each row scaled
// to maximum 1, rows ordered by energy
std::vector<std::vector<double>> eigenstate_map(const EigenSolution& sol, int band_begin,
                                                int band_end);

} // namespace ipl
