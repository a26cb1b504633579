#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ipl/matrix.hpp"

namespace ipl {

// Shared eigenvalue set d_1 < d_2 < ... < d_K of every cell.
struct DiagonalSpectrum {
    std::vector<double> values;

    explicit DiagonalSpectrum(std::vector<double> vals);
    int size() const { return static_cast<int>(values.size()); }
};

// Per-cell rotation angles. Grid-generated patterns keep lf/range around for
// reporting; explicit patterns carry the angles only.
struct PhasePattern {
    std::vector<double> phases;
    double lf = 0.0;    // phase-range scale factor (grid patterns)
    double range = 0.0; // covered range L in radians
    bool grid = false;

    int n_cells() const { return static_cast<int>(phases.size()); }

    // exact per-cell phase increment L/(N-1)
    double delta_phi() const;
    // the pi/(4 N L_f) form used in the discussion of the phase gradient;
    // coincides with delta_phi() for large N
    double gradient_n_form() const;

    static PhasePattern explicit_list(std::vector<double> phases);
};

PhasePattern build_phase_grid(int n_cells, double lf);

// Multiplicative perturbations of the inter-cell couplings and of the cell
// eigenvalues, all drawn uniformly from [1-p, 1+p].
struct DisorderRealization {
    std::vector<double> coupling_factors; // N-1
    std::vector<double> diagonal_factors; // N*K, cell-major
    double strength = 0.0;
    std::uint64_t seed = 0;
};

DisorderRealization make_disorder(std::uint64_t seed, double strength, int n_cells, int k);

struct LatticeSpec {
    PhasePattern pattern;
    DiagonalSpectrum spectrum;
    double epsilon = 0.0;
    std::optional<DisorderRealization> disorder;

    int n_sites() const { return pattern.n_cells() * spectrum.size(); }
};

// Real symmetric tridiagonal H. For K=2 the off-diagonal alternates the
// intra-cell element A12(phi_m) and the inter-cell coupling epsilon.
struct Hamiltonian {
    std::vector<double> diag;
    std::vector<double> offdiag; // size n-1
    int n_cells = 0;
    int sites_per_cell = 0;

    int size() const { return static_cast<int>(diag.size()); }
    double trace() const;
    double frobenius_norm() const;
};

// 2x2 cell O_phi D O_phi^T with O_phi = [[cos,-sin],[sin,cos]]:
//   A11 = d1 cos^2 + d2 sin^2,  A12 = (d1-d2) sin cos,  A22 = d1 sin^2 + d2 cos^2
struct Cell2 {
    double a11, a12, a22;
};

Cell2 build_cell(double phi, const DiagonalSpectrum& spectrum);

// K x K cell O D O^T, O the product of Givens rotations over index pairs
// (i,j), i<j, in lexicographic order, each new rotation multiplied from the
// left. Requires K(K-1)/2 angles.
Matrix build_cell_general(std::span<const double> angles, const DiagonalSpectrum& spectrum);

Hamiltonian assemble(const LatticeSpec& spec);

// Tridiagonal comparison lattice: on-site values drawn as d1 or d2 with
// probability 1/2 each, constant coupling.
Hamiltonian build_random_binary_lattice(std::uint64_t seed, int n_sites, double epsilon,
                                        double d1, double d2);

} // namespace ipl
