#pragma once

#include <stdexcept>
#include <vector>

#include "ipl/lattice.hpp"

namespace ipl {

struct NoMinimumError : std::runtime_error {
    NoMinimumError() : std::runtime_error("variational energy has no interior minimum") {}
};

// Gaussian trial state: cell envelope exp(-alpha (n - n0)^2) with the
// low-energy internal cell vector, beta = 8 alpha N^2 / pi^2.
struct AnsatzParams {
    double alpha = 0.0;
    double n0 = 0.0; // center cell, 1-based, may be fractional
    int n_cells = 0;
    double epsilon = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    double beta() const;
};

// Normalized trial vector of length 2N. Under this library's rotation
// convention the low-energy channel of the central cell is (1,1)/sqrt(2) and
// the positive inter-cell coupling forces the envelope sign to alternate
// from cell to cell; magnitudes match the Gaussian ansatz exactly.
std::vector<double> ansatz_state(const AnsatzParams& p);

// closed form:  (d1+d2)/2 + (d1-d2)/2 exp(-1/(4 beta)) - eps exp(-alpha/2)
double variational_energy(const AnsatzParams& p);

// discrete <Psi|H|Psi> without the continuum approximation
double exact_expectation(const AnsatzParams& p, const Hamiltonian& h);

struct MinimizeResult {
    double alpha0 = 0.0;
    double e_min = 0.0;
};

// golden-section search on log(alpha) over [1e-8, 1e2]; throws
// NoMinimumError when the energy is monotone over the bracket
MinimizeResult minimize_alpha(int n_cells, double epsilon, double d1, double d2,
                              double tol = 1e-6);

// n_mob = round(C N^2 / sigma^2) with sigma^2 = 1/(4 alpha0)
int fldc_edge_estimate(double alpha0, int n_cells, double c);

} // namespace ipl
