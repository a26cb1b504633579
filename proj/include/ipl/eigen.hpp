#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipl/lattice.hpp"
#include "ipl/matrix.hpp"

namespace ipl {

struct ConvergenceError : std::runtime_error {
    int index;
    explicit ConvergenceError(int idx)
        : std::runtime_error("eigensolver failed to converge at index " + std::to_string(idx)),
          index(idx) {}
};

// Eigenvalues ascending; vector i is stored contiguously and pairs with
// value i. Vectors are orthonormal, with the largest-magnitude component of
// each made positive.
struct EigenSolution {
    std::vector<double> values;
    std::vector<double> vectors; // column-contiguous, empty when not requested
    int n = 0;

    bool has_vectors() const { return !vectors.empty(); }
    std::span<const double> vector(int i) const {
        return {vectors.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n)};
    }
};

// Implicit-shift QL with optional eigenvector accumulation. 50 sweeps per
// eigenvalue before giving up.
EigenSolution eigh_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                               bool want_vectors = true);
EigenSolution eigh_tridiagonal(const Hamiltonian& h, bool want_vectors = true);

// Cyclic Jacobi oracle for dense symmetric matrices; refuses sizes > 512.
EigenSolution jacobi_dense(const Matrix& m);

} // namespace ipl
