#include "ipl/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ipl/rng.hpp"

namespace ipl {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
}

DiagonalSpectrum::DiagonalSpectrum(std::vector<double> vals) : values(std::move(vals)) {
    if (values.size() < 2)
        throw std::invalid_argument("DiagonalSpectrum: need K >= 2 eigenvalues");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("DiagonalSpectrum: non-finite entry");
        if (i > 0 && !(values[i - 1] < values[i]))
            throw std::invalid_argument("DiagonalSpectrum: entries must be strictly increasing");
    }
}

double PhasePattern::delta_phi() const {
    return n_cells() > 1 ? range / (n_cells() - 1) : 0.0;
}

double PhasePattern::gradient_n_form() const {
    return lf > 0.0 ? kQuarterPi / (n_cells() * lf) : 0.0;
}

PhasePattern PhasePattern::explicit_list(std::vector<double> phases) {
    PhasePattern p;
    p.phases = std::move(phases);
    return p;
}

PhasePattern build_phase_grid(int n_cells, double lf) {
    if (n_cells < 2)
        throw std::invalid_argument("build_phase_grid: n_cells must be >= 2");
    if (!(lf > 0.0))
        throw std::invalid_argument("build_phase_grid: L_f must be > 0");
    PhasePattern p;
    p.grid = true;
    p.lf = lf;
    p.range = kQuarterPi / lf;
    p.phases.resize(n_cells);
    const double lo = kQuarterPi - p.range / 2.0;
    for (int m = 0; m < n_cells; ++m)
        p.phases[m] = lo + static_cast<double>(m) * p.range / (n_cells - 1);
    return p;
}

DisorderRealization make_disorder(std::uint64_t seed, double strength, int n_cells, int k) {
    if (!(strength >= 0.0 && strength < 1.0))
        throw std::invalid_argument("make_disorder: strength must be in [0, 1)");
    DisorderRealization d;
    d.strength = strength;
    d.seed = seed;
    Rng rng(seed);
    d.coupling_factors.resize(n_cells > 0 ? n_cells - 1 : 0);
    for (auto& f : d.coupling_factors) f = 1.0 + strength * (2.0 * rng.uniform() - 1.0);
    d.diagonal_factors.resize(static_cast<std::size_t>(n_cells) * k);
    for (auto& f : d.diagonal_factors) f = 1.0 + strength * (2.0 * rng.uniform() - 1.0);
    if (strength == 0.0) {
        // p = 0 must reproduce the clean lattice bit-for-bit
        for (auto& f : d.coupling_factors) f = 1.0;
        for (auto& f : d.diagonal_factors) f = 1.0;
    }
    return d;
}

Cell2 build_cell(double phi, const DiagonalSpectrum& spectrum) {
    if (!std::isfinite(phi))
        throw std::invalid_argument("build_cell: phi must be finite");
    if (spectrum.size() != 2)
        throw std::invalid_argument("build_cell: requires a K=2 spectrum");
    const double d1 = spectrum.values[0], d2 = spectrum.values[1];
    const double c = std::cos(phi), s = std::sin(phi);
    return {d1 * c * c + d2 * s * s, (d1 - d2) * s * c, d1 * s * s + d2 * c * c};
}

Matrix build_cell_general(std::span<const double> angles, const DiagonalSpectrum& spectrum) {
    const int k = spectrum.size();
    const std::size_t expected = static_cast<std::size_t>(k) * (k - 1) / 2;
    if (angles.size() != expected)
        throw std::invalid_argument("build_cell_general: expected " + std::to_string(expected) +
                                    " angles for K=" + std::to_string(k));
    Matrix o = Matrix::identity(k);
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double c = std::cos(angles[idx]), s = std::sin(angles[idx]);
            ++idx;
            // o <- G(i,j,theta) * o, G has c on (i,i),(j,j), -s on (i,j), s on (j,i)
            for (int col = 0; col < k; ++col) {
                const double oi = o(i, col), oj = o(j, col);
                o(i, col) = c * oi - s * oj;
                o(j, col) = s * oi + c * oj;
            }
        }
    }
    Matrix a(k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            double sum = 0.0;
            for (int l = 0; l < k; ++l) sum += o(i, l) * spectrum.values[l] * o(j, l);
            a(i, j) = sum;
            a(j, i) = sum;
        }
    return a;
}

Hamiltonian assemble(const LatticeSpec& spec) {
    if (spec.spectrum.size() != 2)
        throw std::invalid_argument("assemble: tridiagonal assembly requires K=2 cells");
    if (!(spec.epsilon >= 0.0))
        throw std::invalid_argument("assemble: epsilon must be >= 0");
    const int n = spec.pattern.n_cells();
    if (n < 1) throw std::invalid_argument("assemble: empty phase pattern");
    const DisorderRealization* dis = spec.disorder ? &*spec.disorder : nullptr;
    if (dis) {
        if (static_cast<int>(dis->coupling_factors.size()) != n - 1 ||
            static_cast<int>(dis->diagonal_factors.size()) != 2 * n)
            throw std::invalid_argument("assemble: disorder realization size mismatch");
    }

    Hamiltonian h;
    h.n_cells = n;
    h.sites_per_cell = 2;
    h.diag.resize(2 * n);
    h.offdiag.resize(2 * n - 1);
    for (int m = 0; m < n; ++m) {
        double d1 = spec.spectrum.values[0], d2 = spec.spectrum.values[1];
        if (dis) {
            d1 *= dis->diagonal_factors[2 * m];
            d2 *= dis->diagonal_factors[2 * m + 1];
        }
        const double c = std::cos(spec.pattern.phases[m]), s = std::sin(spec.pattern.phases[m]);
        h.diag[2 * m] = d1 * c * c + d2 * s * s;
        h.diag[2 * m + 1] = d1 * s * s + d2 * c * c;
        h.offdiag[2 * m] = (d1 - d2) * s * c;
        if (m + 1 < n)
            h.offdiag[2 * m + 1] = spec.epsilon * (dis ? dis->coupling_factors[m] : 1.0);
    }
    return h;
}

Hamiltonian build_random_binary_lattice(std::uint64_t seed, int n_sites, double epsilon,
                                        double d1, double d2) {
    if (n_sites < 2)
        throw std::invalid_argument("build_random_binary_lattice: n_sites must be >= 2");
    Hamiltonian h;
    h.n_cells = n_sites;
    h.sites_per_cell = 1;
    h.diag.resize(n_sites);
    h.offdiag.assign(n_sites - 1, epsilon);
    Rng rng(seed);
    for (auto& d : h.diag) d = rng.uniform() < 0.5 ? d1 : d2;
    return h;
}

double Hamiltonian::trace() const {
    double t = 0.0;
    for (double d : diag) t += d;
    return t;
}

double Hamiltonian::frobenius_norm() const {
    double s = 0.0;
    for (double d : diag) s += d * d;
    for (double e : offdiag) s += 2.0 * e * e;
    return std::sqrt(s);
}

} // namespace ipl
