#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ipl/eigen.hpp"
#include "ipl/lattice.hpp"
#include "ipl/rng.hpp"
#include "ipl/variational.hpp"

using namespace ipl;

namespace {

AnsatzParams baseline(double alpha) {
    AnsatzParams p;
    p.alpha = alpha;
    p.n_cells = 151;
    p.n0 = 76.0;
    p.epsilon = 0.3;
    p.d1 = 1.0;
    p.d2 = 2.0;
    return p;
}

Hamiltonian baseline_h() {
    LatticeSpec spec{build_phase_grid(151, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.3, std::nullopt};
    return assemble(spec);
}

} // namespace

TEST_CASE("beta definition") {
    const auto p = baseline(0.01);
    CHECK(p.beta() == doctest::Approx(8.0 * 0.01 * 151.0 * 151.0 /
                                      (std::numbers::pi * std::numbers::pi))
                          .epsilon(1e-15));
}

TEST_CASE("closed-form energy rederivation") {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        AnsatzParams p;
        p.alpha = std::exp(rng.uniform(std::log(1e-6), std::log(1.0)));
        p.n_cells = 10 + static_cast<int>(rng.uniform(0.0, 500.0));
        p.n0 = 0.5 * (p.n_cells + 1);
        p.epsilon = rng.uniform(0.0, 0.5);
        p.d1 = rng.uniform(-1.0, 1.0);
        p.d2 = p.d1 + rng.uniform(0.5, 2.0);

        const double beta = 8.0 * p.alpha * p.n_cells * p.n_cells /
                            (std::numbers::pi * std::numbers::pi);
        const double expected = 0.5 * (p.d1 + p.d2) +
                                0.5 * (p.d1 - p.d2) * std::exp(-1.0 / (4.0 * beta)) -
                                p.epsilon * std::exp(-p.alpha / 2.0);
        CHECK(variational_energy(p) == expected);
    }
}

TEST_CASE("ansatz state structure") {
    const auto p = baseline(0.0067);
    const auto v = ansatz_state(p);
    REQUIRE(static_cast<int>(v.size()) == 302);

    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-13));

    // both intra-cell components equal, envelope sign alternating cell to cell
    for (int m = 0; m < 151; ++m) {
        CHECK(v[2 * m] == v[2 * m + 1]);
        if (m > 0) CHECK(v[2 * m] * v[2 * (m - 1)] < 0.0);
    }

    CHECK_THROWS_AS(ansatz_state(baseline(0.0)), std::invalid_argument);
}

TEST_CASE("ansatz overlaps the exact ground state") {
    const auto h = baseline_h();
    const auto sol = eigh_tridiagonal(h);
    const auto v = ansatz_state(baseline(0.0067193890818260113));
    auto g = sol.vector(0);
    double dot = 0.0;
    for (int i = 0; i < 302; ++i) dot += v[i] * g[i];
    CHECK(std::fabs(dot) > 0.99);
}

TEST_CASE("variational bound and discrete expectation") {
    const auto h = baseline_h();
    const auto sol = eigh_tridiagonal(h, false);
    const double e0 = sol.values.front();

    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const auto p = baseline(std::exp(rng.uniform(std::log(1e-5), std::log(1.0))));
        const double e = exact_expectation(p, h);
        CHECK(e >= e0 - 1e-12); // Rayleigh quotient never undercuts the ground energy
    }

    // the closed form tracks the discrete expectation near the optimum
    const auto popt = baseline(0.0067193890818260113);
    CHECK(variational_energy(popt) ==
          doctest::Approx(exact_expectation(popt, h)).epsilon(5e-4));

    Hamiltonian small = h;
    small.diag.resize(10);
    small.offdiag.resize(9);
    CHECK_THROWS_AS(exact_expectation(popt, small), std::invalid_argument);
}

TEST_CASE("minimization at the localized-regime baseline") {
    const auto res = minimize_alpha(151, 0.3, 1.0, 2.0);
    // frozen references from an independent golden-section run
    CHECK(res.alpha0 == doctest::Approx(0.0067193890818260113).epsilon(1e-6));
    CHECK(res.e_min == doctest::Approx(0.70201175635971902).epsilon(1e-10));

    // within a tenth of a percent of the exact ground energy
    const auto sol = eigh_tridiagonal(baseline_h(), false);
    CHECK(std::fabs(res.e_min - sol.values.front()) / std::fabs(sol.values.front()) < 1e-3);
}

TEST_CASE("monotone energy has no interior minimum") {
    CHECK_THROWS_AS(minimize_alpha(151, 0.0, 1.0, 2.0), NoMinimumError);
}

TEST_CASE("fldc edge mobility estimate") {
    // n_mob = round(C N^2 / sigma^2), sigma^2 = 1 / (4 alpha0)
    CHECK(fldc_edge_estimate(0.01, 100, 1.0) == 400);
    CHECK(fldc_edge_estimate(0.0067193890818260113, 151, 0.5) ==
          static_cast<int>(std::lround(0.5 * 151.0 * 151.0 * 4.0 * 0.0067193890818260113)));
}
