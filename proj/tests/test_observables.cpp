#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ipl/eigen.hpp"
#include "ipl/lattice.hpp"
#include "ipl/observables.hpp"

using namespace ipl;

namespace {

EigenSolution baseline_solution() {
    LatticeSpec spec{build_phase_grid(151, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.3, std::nullopt};
    return eigh_tridiagonal(assemble(spec));
}

} // namespace

TEST_CASE("ipr limits") {
    std::vector<double> single(10, 0.0);
    single[3] = 1.0;
    CHECK(ipr(single) == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> uniform(10, 1.0 / std::sqrt(10.0));
    CHECK(ipr(uniform) == doctest::Approx(0.1).epsilon(1e-13));

    std::vector<double> bad(10, 0.5);
    CHECK_THROWS_AS(ipr(bad), std::invalid_argument);
}

TEST_CASE("boundary window and edge weight") {
    CHECK(boundary_sites(302) == 6);
    CHECK(boundary_sites(1002) == 20);
    CHECK(boundary_sites(50) == 2);
    CHECK(boundary_sites(4) == 2);

    std::vector<double> uniform(100, 0.1);
    CHECK(edge_weight(uniform, 2) == doctest::Approx(4.0 * 0.01).epsilon(1e-13));
    // a uniform state is delocalized for any sane threshold
    CHECK(is_delocalized(edge_weight(uniform, 2), 2, 100, 1e-3));
    CHECK(is_delocalized(edge_weight(uniform, 2), 2, 100, 1.0));
    // a bulk-centered state is not
    std::vector<double> bulk(100, 0.0);
    bulk[50] = 1.0;
    CHECK(!is_delocalized(edge_weight(bulk, 2), 2, 100, 1e-3));
}

TEST_CASE("profile of a synthetic gaussian") {
    // gaussian cell envelope, flat internal vector, 101 cells
    const int cells = 101;
    const double sigma_cells = 8.0;
    std::vector<double> v(2 * cells);
    double norm2 = 0.0;
    for (int m = 0; m < cells; ++m) {
        const double g = std::exp(-0.5 * (m - 50.0) * (m - 50.0) / (sigma_cells * sigma_cells));
        v[2 * m] = v[2 * m + 1] = g;
        norm2 += 2.0 * g * g;
    }
    for (auto& x : v) x /= std::sqrt(norm2);

    const auto p = state_profile(v);
    CHECK(p.center == doctest::Approx(101.5).epsilon(1e-6)); // between sites 101 and 102 1-based
    // probability weights carry sigma_cells / sqrt(2); two sites per cell
    // double it and the intra-cell spread adds 1/4 to the variance
    CHECK(p.sigma_sites ==
          doctest::Approx(std::sqrt(2.0 * sigma_cells * sigma_cells + 0.25)).epsilon(0.02));
    // gaussian fwhm = 2 sqrt(2 ln 2) sigma, in site units
    CHECK(p.fwhm_sites ==
          doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0)) * 2.0 * sigma_cells).epsilon(0.02));
    CHECK(static_cast<int>(p.envelope.size()) == cells);

    const auto mu = central_moments(v);
    CHECK(mu[0] == doctest::Approx(p.sigma_sites * p.sigma_sites).epsilon(1e-12));
    CHECK(std::fabs(mu[1]) < 1e-6); // symmetric state
    CHECK(mu[2] > 0.0);
}

TEST_CASE("band split detection") {
    std::vector<double> two_bands;
    for (int i = 0; i < 50; ++i) two_bands.push_back(0.01 * i);
    for (int i = 0; i < 50; ++i) two_bands.push_back(2.0 + 0.01 * i);
    CHECK(band_split_index(two_bands) == 50);

    std::vector<double> one_band;
    for (int i = 0; i < 100; ++i) one_band.push_back(0.01 * i);
    CHECK(band_split_index(one_band) == -1);
}

TEST_CASE("dos histogram") {
    std::vector<double> vals;
    for (int i = 0; i < 1000; ++i) vals.push_back(i * 0.001);
    const auto dos = dos_histogram(vals, 10);
    CHECK(static_cast<int>(dos.counts.size()) == 10);
    CHECK(std::accumulate(dos.counts.begin(), dos.counts.end(), 0) == 1000);
    CHECK(dos.edges.front() == doctest::Approx(0.0));
    CHECK(dos.edges.back() == doctest::Approx(0.999));
    CHECK_THROWS_AS(dos_histogram({}, 10), std::invalid_argument);
}

TEST_CASE("baseline spectral summary") {
    const auto sol = baseline_solution();
    LatticeSpec spec{build_phase_grid(151, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.3, std::nullopt};
    const auto s = spectral_summary(sol, spec);

    REQUIRE(static_cast<int>(s.bands.size()) == 2);
    CHECK(s.bands[0].end - s.bands[0].begin == 151);
    CHECK(s.bands[1].end - s.bands[1].begin == 151);
    CHECK(s.band_gap > 0.0);

    // frozen references from an independent dense diagonalization
    CHECK(s.states[0].energy == doctest::Approx(0.70196075557444426).epsilon(1e-12));
    CHECK(s.states[0].ipr == doctest::Approx(0.020420852364993983).epsilon(1e-10));
    CHECK(s.states[0].fwhm_sites == doctest::Approx(46.04541615215021).epsilon(1e-9));
    CHECK(s.states[0].center == doctest::Approx(151.5).epsilon(1e-9));
    CHECK(s.fraction_delocalized == doctest::Approx(0.72185430463576161).epsilon(1e-12));

    // domains are contiguous A..B..C in energy order within each band
    for (const auto& br : s.bands) {
        int seen = 0; // 0 = A, 1 = B, 2 = C
        for (int i = br.begin; i < br.end; ++i) {
            const char d = s.states[i].domain;
            const int stage = d == 'A' ? 0 : d == 'B' ? 1 : 2;
            CHECK(stage >= seen);
            seen = std::max(seen, stage);
            if (d == 'B')
                CHECK(!s.states[i].localized);
            else
                CHECK(s.states[i].localized);
        }
    }

    // FLDC edges are band-interior midpoint energies
    REQUIRE(s.bands[0].has_lower);
    REQUIRE(s.bands[0].has_upper);
    CHECK(s.bands[0].fldc_lower > s.states[s.bands[0].begin].energy);
    CHECK(s.bands[0].fldc_upper < s.states[s.bands[0].end - 1].energy);

    // spacings per band
    CHECK(static_cast<int>(s.spacings[0].size()) == 150);
    for (double sp : s.spacings[0]) CHECK(sp >= 0.0);

    CHECK(std::accumulate(s.dos.counts.begin(), s.dos.counts.end(), 0) == 302);
}

TEST_CASE("eigenstate map normalization") {
    const auto sol = baseline_solution();
    const auto rows = eigenstate_map(sol, 0, 10);
    REQUIRE(static_cast<int>(rows.size()) == 10);
    for (const auto& r : rows) {
        double mx = 0.0;
        for (double x : r) {
            CHECK(x >= 0.0);
            mx = std::max(mx, x);
        }
        CHECK(mx == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(eigenstate_map(sol, 5, 5), std::invalid_argument);
}

TEST_CASE("theta extremes keep the structural classification") {
    const auto sol = baseline_solution();
    LatticeSpec spec{build_phase_grid(151, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.3, std::nullopt};
    for (double theta : {1e-4, 1e-3, 1e-2}) {
        const auto s = spectral_summary(sol, spec, 200, theta);
        for (const auto& br : s.bands) {
            bool has_b = false;
            int seen = 0;
            for (int i = br.begin; i < br.end; ++i) {
                const char d = s.states[i].domain;
                const int stage = d == 'A' ? 0 : d == 'B' ? 1 : 2;
                CHECK(stage >= seen);
                seen = std::max(seen, stage);
                if (d == 'B') has_b = true;
            }
            CHECK(has_b);
        }
    }
}

TEST_CASE("ipr direct arithmetic") {
    const std::vector<double> v{1.0 / std::sqrt(2.0), 0.5, 0.5};
    CHECK(ipr(v) == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("moments of delta and uniform states") {
    std::vector<double> delta(21, 0.0);
    delta[10] = 1.0;
    const auto md = central_moments(delta);
    CHECK(md[0] == 0.0);
    CHECK(md[1] == 0.0);
    CHECK(md[2] == 0.0);

    const int n = 100;
    std::vector<double> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const auto mu = central_moments(uniform);
    CHECK(mu[0] == doctest::Approx((n * n - 1.0) / 12.0).epsilon(1e-12));
    CHECK(std::fabs(mu[1]) < 1e-8);
}

TEST_CASE("profile of delta and discrete gaussian states") {
    std::vector<double> delta(40, 0.0);
    delta[17] = 1.0; // site 18, 1-based
    const auto pd = state_profile(delta);
    CHECK(pd.center == doctest::Approx(18.0).epsilon(1e-14));
    CHECK(pd.fwhm_sites <= 2.0);

    // per-cell amplitude exp(-alpha (n - n0)^2): fwhm = 2 sqrt(ln 2 / alpha)
    // cells = 41 sites at this width
    const double alpha = 6.7e-3;
    const int cells = 151;
    std::vector<double> v(2 * cells);
    double norm2 = 0.0;
    for (int n2 = 1; n2 <= cells; ++n2) {
        const double g = std::exp(-alpha * (n2 - 76.0) * (n2 - 76.0));
        v[2 * (n2 - 1)] = v[2 * (n2 - 1) + 1] = g / std::sqrt(2.0);
        norm2 += g * g;
    }
    for (auto& x : v) x /= std::sqrt(norm2);
    const auto pg = state_profile(v);
    CHECK(pg.fwhm_sites == doctest::Approx(2.0 * 2.0 * std::sqrt(std::log(2.0) / alpha))
                               .epsilon(0.01));
    CHECK(pg.fwhm_sites == doctest::Approx(41.0).epsilon(0.02));
}

TEST_CASE("decoupled cells give two flat bands") {
    LatticeSpec spec{build_phase_grid(100, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.0, std::nullopt};
    const auto sol = eigh_tridiagonal(assemble(spec));
    const auto s = spectral_summary(sol, spec);
    REQUIRE(static_cast<int>(s.bands.size()) == 2);
    CHECK(s.bands[0].end - s.bands[0].begin == 100);
    CHECK(s.bands[1].end - s.bands[1].begin == 100);
    CHECK(s.band_gap == doctest::Approx(1.0).epsilon(1e-12));

    // every eigenstate lives on exactly one cell
    const auto rows = eigenstate_map(sol, 0, 200);
    for (const auto& r : rows) {
        int populated_cells = 0;
        for (int m = 0; m < 100; ++m)
            if (r[2 * m] > 1e-8 || r[2 * m + 1] > 1e-8) ++populated_cells;
        CHECK(populated_cells == 1);
    }
}

TEST_CASE("spacings reconstruct the spectrum by prefix sums") {
    LatticeSpec spec{build_phase_grid(40, 1.0), DiagonalSpectrum({1.0, 2.0}), 0.3, std::nullopt};
    const auto sol = eigh_tridiagonal(assemble(spec));
    const auto s = spectral_summary(sol, spec);
    for (std::size_t b = 0; b < s.bands.size(); ++b) {
        double e = s.states[s.bands[b].begin].energy;
        for (std::size_t k = 0; k < s.spacings[b].size(); ++k) {
            e += s.spacings[b][k];
            CHECK(e == doctest::Approx(s.states[s.bands[b].begin + 1 + k].energy)
                           .epsilon(1e-12));
        }
    }
}
