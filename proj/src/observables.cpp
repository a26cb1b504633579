#include "ipl/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipl {

namespace {

void check_normalized(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    if (std::fabs(std::sqrt(s) - 1.0) > 1e-8)
        throw std::invalid_argument("expected a normalized vector");
}

// half-maximum crossing of the envelope, linear interpolation, zero padding
// beyond the ends
double half_crossing(const std::vector<double>& env, int inside, int outside, double half) {
    const int n = static_cast<int>(env.size());
    auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : env[i]; };
    const double yi = at(inside), yo = at(outside);
    return inside + (half - yi) / (yo - yi) * (outside - inside);
}

} // namespace

double ipr(std::span<const double> v) {
    check_normalized(v);
    double s = 0.0;
    for (double x : v) s += x * x * x * x;
    return s;
}

int boundary_sites(int n_sites) {
    return std::max(2, static_cast<int>(0.02 * n_sites));
}

double edge_weight(std::span<const double> v, int b_sites) {
    const int n = static_cast<int>(v.size());
    double w = 0.0;
    for (int i = 0; i < b_sites; ++i) w += v[i] * v[i] + v[n - 1 - i] * v[n - 1 - i];
    return w;
}

bool is_delocalized(double edge_w, int b_sites, int n_sites, double theta) {
    return edge_w >= theta * (2.0 * b_sites / n_sites);
}

StateProfile state_profile(std::span<const double> v) {
    check_normalized(v);
    const int n = static_cast<int>(v.size());
    StateProfile p;

    double c = 0.0;
    for (int i = 0; i < n; ++i) c += v[i] * v[i] * (i + 1);
    p.center = c;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = (i + 1) - c;
        var += v[i] * v[i] * d * d;
    }
    p.sigma_sites = std::sqrt(var);

    const int cells = n / 2;
    p.envelope.resize(cells);
    for (int m = 0; m < cells; ++m)
        p.envelope[m] = std::sqrt(v[2 * m] * v[2 * m] + v[2 * m + 1] * v[2 * m + 1]);
    if (n % 2 != 0) { // odd chains (sites_per_cell = 1): envelope is |psi| itself
        p.envelope.assign(v.begin(), v.end());
        for (auto& x : p.envelope) x = std::fabs(x);
    }

    const auto& env = p.envelope;
    const int ne = static_cast<int>(env.size());
    int imax = 0;
    for (int i = 1; i < ne; ++i)
        if (env[i] > env[imax]) imax = i;
    const double half = env[imax] / 2.0;
    int lo = imax;
    while (lo - 1 >= 0 && env[lo - 1] >= half) --lo;
    int hi = imax;
    while (hi + 1 < ne && env[hi + 1] >= half) ++hi;
    const double xlo = half_crossing(env, lo, lo - 1, half);
    const double xhi = half_crossing(env, hi, hi + 1, half);
    const double per_cell = (n % 2 == 0) ? 2.0 : 1.0;
    p.fwhm_sites = per_cell * (xhi - xlo);
    return p;
}

std::array<double, 3> central_moments(std::span<const double> v) {
    check_normalized(v);
    const int n = static_cast<int>(v.size());
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += v[i] * v[i] * (i + 1);
    std::array<double, 3> mu{};
    for (int i = 0; i < n; ++i) {
        const double p = v[i] * v[i];
        const double d = (i + 1) - c;
        mu[0] += p * d * d;
        mu[1] += p * d * d * d;
        mu[2] += p * d * d * d * d;
    }
    return mu;
}

int band_split_index(const std::vector<double>& vals) {
    const int n = static_cast<int>(vals.size());
    if (n < 3) return -1;
    std::vector<double> sp(n - 1);
    for (int i = 0; i + 1 < n; ++i) sp[i] = vals[i + 1] - vals[i];
    std::vector<double> sorted = sp;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    int best = -1;
    double best_gap = 0.0;
    for (int i = n / 3; i < 2 * n / 3; ++i) {
        if (sp[i] > best_gap) {
            best_gap = sp[i];
            best = i;
        }
    }
    if (best < 0 || best_gap <= 3.0 * median) return -1;
    return best + 1;
}

DosHistogram dos_histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw std::invalid_argument("dos_histogram: no values");
    if (bins < 1) throw std::invalid_argument("dos_histogram: bins must be >= 1");
    DosHistogram dos;
    const double lo = values.front(), hi = values.back();
    const double width = hi > lo ? (hi - lo) : 1.0;
    dos.edges.resize(bins + 1);
    dos.counts.assign(bins, 0);
    for (int b = 0; b <= bins; ++b) dos.edges[b] = lo + width * b / bins;
    for (double e : values) {
        int b = static_cast<int>((e - lo) / width * bins);
        b = std::clamp(b, 0, bins - 1);
        ++dos.counts[b];
    }
    return dos;
}

SpectralSummary spectral_summary(const EigenSolution& sol, int bins, double theta) {
    if (!sol.has_vectors())
        throw std::invalid_argument("spectral_summary: eigenvectors required");
    if (bins < 1) throw std::invalid_argument("spectral_summary: bins must be >= 1");
    const int n = sol.n;

    SpectralSummary s;
    s.states.resize(n);
    const int b_sites = boundary_sites(n);

    for (int i = 0; i < n; ++i) {
        auto v = sol.vector(i);
        auto& st = s.states[i];
        st.index = i;
        st.energy = sol.values[i];
        st.ipr = ipr(v);
        const StateProfile prof = state_profile(v);
        st.center = prof.center;
        st.width = prof.sigma_sites;
        st.fwhm_sites = prof.fwhm_sites;
        st.edge_weight = edge_weight(v, b_sites);
        st.localized = !is_delocalized(st.edge_weight, b_sites, n, theta);
        st.moments = central_moments(v);
    }

    const int split = band_split_index(sol.values);
    std::vector<std::pair<int, int>> ranges;
    if (split < 0) {
        ranges.emplace_back(0, n);
        s.band_gap = 0.0;
    } else {
        ranges.emplace_back(0, split);
        ranges.emplace_back(split, n);
        s.band_gap = sol.values[split] - sol.values[split - 1];
    }

    int deloc_count = 0;
    for (std::size_t b = 0; b < ranges.size(); ++b) {
        BandRange br;
        br.begin = ranges[b].first;
        br.end = ranges[b].second;
        int first_d = -1, last_d = -1;
        for (int i = br.begin; i < br.end; ++i) {
            s.states[i].band = static_cast<int>(b) + 1;
            if (!s.states[i].localized) {
                if (first_d < 0) first_d = i;
                last_d = i;
                ++deloc_count;
            }
        }
        for (int i = br.begin; i < br.end; ++i) {
            char dom = 'B';
            if (first_d < 0 || i < first_d)
                dom = 'A';
            else if (i > last_d)
                dom = 'C';
            s.states[i].domain = dom;
        }
        if (first_d > br.begin) {
            br.has_lower = true;
            br.fldc_lower = 0.5 * (sol.values[first_d - 1] + sol.values[first_d]);
        }
        if (last_d >= 0 && last_d + 1 < br.end) {
            br.has_upper = true;
            br.fldc_upper = 0.5 * (sol.values[last_d] + sol.values[last_d + 1]);
        }
        s.bands.push_back(br);

        std::vector<double> sp;
        for (int i = br.begin; i + 1 < br.end; ++i)
            sp.push_back(sol.values[i + 1] - sol.values[i]);
        s.spacings.push_back(std::move(sp));
    }
    s.fraction_delocalized = static_cast<double>(deloc_count) / n;
    s.dos = dos_histogram(sol.values, bins);
    return s;
}

SpectralSummary spectral_summary(const EigenSolution& sol, const LatticeSpec& spec, int bins,
                                 double theta) {
    if (sol.n != spec.n_sites())
        throw std::invalid_argument("spectral_summary: solution does not match spec");
    return spectral_summary(sol, bins, theta);
}

std::vector<std::vector<double>> eigenstate_map(const EigenSolution& sol, int band_begin,
                                                int band_end) {
    if (band_begin < 0 || band_end > sol.n || band_begin >= band_end)
        throw std::invalid_argument("eigenstate_map: invalid state range");
    std::vector<std::vector<double>> rows;
    rows.reserve(band_end - band_begin);
    for (int i = band_begin; i < band_end; ++i) {
        auto v = sol.vector(i);
        std::vector<double> row(v.size());
        double mx = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            row[k] = std::fabs(v[k]);
            mx = std::max(mx, row[k]);
        }
        if (mx > 0.0)
            for (auto& x : row) x /= mx;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ipl
