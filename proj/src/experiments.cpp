#include "ipl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ipl/eigen.hpp"
#include "ipl/io.hpp"
#include "ipl/rng.hpp"

namespace ipl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double mean_or_nan(const std::vector<double>& xs) {
    if (xs.empty()) return kNan;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

} // namespace

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Lf: return "lf";
        case SweepAxis::Epsilon: return "eps";
        case SweepAxis::NSites: return "nsites";
        case SweepAxis::DisorderP: return "p";
    }
    throw std::invalid_argument("unknown sweep axis");
}

SweepAxis axis_from_name(const std::string& name) {
    if (name == "lf") return SweepAxis::Lf;
    if (name == "eps") return SweepAxis::Epsilon;
    if (name == "nsites") return SweepAxis::NSites;
    if (name == "p") return SweepAxis::DisorderP;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

std::vector<double> default_points(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Lf: return {0.8, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0};
        case SweepAxis::Epsilon: return {0.1, 0.2, 0.3, 0.4, 0.5};
        case SweepAxis::NSites: return {302.0, 1002.0, 3002.0};
        case SweepAxis::DisorderP: return {0.0, 0.02, 0.05, 0.1, 0.15, 0.2};
    }
    throw std::invalid_argument("unknown sweep axis");
}

LatticeSpec make_spec(const BaseConfig& base, std::uint64_t disorder_seed) {
    LatticeSpec spec{build_phase_grid(base.n_cells, base.lf),
                     DiagonalSpectrum({base.d1, base.d2}), base.epsilon, std::nullopt};
    if (base.disorder_p > 0.0)
        spec.disorder = make_disorder(disorder_seed, base.disorder_p, base.n_cells, 2);
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.points.empty()) throw std::invalid_argument("run_sweep: empty point list");
    if (!std::is_sorted(spec.points.begin(), spec.points.end()))
        throw std::invalid_argument("run_sweep: points must be sorted");
    if (spec.replicas < 1) throw std::invalid_argument("run_sweep: replicas must be >= 1");

    std::vector<SweepRow> rows;
    rows.reserve(spec.points.size() * spec.replicas);
    const auto axis_id = static_cast<std::uint64_t>(spec.axis);

    for (std::size_t pi = 0; pi < spec.points.size(); ++pi) {
        const double pt = spec.points[pi];
        for (int r = 0; r < spec.replicas; ++r) {
            SweepRow row;
            row.point = pt;
            row.replica = r;
            row.band_gap = row.fraction_delocalized = kNan;
            row.mean_ipr_a = row.mean_ipr_b = row.mean_ipr_c = kNan;
            row.fldc_lower = row.fldc_upper = kNan;
            try {
                BaseConfig b = spec.base;
                switch (spec.axis) {
                    case SweepAxis::Lf: b.lf = pt; break;
                    case SweepAxis::Epsilon: b.epsilon = pt; break;
                    case SweepAxis::NSites:
                        b.n_cells = static_cast<int>(std::llround(pt)) / 2;
                        break;
                    case SweepAxis::DisorderP: b.disorder_p = pt; break;
                }
                const std::uint64_t s = derive_stream(spec.seed, axis_id, pi,
                                                      static_cast<std::uint64_t>(r));
                const LatticeSpec lat = make_spec(b, s);
                const EigenSolution sol = eigh_tridiagonal(assemble(lat), true);
                const SpectralSummary sum = spectral_summary(sol, lat, b.bins, b.theta);

                row.fraction_delocalized = sum.fraction_delocalized;
                row.band_gap = sum.band_gap;
                std::vector<double> a, bb, c;
                for (const auto& st : sum.states) {
                    if (st.domain == 'A') a.push_back(st.ipr);
                    else if (st.domain == 'B') bb.push_back(st.ipr);
                    else c.push_back(st.ipr);
                }
                row.mean_ipr_a = mean_or_nan(a);
                row.mean_ipr_b = mean_or_nan(bb);
                row.mean_ipr_c = mean_or_nan(c);
                if (!sum.bands.empty()) {
                    if (sum.bands[0].has_lower) row.fldc_lower = sum.bands[0].fldc_lower;
                    if (sum.bands[0].has_upper) row.fldc_upper = sum.bands[0].fldc_upper;
                }
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

ScalingTarget target_from_name(const std::string& name) {
    if (name == "band_center") return ScalingTarget::BandCenter;
    if (name == "band_edge") return ScalingTarget::BandEdge;
    if (name == "mean_localized") return ScalingTarget::MeanLocalized;
    if (name == "mean_delocalized") return ScalingTarget::MeanDelocalized;
    throw std::invalid_argument("unknown scaling target: " + name);
}

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [x, y] : points)
        if (x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y))
            logs.emplace_back(std::log(x), std::log(y));
    if (logs.size() < 3) throw InsufficientDataError();

    const double n = static_cast<double>(logs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ScalingFit fit;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.exponent * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& [x, y] : logs) {
        const double e = y - (fit.intercept + fit.exponent * x);
        ss_res += e * e;
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.points = points;
    return fit;
}

ScalingFit size_scaling(const BaseConfig& base, const std::vector<int>& sizes,
                        ScalingTarget target) {
    std::vector<std::pair<double, double>> pts;
    for (int n_sites : sizes) {
        try {
            BaseConfig b = base;
            b.n_cells = n_sites / 2;
            const LatticeSpec lat = make_spec(b);
            const EigenSolution sol = eigh_tridiagonal(assemble(lat), true);
            const SpectralSummary sum = spectral_summary(sol, lat, b.bins, b.theta);

            double value = kNan;
            switch (target) {
                case ScalingTarget::BandCenter: {
                    const auto& b1 = sum.bands.front();
                    value = sum.states[b1.begin + (b1.end - b1.begin) / 2].ipr;
                    break;
                }
                case ScalingTarget::BandEdge:
                    value = sum.states.front().ipr;
                    break;
                case ScalingTarget::MeanLocalized: {
                    std::vector<double> xs;
                    for (const auto& st : sum.states)
                        if (st.domain != 'B') xs.push_back(st.ipr);
                    value = mean_or_nan(xs);
                    break;
                }
                case ScalingTarget::MeanDelocalized: {
                    std::vector<double> xs;
                    for (const auto& st : sum.states)
                        if (st.domain == 'B') xs.push_back(st.ipr);
                    value = mean_or_nan(xs);
                    break;
                }
            }
            pts.emplace_back(static_cast<double>(2 * b.n_cells), value);
        } catch (const std::exception&) {
            // a failed size is dropped; the fit guards the remaining count
        }
    }
    return fit_power_law(pts);
}

std::vector<DisorderStats> disorder_robustness(const BaseConfig& base,
                                               const std::vector<double>& strengths, int replicas,
                                               std::uint64_t seed) {
    for (double p : strengths)
        if (p < 0.0 || p > 0.2)
            throw std::invalid_argument("disorder_robustness: strengths must lie in [0, 0.2]");

    SweepSpec spec;
    spec.axis = SweepAxis::DisorderP;
    spec.points = strengths;
    spec.base = base;
    spec.seed = seed;
    spec.replicas = replicas;
    const auto rows = run_sweep(spec);

    std::vector<DisorderStats> out;
    for (std::size_t pi = 0; pi < strengths.size(); ++pi) {
        std::vector<double> fr;
        for (int r = 0; r < replicas; ++r) {
            const auto& row = rows[pi * replicas + r];
            if (row.ok) fr.push_back(row.fraction_delocalized);
        }
        DisorderStats st;
        st.strength = strengths[pi];
        // identical replicas (p = 0) must average exactly, no rounding drift
        const bool degenerate =
            !fr.empty() && std::all_of(fr.begin(), fr.end(), [&](double f) { return f == fr[0]; });
        st.mean_fraction = degenerate ? fr[0] : mean_or_nan(fr);
        double var = 0.0;
        for (double f : fr) var += (f - st.mean_fraction) * (f - st.mean_fraction);
        st.std_fraction = fr.empty() ? kNan
                          : degenerate ? 0.0
                                       : std::sqrt(var / static_cast<double>(fr.size()));
        out.push_back(st);
    }
    return out;
}

void write_eigenvalues_csv(const std::filesystem::path& file, const std::vector<double>& values,
                           int band_split) {
    std::vector<io::Row> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int band = (band_split >= 0 && static_cast<int>(i) >= band_split) ? 2 : 1;
        rows.push_back({std::to_string(i), io::fmt(values[i]), std::to_string(band)});
    }
    io::write_csv(file, "index,energy,band", rows);
}

void write_spacing_csv(const std::filesystem::path& file, const std::vector<double>& values,
                       int band_split) {
    std::vector<io::Row> rows;
    const int n = static_cast<int>(values.size());
    const int split = band_split >= 0 ? band_split : n;
    auto emit = [&](int band, int begin, int end) {
        for (int i = begin; i + 1 < end; ++i)
            rows.push_back({std::to_string(band), std::to_string(i - begin),
                            io::fmt(values[i + 1] - values[i])});
    };
    emit(1, 0, split);
    if (split < n) emit(2, split, n);
    io::write_csv(file, "band,index,spacing", rows);
}

void write_dos_csv(const std::filesystem::path& file, const DosHistogram& dos) {
    std::vector<io::Row> rows;
    for (std::size_t b = 0; b < dos.counts.size(); ++b)
        rows.push_back({io::fmt(dos.edges[b]), io::fmt(dos.edges[b + 1]),
                        std::to_string(dos.counts[b])});
    io::write_csv(file, "bin_left,bin_right,count", rows);
}

void write_states_csv(const std::filesystem::path& file, const SpectralSummary& summary) {
    std::vector<io::Row> rows;
    rows.reserve(summary.states.size());
    for (const auto& st : summary.states)
        rows.push_back({std::to_string(st.index), io::fmt(st.energy), std::to_string(st.band),
                        io::fmt(st.ipr), io::fmt(st.center), io::fmt(st.width),
                        io::fmt(st.fwhm_sites), io::fmt(st.edge_weight),
                        std::string(1, st.domain)});
    io::write_csv(file, "index,energy,band,ipr,center,sigma_sites,fwhm_sites,edge_weight,class",
                  rows);
}

void write_map_csv(const std::filesystem::path& file,
                   const std::vector<std::vector<double>>& map_rows, int first_state_index) {
    std::vector<io::Row> rows;
    for (std::size_t s = 0; s < map_rows.size(); ++s)
        for (std::size_t i = 0; i < map_rows[s].size(); ++i)
            rows.push_back({std::to_string(first_state_index + static_cast<int>(s)),
                            std::to_string(i + 1), io::fmt(map_rows[s][i])});
    io::write_csv(file, "state_index,site_index,magnitude", rows);
}

void write_sweep_csv(const std::filesystem::path& file, SweepAxis axis,
                     const std::vector<SweepRow>& rows) {
    std::vector<io::Row> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back({axis_name(axis), io::fmt(r.point), std::to_string(r.replica),
                       io::fmt(r.fraction_delocalized), io::fmt(r.band_gap),
                       io::fmt(r.mean_ipr_a), io::fmt(r.mean_ipr_b), io::fmt(r.mean_ipr_c),
                       io::fmt(r.fldc_lower), io::fmt(r.fldc_upper)});
    io::write_csv(file,
                  "axis,point,replica,fraction_delocalized,band_gap,mean_ipr_A,mean_ipr_B,"
                  "mean_ipr_C,fldc_lower,fldc_upper",
                  out);
}

namespace {

void write_profiles_csv(const std::filesystem::path& file, const EigenSolution& sol,
                        const std::vector<int>& state_indices) {
    std::vector<io::Row> rows;
    for (int s : state_indices) {
        auto v = sol.vector(s);
        for (std::size_t i = 0; i < v.size(); ++i)
            rows.push_back({std::to_string(s), std::to_string(i + 1), io::fmt(v[i] * v[i])});
    }
    io::write_csv(file, "state_index,site_index,probability", rows);
}

void figure_fig1(const std::filesystem::path& out) {
    BaseConfig b;
    b.n_cells = 2001; // N_s = 4002
    const auto sol = eigh_tridiagonal(assemble(make_spec(b)), false);
    const int split = band_split_index(sol.values);
    write_eigenvalues_csv(out / "eigenvalues.csv", sol.values, split);
    write_spacing_csv(out / "spacing.csv", sol.values, split);

    BaseConfig bd = b;
    bd.n_cells = 8001; // N_s = 16002, values only
    const auto sold = eigh_tridiagonal(assemble(make_spec(bd)), false);
    write_dos_csv(out / "dos.csv", dos_histogram(sold.values, b.bins));

    io::write_text(out / "plot.gp",
                   "set datafile separator ','\n"
                   "plot 'eigenvalues.csv' skip 1 using 1:2 with points pt 7 ps 0.2\n"
                   "pause -1\n"
                   "plot 'spacing.csv' skip 1 using 2:3 with lines\n"
                   "pause -1\n"
                   "plot 'dos.csv' skip 1 using 1:3 with boxes\n"
                   "pause -1\n");
}

void figure_fig2(const std::filesystem::path& out) {
    BaseConfig b;
    b.n_cells = 151; // N_s = 302
    const LatticeSpec lat = make_spec(b);
    const auto sol = eigh_tridiagonal(assemble(lat), true);
    const auto sum = spectral_summary(sol, lat, b.bins, b.theta);
    write_states_csv(out / "states.csv", sum);
    const auto& b1 = sum.bands.front();
    write_map_csv(out / "map.csv", eigenstate_map(sol, b1.begin, b1.end), b1.begin);
    io::write_text(out / "plot.gp",
                   "set datafile separator ','\n"
                   "set view map\n"
                   "splot 'map.csv' skip 1 using 2:1:3 with points pt 5 ps 0.3 palette\n"
                   "pause -1\n");
}

void figure_fig3(const std::filesystem::path& out) {
    BaseConfig b;
    b.n_cells = 151;
    const LatticeSpec lat = make_spec(b);
    const auto sol = eigh_tridiagonal(assemble(lat), true);
    const auto sum = spectral_summary(sol, lat, b.bins, b.theta);
    const auto& b1 = sum.bands.front();
    std::vector<int> picks = {b1.begin, b1.begin + 1, b1.begin + 10};
    for (int i = b1.begin; i < b1.end; ++i)
        if (sum.states[i].domain == 'B') {
            picks.push_back(i);
            break;
        }
    write_profiles_csv(out / "profiles.csv", sol, picks);
    io::write_text(out / "plot.gp",
                   "set datafile separator ','\n"
                   "plot 'profiles.csv' skip 1 using 2:($1 == 0 ? $3 : 1/0) with lines\n"
                   "pause -1\n");
}

void figure_fig4(const std::filesystem::path& out, std::uint64_t seed) {
    BaseConfig small;
    small.n_cells = 151;
    const LatticeSpec lat = make_spec(small);
    const auto sol = eigh_tridiagonal(assemble(lat), true);
    write_states_csv(out / "states.csv", spectral_summary(sol, lat, small.bins, small.theta));

    SweepSpec sweep;
    sweep.axis = SweepAxis::Lf;
    sweep.points = default_points(SweepAxis::Lf);
    sweep.base.n_cells = 1301; // N_s = 2602, inferred from the quoted gradient
    sweep.seed = seed;
    write_sweep_csv(out / "sweep.csv", sweep.axis, run_sweep(sweep));
    io::write_text(out / "plot.gp",
                   "set datafile separator ','\n"
                   "plot 'states.csv' skip 1 using 2:4 with points pt 7 ps 0.4\n"
                   "pause -1\n"
                   "plot 'sweep.csv' skip 1 using 2:4 with linespoints\n"
                   "pause -1\n");
}

} // namespace

void reproduce_figure(const std::string& which, const std::filesystem::path& out_dir,
                      std::uint64_t seed) {
    if (which == "fig1") figure_fig1(out_dir);
    else if (which == "fig2") figure_fig2(out_dir);
    else if (which == "fig3") figure_fig3(out_dir);
    else if (which == "fig4") figure_fig4(out_dir, seed);
    else throw std::invalid_argument("unknown figure: " + which);
}

} // namespace ipl
