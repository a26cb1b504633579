#include "ipl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace ipl::io {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt(v[i]);
    }
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

double parse_double(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return x;
    } catch (const std::exception&) {
        throw UsageError("unparsable number for key '" + key + "': " + val);
    }
}

long long parse_int(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return x;
    } catch (const std::exception&) {
        throw UsageError("unparsable integer for key '" + key + "': " + val);
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& val) {
    if (key == "command") {
        cfg.command = val;
    } else if (key == "n_cells") {
        cfg.n_cells = static_cast<int>(parse_int(key, val));
    } else if (key == "lf") {
        cfg.lf = parse_double(key, val);
    } else if (key == "eps") {
        cfg.eps = parse_double(key, val);
    } else if (key == "d1") {
        cfg.d1 = parse_double(key, val);
    } else if (key == "d2") {
        cfg.d2 = parse_double(key, val);
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
    } else if (key == "bins") {
        cfg.bins = static_cast<int>(parse_int(key, val));
    } else if (key == "out_dir") {
        cfg.out_dir = val;
    } else if (key == "sizes") {
        cfg.sizes.clear();
        for (const auto& item : split_list(val))
            cfg.sizes.push_back(static_cast<int>(parse_int(key, item)));
    } else if (key == "points") {
        cfg.points.clear();
        for (const auto& item : split_list(val)) cfg.points.push_back(parse_double(key, item));
    } else if (key == "replicas") {
        cfg.replicas = static_cast<int>(parse_int(key, val));
    } else if (key == "strength") {
        cfg.strength.clear();
        for (const auto& item : split_list(val)) cfg.strength.push_back(parse_double(key, item));
    } else if (key == "axis") {
        cfg.axis = val;
    } else if (key == "target") {
        cfg.target = val;
    } else if (key == "which") {
        cfg.which = val;
    } else if (key == "format_version") {
        cfg.format_version = static_cast<int>(parse_int(key, val));
    } else {
        throw UsageError("unknown key '" + key + "'");
    }
}

void validate(const RunConfig& cfg) {
    if (!(cfg.lf > 0.0)) throw UsageError("key 'lf': L_f must be > 0");
    if (cfg.n_cells < 2) throw UsageError("key 'n_cells': need at least 2 cells");
    if (!(cfg.eps >= 0.0)) throw UsageError("key 'eps': coupling must be >= 0");
    if (!(cfg.d1 < cfg.d2)) throw UsageError("keys 'd1','d2': require d1 < d2");
    if (cfg.bins < 1) throw UsageError("key 'bins': need at least 1 bin");
    if (cfg.replicas < 1) throw UsageError("key 'replicas': need at least 1 replica");
    for (double p : cfg.strength)
        if (!(p >= 0.0 && p < 1.0)) throw UsageError("key 'strength': values must be in [0, 1)");
    for (std::size_t i = 1; i < cfg.points.size(); ++i)
        if (cfg.points[i] < cfg.points[i - 1])
            throw UsageError("key 'points': values must be sorted ascending");
    static const std::vector<std::string> axes = {"lf", "eps", "nsites", "p"};
    if (std::find(axes.begin(), axes.end(), cfg.axis) == axes.end())
        throw UsageError("key 'axis': expected one of lf, eps, nsites, p");
    static const std::vector<std::string> targets = {"band_center", "band_edge", "mean_localized",
                                                     "mean_delocalized"};
    if (std::find(targets.begin(), targets.end(), cfg.target) == targets.end())
        throw UsageError("key 'target': expected one of band_center, band_edge, mean_localized, "
                         "mean_delocalized");
    static const std::vector<std::string> figs = {"fig1", "fig2", "fig3", "fig4"};
    if (std::find(figs.begin(), figs.end(), cfg.which) == figs.end())
        throw UsageError("key 'which': expected one of fig1, fig2, fig3, fig4");
    if (cfg.command == "scaling" && cfg.sizes.size() < 3)
        throw UsageError("key 'sizes': scaling fits need at least 3 sizes");
}

} // namespace

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError(file, "cannot open config file");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

RunConfig config_from_map(const std::string& command,
                          const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    cfg.command = command;
    for (const auto& [k, v] : kv) {
        if (k == "command") continue;
        apply_kv(cfg, k, v);
    }
    cfg.command = command;
    validate(cfg);
    return cfg;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"isospectrally patterned lattice toolkit", "ipl"};
    app.require_subcommand(1);

    static const std::vector<std::string> commands = {
        "spectrum", "states", "ipr", "variational", "sweep", "scaling", "disorder", "figure"};

    std::string config_path;
    struct Opts {
        CLI::App* sub;
        std::map<std::string, CLI::Option*> byKey;
    };
    std::vector<Opts> all;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        Opts o{sub, {}};
        o.byKey["n_cells"] = sub->add_option("--n-cells", cfg.n_cells);
        o.byKey["lf"] = sub->add_option("--lf", cfg.lf);
        o.byKey["eps"] = sub->add_option("--eps", cfg.eps);
        o.byKey["d1"] = sub->add_option("--d1", cfg.d1);
        o.byKey["d2"] = sub->add_option("--d2", cfg.d2);
        o.byKey["seed"] = sub->add_option("--seed", cfg.seed);
        o.byKey["bins"] = sub->add_option("--bins", cfg.bins);
        o.byKey["out_dir"] = sub->add_option("--out", cfg.out_dir);
        o.byKey["sizes"] = sub->add_option("--sizes", cfg.sizes)->delimiter(',');
        o.byKey["points"] = sub->add_option("--points", cfg.points)->delimiter(',');
        o.byKey["replicas"] = sub->add_option("--replicas", cfg.replicas);
        o.byKey["strength"] = sub->add_option("--strength", cfg.strength)->delimiter(',');
        o.byKey["axis"] = sub->add_option("--axis", cfg.axis);
        o.byKey["target"] = sub->add_option("--target", cfg.target);
        o.byKey["which"] = sub->add_option("--which", cfg.which);
        sub->add_option("--config", config_path);
        all.push_back(std::move(o));
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CLI::App* sub = app.get_subcommands().at(0);
    cfg.command = sub->get_name();

    if (!config_path.empty()) {
        const auto kv = read_config_file(config_path);
        const auto& opts = *std::find_if(all.begin(), all.end(),
                                         [&](const Opts& o) { return o.sub == sub; });
        for (const auto& [k, v] : kv) {
            if (k == "command" || k == "format_version") continue;
            const auto it = opts.byKey.find(k);
            if (it == opts.byKey.end()) throw UsageError("unknown key '" + k + "'");
            if (it->second->count() == 0) apply_kv(cfg, k, v); // flags take precedence
        }
    }

    validate(cfg);
    return cfg;
}

std::string serialize(const RunConfig& cfg) {
    std::string s;
    s += "command = " + cfg.command + "\n";
    s += "n_cells = " + std::to_string(cfg.n_cells) + "\n";
    s += "lf = " + fmt(cfg.lf) + "\n";
    s += "eps = " + fmt(cfg.eps) + "\n";
    s += "d1 = " + fmt(cfg.d1) + "\n";
    s += "d2 = " + fmt(cfg.d2) + "\n";
    s += "seed = " + std::to_string(cfg.seed) + "\n";
    s += "bins = " + std::to_string(cfg.bins) + "\n";
    s += "out_dir = " + cfg.out_dir + "\n";
    if (!cfg.sizes.empty()) s += "sizes = " + join_ints(cfg.sizes) + "\n";
    if (!cfg.points.empty()) s += "points = " + join_doubles(cfg.points) + "\n";
    s += "replicas = " + std::to_string(cfg.replicas) + "\n";
    if (!cfg.strength.empty()) s += "strength = " + join_doubles(cfg.strength) + "\n";
    s += "axis = " + cfg.axis + "\n";
    s += "target = " + cfg.target + "\n";
    s += "which = " + cfg.which + "\n";
    s += "format_version = " + std::to_string(cfg.format_version) + "\n";
    return s;
}

void write_text(const std::filesystem::path& file, const std::string& content) {
    std::error_code ec;
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(file, "cannot open for writing");
        out << content;
        if (!out) throw IoError(file, "write failed");
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) throw IoError(file, "rename failed: " + ec.message());
}

void write_csv(const std::filesystem::path& file, const std::string& header,
               const std::vector<Row>& rows) {
    std::string content = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) content += ',';
            content += row[i];
        }
        content += '\n';
    }
    write_text(file, content);
}

void write_manifest(const std::filesystem::path& out_dir, const RunConfig& cfg,
                    const std::map<std::string, std::string>& notes) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    j["format_version"] = cfg.format_version;
    std::map<std::string, std::string> config;
    std::stringstream ss(serialize(cfg));
    std::string line;
    while (std::getline(ss, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = config;
    if (!notes.empty()) j["notes"] = notes;
    write_text(out_dir / "manifest.json", j.dump(2) + "\n");
}

} // namespace ipl::io
