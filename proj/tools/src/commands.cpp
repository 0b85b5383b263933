#include "brownspec_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>

#include "brownspec/errors.hpp"
#include "brownspec/simkit.hpp"
#include "brownspec/spectra.hpp"
#include "brownspec_cli/config.hpp"
#include "brownspec_cli/io.hpp"

#ifndef BROWNSPEC_VERSION
#define BROWNSPEC_VERSION "0.0.0"
#endif

namespace brownspec::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

double grid_number(std::string s, const std::string& spec) {
    const auto b = s.find_first_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, s.find_last_not_of(" \t") - b + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("grid '" + spec + "': bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

json map_json(const std::map<std::string, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

json base_manifest(const std::string& command) {
    json j;
    j["tool"] = "brownspec";
    j["version"] = BROWNSPEC_VERSION;
    j["command"] = command;
    return j;
}

void write_manifest(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json ini_echo(const IniDocument& doc) {
    json j = json::object();
    for (const auto& [section, entries] : doc.sections) {
        json s = json::object();
        for (const auto& [key, e] : entries) s[key] = e.value;
        j[section.empty() ? "global" : section] = s;
    }
    return j;
}

std::string curve_header_x(bool normalized) { return normalized ? "omega_dimensionless" : "omega_rad_s"; }
std::string curve_header_y(bool normalized) { return normalized ? "psd_normalized" : "psd_si"; }

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw ConfigError("empty grid");
    std::vector<double> g;
    if (spec.find(':') != std::string::npos) {
        auto parts = split(spec, ':');
        bool linear = false;
        if (!parts.empty() && (parts[0] == "lin" || parts[0] == "log")) {
            linear = parts[0] == "lin";
            parts.erase(parts.begin());
        }
        if (parts.size() != 3) throw ConfigError("grid '" + spec + "': expected lo:hi:n");
        const double lo = grid_number(parts[0], spec);
        const double hi = grid_number(parts[1], spec);
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
        if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || n < 1) {
            throw ConfigError("grid '" + spec + "': point count must be a positive integer");
        }
        if (!(hi >= lo)) throw ConfigError("grid '" + spec + "': hi must not be below lo");
        if (!linear && !(lo > 0.0)) throw ConfigError("grid '" + spec + "': log grid needs lo > 0");
        g = linear ? linear_grid(lo, hi, n) : log_grid(lo, hi, n);
    } else {
        for (const auto& s : split(spec, ',')) g.push_back(grid_number(s, spec));
    }
    for (double w : g) {
        if (w < 0.0) throw ConfigError("grid '" + spec + "': frequencies must be >= 0");
    }
    return g;
}

int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out) {
    if (opts.normalized && opts.dimensional) throw ConfigError("--normalized and --dimensional are exclusive");
    ParameterSet params;
    IniDocument doc;
    if (!opts.config.empty()) {
        doc = load_ini(opts.config);
        params = parameters_from_ini(doc, opts.medium);
    }
    if (!opts.medium.empty()) params.medium = opts.medium;
    for (const auto& [k, v] : opts.overrides) params.values[k] = v;
    const ResolvedMedium med = resolve_medium(params);
    // Normalized unless asked otherwise, either by flag or by normalized = false in the config.
    const bool dimensional = opts.dimensional || (!opts.normalized && params.normalized == false);
    if (dimensional && med.dimensionless) {
        throw ConfigError("dimensional output needs a full SI parameter set (kT, R, m and the medium constants)");
    }
    const bool normalized = !dimensional;
    const auto grid = parse_grid(opts.grid);
    const SpectrumCurve curve =
        psd_master_curve(med.spec, grid, normalized ? Normalization::Normalized : Normalization::Dimensional);

    CsvTable table;
    table.header = {curve_header_x(normalized), curve_header_y(normalized)};
    table.columns = {curve.omega, curve.values};
    const std::string text = csv_text(table);
    if (opts.out.empty()) {
        out << text;
        return kExitOk;
    }
    write_text(opts.out, text);

    json m = base_manifest("spectrum");
    m["medium"] = medium_key(med.spec.kind());
    m["input_mode"] = med.dimensionless ? "dimensionless" : "si";
    m["normalization"] = normalized ? "normalized" : "dimensional";
    m["grid"] = opts.grid;
    m["parameters"] = map_json(med.echo);
    m["groups"] = map_json(med.groups);
    if (!opts.config.empty()) m["config"] = ini_echo(doc);
    m["convention_note"] = std::string(kConventionNote);
    m["outputs"] = json::array({json{{"file", fs::path(opts.out).filename().string()}, {"sha256", sha256_hex(text)}}});
    write_manifest(opts.out + ".manifest.json", m);
    out << "wrote " << opts.out << " (" << grid.size() << " rows)\n";
    return kExitOk;
}

int cmd_figures(const FiguresOptions& opts, std::ostream& out) {
    struct Curve {
        std::string file;
        MediumKind kind;
        NormalizedParams p;
        std::map<std::string, double> shown;
        std::vector<double> extra_points;
    };
    std::vector<Curve> curves;
    std::string axis = "omega_tau";
    const auto name = [](const std::string& stem, double v) { return stem + "_" + format_double(v) + ".csv"; };
    switch (opts.id) {
    case 1:
        curves.push_back({"fig1_viscous.csv", MediumKind::Viscous, {}, {}, {}});
        for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
            NormalizedParams p;
            p.omegaR_tau = a;
            curves.push_back({name("fig1_maxwell_omegaRtau", a), MediumKind::Maxwell, p, {{"omegaRtau", a}}, {}});
        }
        break;
    case 4:
        curves.push_back({"fig4_viscous.csv", MediumKind::Viscous, {}, {}, {}});
        for (double a : {0.25, 0.5, 1.0, 2.0, 5.0}) {
            NormalizedParams p;
            p.omegaR_tau = a;
            curves.push_back({name("fig4_trap_omegaRtau", a), MediumKind::HarmonicTrap, p, {{"omegaRtau", a}}, {a}});
        }
        break;
    case 7:
        curves.push_back({"fig7_viscous.csv", MediumKind::Viscous, {}, {}, {}});
        for (double a : {1.0, 5.0}) {
            for (double xi : {0.0, 0.1, 1.0}) {
                NormalizedParams p;
                p.omegaR_tau = a;
                p.xi = xi;
                curves.push_back({"fig7_jeffreys_omegaRtau_" + format_double(a) + "_xi_" + format_double(xi) + ".csv",
                                  MediumKind::Jeffreys, p, {{"omegaRtau", a}, {"xi", xi}}, {}});
            }
        }
        break;
    case 9:
        axis = "omega_lambda";
        curves.push_back({"fig9_viscous.csv", MediumKind::Viscous, {}, {}, {}});
        for (double al : {0.25, 0.5, 0.75, 1.0}) {
            NormalizedParams p;
            p.alpha = al;
            curves.push_back({name("fig9_subdiffusive_alpha", al), MediumKind::Subdiffusive, p, {{"alpha", al}}, {}});
        }
        break;
    case 11:
        axis = "omega_lambda";
        for (double g : {0.46, 0.55, 0.2, 1.0, 3.0}) {
            NormalizedParams p;
            p.gamma_ratio = g;
            curves.push_back({name("fig11_hydrodynamic_gamma", g), MediumKind::Hydrodynamic, p, {{"gamma", g}}, {}});
        }
        break;
    default: throw ConfigError("unknown figure id " + std::to_string(opts.id) + " (expected 1, 4, 7, 9 or 11)");
    }
    if (opts.outdir.empty()) throw ConfigError("figures needs --outdir");
    fs::create_directories(opts.outdir);

    json m = base_manifest("figures");
    m["figure"] = opts.id;
    m["x_axis"] = axis;
    m["grid"] = "1e-2:1e2:400 (log), plus listed extra points";
    m["convention_note"] = std::string(kConventionNote);
    json list = json::array();
    for (const auto& c : curves) {
        auto grid = log_grid(1e-2, 1e2, 400);
        grid.insert(grid.end(), c.extra_points.begin(), c.extra_points.end());
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        const MediumSpec spec = canonical_medium(c.kind, c.p);
        const auto curve = psd_master_curve(spec, grid, Normalization::Normalized);
        CsvTable t;
        t.header = {curve_header_x(true), curve_header_y(true)};
        t.columns = {curve.omega, curve.values};
        const std::string text = csv_text(t);
        write_text((fs::path(opts.outdir) / c.file).string(), text);
        json e;
        e["file"] = c.file;
        e["medium"] = medium_key(c.kind);
        e["parameters"] = map_json(c.shown);
        e["rows"] = grid.size();
        e["sha256"] = sha256_hex(text);
        list.push_back(e);
    }
    m["curves"] = list;
    write_manifest((fs::path(opts.outdir) / "manifest.json").string(), m);
    out << "wrote " << curves.size() << " curves to " << opts.outdir << "\n";
    return kExitOk;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
    if (opts.config.empty()) throw ConfigError("simulate needs --config");
    if (opts.outdir.empty()) throw ConfigError("simulate needs --out");
    const IniDocument doc = load_ini(opts.config);
    const ResolvedMedium med = resolve_medium(parameters_from_ini(doc));
    SimConfig cfg = simulation_from_ini(doc, med);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.threads) cfg.threads = *opts.threads;
    const Scheme scheme = resolve_scheme(cfg);
    const StabilityReport stab = stability_report(cfg);

    fs::create_directories(opts.outdir);
    json files = json::array();
    const std::size_t batch = std::max<std::size_t>(4 * cfg.threads, 8);
    for (std::size_t first = 0; first < cfg.n_traj; first += batch) {
        const std::size_t count = std::min(batch, cfg.n_traj - first);
        const Ensemble ens = simulate_range(cfg, first, count);
        for (std::size_t i = 0; i < count; ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "traj_%06zu.bin", first + i);
            const std::string bytes = trajectory_bytes(ens, i);
            write_text((fs::path(opts.outdir) / name).string(), bytes);
            files.push_back(json{{"file", name}, {"sha256", sha256_hex(bytes)}});
        }
    }

    json m = base_manifest("simulate");
    m["config"] = ini_echo(doc);
    m["medium"] = medium_key(med.spec.kind());
    m["input_mode"] = med.dimensionless ? "dimensionless" : "si";
    m["parameters"] = map_json(med.echo);
    m["groups"] = map_json(med.groups);
    m["seed"] = cfg.seed;
    m["scheme"] = std::string(scheme_name(scheme));
    m["dt"] = cfg.dt;
    m["n_steps"] = cfg.n_steps;
    m["n_traj"] = cfg.n_traj;
    m["stability"] = json{{"max_product", stab.max_product}, {"verdict", std::string(verdict_name(stab.verdict))}};
    m["format"] = "BSTRAJ v1, little-endian; velocity block then position block, axis-major";
    m["outputs"] = files;
    write_manifest((fs::path(opts.outdir) / "manifest.json").string(), m);
    out << "wrote " << cfg.n_traj << " trajectories to " << opts.outdir << "\n";
    return kExitOk;
}

} // namespace brownspec::cli
