#include "brownspec_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "brownspec/errors.hpp"

namespace brownspec::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string where(const IniDocument& doc, int line) { return doc.source + ":" + std::to_string(line); }

double parse_number(const std::string& text, const std::string& context) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError(context + ": '" + text + "' is not a finite number");
    }
    return v;
}

bool parse_bool(const std::string& text, const std::string& context) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(context + ": '" + text + "' is not a boolean");
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& context) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(context + ": '" + text + "' is not a non-negative integer");
    }
    return v;
}

const std::set<std::string> kContextKeys{"kT", "N", "R", "m", "rho_p", "rho_f"};
const std::set<std::string> kDimensionlessKeys{"omegaRtau", "xi", "gamma"};
const std::set<std::string> kMediumSections{"viscous",  "trap",         "harmonic_trap",
                                            "maxwell",  "jeffreys",     "subdiffusive",
                                            "hydrodynamic"};

struct KeyRules {
    std::vector<std::string> si;            // required in SI mode
    std::vector<std::string> dimensionless; // accepted in dimensionless mode
};

KeyRules rules_for(MediumKind k) {
    switch (k) {
    case MediumKind::Viscous: return {{"eta"}, {}};
    case MediumKind::HarmonicTrap: return {{"G", "eta"}, {"omegaRtau"}};
    case MediumKind::Maxwell: return {{"G", "eta"}, {"omegaRtau"}};
    case MediumKind::Jeffreys: return {{"G", "eta", "eta_inf"}, {"omegaRtau", "xi"}};
    case MediumKind::Subdiffusive: return {{"mu_alpha", "alpha"}, {"alpha"}};
    case MediumKind::Hydrodynamic: return {{"eta", "rho_f", "rho_p"}, {"gamma"}};
    }
    return {};
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
    return out;
}

} // namespace

IniDocument parse_ini(const std::string& text, const std::string& source) {
    IniDocument doc;
    doc.source = source;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find_first_of("#;");
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(where(doc, line) + ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(where(doc, line) + ": empty section name");
            if (doc.sections.count(section)) throw ConfigError(where(doc, line) + ": duplicate section [" + section + "]");
            doc.sections[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(where(doc, line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(where(doc, line) + ": empty key");
        auto& sec = doc.sections[section];
        if (sec.count(key)) throw ConfigError(where(doc, line) + ": duplicate key '" + key + "'");
        sec[key] = {value, line};
    }
    return doc;
}

IniDocument load_ini(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ini(ss.str(), path);
}

MediumKind parse_medium_kind(const std::string& name) {
    if (name == "viscous") return MediumKind::Viscous;
    if (name == "trap" || name == "harmonic_trap") return MediumKind::HarmonicTrap;
    if (name == "maxwell") return MediumKind::Maxwell;
    if (name == "jeffreys") return MediumKind::Jeffreys;
    if (name == "subdiffusive") return MediumKind::Subdiffusive;
    if (name == "hydrodynamic") return MediumKind::Hydrodynamic;
    throw ConfigError("unknown medium '" + name +
                      "' (expected viscous, trap, maxwell, jeffreys, subdiffusive or hydrodynamic)");
}

std::string medium_key(MediumKind k) { return std::string(medium_name(k)); }

ParameterSet parameters_from_ini(const IniDocument& doc, const std::string& medium_override) {
    ParameterSet p;
    std::vector<std::string> found;
    for (const auto& [name, _] : doc.sections) {
        if (kMediumSections.count(name)) found.push_back(name);
    }
    for (const auto& [name, _] : doc.sections) {
        if (name.empty() || name == "context" || name == "simulation" || kMediumSections.count(name)) continue;
        throw ConfigError(doc.source + ": unknown section [" + name + "]");
    }
    if (!medium_override.empty()) {
        p.medium = medium_override;
    } else if (found.size() == 1) {
        p.medium = found.front();
    } else if (found.size() > 1) {
        throw ConfigError(doc.source + ": several medium sections (" + join(found) + "); pick one with --medium");
    }

    const auto take_flag = [&](const std::string& section) {
        auto it = doc.sections.find(section);
        if (it == doc.sections.end()) return;
        auto f = it->second.find("normalized");
        if (f == it->second.end()) return;
        if (p.normalized) throw ConfigError(where(doc, f->second.line) + ": 'normalized' given twice");
        p.normalized = parse_bool(f->second.value, where(doc, f->second.line));
    };
    take_flag("");
    take_flag("context");

    const auto read_section = [&](const std::string& section, bool context) {
        auto it = doc.sections.find(section);
        if (it == doc.sections.end()) return;
        for (const auto& [key, e] : it->second) {
            if (key == "normalized") continue;
            if (context && !kContextKeys.count(key)) {
                throw ConfigError(where(doc, e.line) + ": unknown key '" + key + "' in [" + section + "]");
            }
            p.values[key] = parse_number(e.value, where(doc, e.line) + " (" + key + ")");
        }
    };
    for (const auto& [key, e] : doc.sections.count("") ? doc.sections.at("") : std::map<std::string, IniDocument::Entry>{}) {
        if (key != "normalized") throw ConfigError(where(doc, e.line) + ": key '" + key + "' outside any section");
    }
    read_section("context", true);
    if (!p.medium.empty()) {
        const std::string sec = p.medium == "harmonic_trap" ? "harmonic_trap" : p.medium;
        if (doc.sections.count(sec)) {
            read_section(sec, false);
        } else if (p.medium == "trap" && doc.sections.count("harmonic_trap")) {
            read_section("harmonic_trap", false);
        }
    }
    return p;
}

std::map<std::string, double> groups_map(const MediumSpec& spec) {
    const auto g = dimensionless_groups(spec);
    std::map<std::string, double> out;
    if (g.tau) out["tau"] = *g.tau;
    if (g.omegaR_tau) out["omegaRtau"] = *g.omegaR_tau;
    if (g.xi) out["xi"] = *g.xi;
    if (g.lambda) out["lambda"] = *g.lambda;
    if (g.gamma_ratio) out["gamma"] = *g.gamma_ratio;
    return out;
}

ResolvedMedium resolve_medium(const ParameterSet& params) {
    if (params.medium.empty()) throw ConfigError("no medium given (use --medium or a medium section)");
    const MediumKind kind = parse_medium_kind(params.medium);
    const KeyRules rules = rules_for(kind);
    const auto& v = params.values;
    const auto has = [&](const std::string& k) { return v.count(k) != 0; };

    std::set<std::string> allowed(kContextKeys);
    allowed.insert(rules.si.begin(), rules.si.end());
    allowed.insert(rules.dimensionless.begin(), rules.dimensionless.end());
    for (const auto& [key, _] : v) {
        if (!allowed.count(key)) {
            throw ConfigError("parameter '" + key + "' does not apply to medium '" + medium_key(kind) + "'");
        }
    }

    std::vector<std::string> dimless_given, si_given;
    for (const auto& [key, _] : v) {
        if (kDimensionlessKeys.count(key)) {
            dimless_given.push_back(key);
        } else if (key != "alpha" && key != "N") {
            si_given.push_back(key);
        }
    }
    // Hydrodynamic gamma may come from the density pair alone.
    const bool density_only = kind == MediumKind::Hydrodynamic && dimless_given.empty() && has("rho_p") &&
                              has("rho_f") && si_given.size() == 2;
    bool dimensionless = params.normalized.value_or(false) || !dimless_given.empty() || density_only;
    if (params.normalized && !*params.normalized && !dimless_given.empty()) {
        throw ConfigError("normalized = false contradicts dimensionless keys: " + join(dimless_given));
    }
    if (!si_given.empty() && !dimless_given.empty()) {
        throw ConfigError("cannot mix SI keys (" + join(si_given) + ") with dimensionless keys (" +
                          join(dimless_given) + ")");
    }
    if (params.normalized.value_or(false) && !si_given.empty() && !density_only) {
        throw ConfigError("normalized = true forbids SI keys: " + join(si_given));
    }
    // An empty key set means the canonical medium with default groups.
    if (si_given.empty() && dimless_given.empty()) dimensionless = true;

    ResolvedMedium out;
    out.echo = v;
    out.dimensionless = dimensionless;
    const int N = has("N") ? static_cast<int>(v.at("N")) : 3;
    if (has("N") && (v.at("N") != std::floor(v.at("N")) || N < 1 || N > 3)) {
        throw ConfigError("N must be 1, 2 or 3");
    }
    try {
        if (dimensionless) {
            NormalizedParams np;
            if (has("omegaRtau")) np.omegaR_tau = v.at("omegaRtau");
            if (has("xi")) np.xi = v.at("xi");
            if (has("alpha")) np.alpha = v.at("alpha");
            if (has("gamma")) np.gamma_ratio = v.at("gamma");
            if (density_only) {
                if (!(v.at("rho_p") > 0.0 && v.at("rho_f") > 0.0)) throw DomainError("densities must be > 0");
                np.gamma_ratio = (1.0 + 2.0 * v.at("rho_p") / v.at("rho_f")) / 9.0;
            }
            out.spec = canonical_medium(kind, np, N);
        } else {
            std::vector<std::string> missing;
            for (const auto& k : rules.si) {
                if (!has(k)) missing.push_back(k);
            }
            for (const std::string k : {"kT", "R"}) {
                if (!has(k)) missing.push_back(k);
            }
            if (kind != MediumKind::Hydrodynamic && !has("m")) missing.push_back("m");
            if (!missing.empty()) {
                throw ConfigError("medium '" + medium_key(kind) + "' in SI mode is missing: " + join(missing));
            }
            PhysicalContext ctx;
            ctx.kT = v.at("kT");
            ctx.N = N;
            ctx.R = v.at("R");
            if (kind == MediumKind::Hydrodynamic) {
                ctx = PhysicalContext::sphere(ctx.kT, N, ctx.R, v.at("rho_p"));
                ctx.rho_f = v.at("rho_f");
                if (has("m")) ctx.m = v.at("m");
            } else {
                ctx.m = v.at("m");
                if (has("rho_p")) ctx.rho_p = v.at("rho_p");
                if (has("rho_f")) ctx.rho_f = v.at("rho_f");
            }
            MediumSpec spec;
            spec.ctx = ctx;
            switch (kind) {
            case MediumKind::Viscous: spec.params = Viscous{v.at("eta")}; break;
            case MediumKind::HarmonicTrap: spec.params = HarmonicTrap{v.at("G"), v.at("eta")}; break;
            case MediumKind::Maxwell: spec.params = Maxwell{v.at("G"), v.at("eta")}; break;
            case MediumKind::Jeffreys: spec.params = Jeffreys{v.at("G"), v.at("eta"), v.at("eta_inf")}; break;
            case MediumKind::Subdiffusive: spec.params = Subdiffusive{v.at("mu_alpha"), v.at("alpha")}; break;
            case MediumKind::Hydrodynamic: spec.params = Hydrodynamic{v.at("eta"), v.at("rho_f"), v.at("rho_p")}; break;
            }
            out.spec = spec;
        }
        out.spec.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("parameter out of domain: ") + e.what());
    }
    out.groups = groups_map(out.spec);
    return out;
}

SimConfig simulation_from_ini(const IniDocument& doc, const ResolvedMedium& medium) {
    SimConfig cfg;
    cfg.medium = medium.spec;
    auto it = doc.sections.find("simulation");
    if (it == doc.sections.end()) throw ConfigError(doc.source + ": missing [simulation] section");
    bool have_dt = false, have_steps = false;
    for (const auto& [key, e] : it->second) {
        const std::string ctx = where(doc, e.line) + " (" + key + ")";
        if (key == "dt") {
            cfg.dt = parse_number(e.value, ctx);
            have_dt = true;
        } else if (key == "n_steps") {
            cfg.n_steps = parse_unsigned(e.value, ctx);
            have_steps = true;
        } else if (key == "n_traj") {
            cfg.n_traj = parse_unsigned(e.value, ctx);
        } else if (key == "seed") {
            cfg.seed = parse_unsigned(e.value, ctx);
        } else if (key == "scheme") {
            try {
                cfg.scheme = parse_scheme(e.value);
            } catch (const ConfigError& err) {
                throw ConfigError(ctx + ": " + err.what());
            }
        } else if (key == "burn_in") {
            cfg.burn_in = parse_unsigned(e.value, ctx);
        } else if (key == "allow_coarse_step") {
            cfg.allow_coarse_step = parse_bool(e.value, ctx);
        } else if (key == "memory_lag") {
            cfg.memory_lag = parse_unsigned(e.value, ctx);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(parse_unsigned(e.value, ctx));
        } else {
            throw ConfigError(where(doc, e.line) + ": unknown key '" + key + "' in [simulation]");
        }
    }
    if (!have_dt) throw ConfigError(doc.source + ": [simulation] needs dt");
    if (!have_steps) throw ConfigError(doc.source + ": [simulation] needs n_steps");
    return cfg;
}

} // namespace brownspec::cli
