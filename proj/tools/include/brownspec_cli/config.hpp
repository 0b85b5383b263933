#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brownspec/simkit.hpp"
#include "brownspec/spectra.hpp"

namespace brownspec::cli {

// Flat key = value text with [section] headers; '#' and ';' start comments.
// Keys before the first header belong to section "".
struct IniDocument {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::string source;

    bool has_section(const std::string& name) const { return sections.count(name) != 0; }
};

IniDocument parse_ini(const std::string& text, const std::string& source = "<string>");
IniDocument load_ini(const std::string& path);

// Medium parameters gathered from a config file and command-line overrides.
// Keys use the config spelling: kT N R m rho_p rho_f eta G eta_inf mu_alpha alpha
// omegaRtau xi gamma.
struct ParameterSet {
    std::string medium;
    std::map<std::string, double> values;
    std::optional<bool> normalized; // the config's normalized = true/false
};

// Reads [context], the single medium section and a top-level or [context]
// "normalized" flag. medium_override picks the section when several exist.
ParameterSet parameters_from_ini(const IniDocument& doc, const std::string& medium_override = "");

struct ResolvedMedium {
    MediumSpec spec;
    // True when the medium was built from dimensionless groups (canonical units,
    // time measured in tau or lambda); dimensional output is then unavailable.
    bool dimensionless = false;
    std::map<std::string, double> echo; // parameters as given
    std::map<std::string, double> groups; // tau, omegaRtau, xi, lambda, gamma
};

MediumKind parse_medium_kind(const std::string& name);
std::string medium_key(MediumKind k);

// Validates the key set for the medium, rejects SI/dimensionless mixing and
// builds the MediumSpec. Throws ConfigError naming the offending keys.
ResolvedMedium resolve_medium(const ParameterSet& params);

// [simulation] section: dt n_steps n_traj seed scheme burn_in allow_coarse_step
// memory_lag threads. dt is in seconds, or in units of the frequency scale
// (tau or lambda) for dimensionless media; burn_in and memory_lag count steps.
SimConfig simulation_from_ini(const IniDocument& doc, const ResolvedMedium& medium);

std::map<std::string, double> groups_map(const MediumSpec& spec);

} // namespace brownspec::cli
