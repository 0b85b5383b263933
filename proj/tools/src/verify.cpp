#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

#include "brownspec/errors.hpp"
#include "brownspec_cli/checks.hpp"
#include "brownspec_cli/commands.hpp"
#include "brownspec_cli/io.hpp"

namespace brownspec::cli {

namespace {

void append(std::vector<CheckResult>& dst, std::vector<CheckResult> src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

// Reduced ensembles keep the suite under a minute on one core. The PSD band
// widens to 15% to match the larger sampling error, and the subdiffusive slope
// uses the time-averaged MSD, whose scatter is about half the ensemble one.
checks::SimScale verify_scale(const VerifyOptions& opts) {
    checks::SimScale s;
    s.viscous_traj = 200;
    s.trap_traj = 100;
    s.maxwell_traj = 200;
    s.subdiff_psd_traj = 100;
    s.subdiff_msd_traj = 120;
    s.psd_tolerance = 0.15;
    s.subdiff_time_averaged = true;
    s.seed = opts.seed;
    s.threads = opts.threads;
    return s;
}

} // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    if (suite == "limits") {
        append(out, checks::master_equivalence());
        append(out, checks::limit_ladder());
        append(out, checks::trap_peak());
        append(out, checks::gl_accuracy());
    } else if (suite == "fdt") {
        append(out, checks::fourier_identity());
        append(out, checks::msd_vacf_loop());
        append(out, checks::hydrodynamic_consistency(20));
        append(out, checks::sum_rules());
    } else if (suite == "simulation") {
        const auto scale = verify_scale(opts);
        append(out, checks::linear_media_simulation(scale));
        append(out, checks::subdiffusive_simulation(scale));
    } else if (suite == "all") {
        for (const char* s : {"limits", "fdt", "simulation"}) append(out, run_suite(s, opts));
    } else {
        throw ConfigError("unknown suite '" + suite + "' (expected limits, fdt, simulation or all)");
    }
    return out;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
    if (opts.threads == 0) throw ConfigError("--threads must be at least 1");
    const auto results = run_suite(opts.suite, opts);
    bool all = true;
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        out << r.name << ' ' << format_double(r.metric) << ' ' << format_double(r.tolerance) << ' '
            << (r.pass ? "PASS" : "FAIL") << '\n';
        all = all && r.pass;
        report.push_back({{"name", r.name},
                          {"metric", std::isfinite(r.metric) ? nlohmann::ordered_json(r.metric) : nlohmann::ordered_json(nullptr)},
                          {"tolerance", r.tolerance},
                          {"verdict", r.pass ? "PASS" : "FAIL"}});
    }
    if (!opts.report.empty()) {
        nlohmann::ordered_json doc;
        doc["suite"] = opts.suite;
        doc["seed"] = opts.seed;
        doc["checks"] = report;
        doc["pass"] = all;
        write_text(opts.report, doc.dump(2) + "\n");
    }
    return all ? kExitOk : kExitVerification;
}

} // namespace brownspec::cli
