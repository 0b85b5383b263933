// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: brownspec_acceptance [--only N[,M...]] [--configs DIR]

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "brownspec_cli/checks.hpp"
#include "brownspec_cli/commands.hpp"
#include "brownspec_cli/io.hpp"

namespace fs = std::filesystem;
using namespace brownspec::cli;

namespace {

struct Criterion {
    int id;
    std::string title;
    double budget_s; // wall-clock limit, 0 = none
    std::function<std::vector<CheckResult>()> body;
};

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "brownspec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

// Concatenated bytes of every regular file under dir, in path order.
std::string tree_bytes(const fs::path& dir) {
    std::set<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) files.insert(fs::relative(e.path(), dir));
    }
    std::string all;
    for (const auto& f : files) all += f.string() + '\n' + read_text((dir / f).string());
    return all;
}

// Runs make(outdir, threads) into fresh directories at 1 thread twice and at
// 4 threads once; metric is the number of differing runs.
CheckResult same_bytes(const std::string& name, const fs::path& root,
                       const std::function<int(const fs::path&, unsigned)>& make) {
    int mismatches = 0, failures = 0;
    std::string first;
    const unsigned threads[] = {1, 1, 4};
    for (int i = 0; i < 3; ++i) {
        const fs::path dir = root / (name + "_" + std::to_string(i));
        fs::create_directories(dir);
        if (make(dir, threads[i]) != kExitOk) ++failures;
        const std::string bytes = tree_bytes(dir);
        if (i == 0) first = bytes;
        else if (bytes != first) ++mismatches;
    }
    CheckResult r{"determinism." + name, double(mismatches + failures), 0.0, false};
    r.pass = mismatches == 0 && failures == 0 && !first.empty();
    return r;
}

std::vector<CheckResult> determinism(const std::string& configs) {
    const fs::path root = fs::temp_directory_path() / ("brownspec_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::vector<CheckResult> out;
    out.push_back(same_bytes("spectrum", root, [](const fs::path& d, unsigned) {
        return run_cli({"spectrum", "--medium", "jeffreys", "--omegaRtau", "3", "--xi", "0.1", "--out",
                        (d / "s.csv").string()});
    }));
    out.push_back(same_bytes("spectrum_si", root, [&](const fs::path& d, unsigned) {
        return run_cli({"spectrum", "--config", configs + "/hydrodynamic.ini", "--dimensional", "--out",
                        (d / "s.csv").string()});
    }));
    for (const char* id : {"1", "4", "7", "9", "11"}) {
        out.push_back(same_bytes(std::string("figures_") + id, root, [&](const fs::path& d, unsigned) {
            return run_cli({"figures", "--id", id, "--outdir", d.string()});
        }));
    }
    for (const char* cfg : {"viscous", "trap", "maxwell_normalized", "jeffreys", "subdiffusive", "hydrodynamic"}) {
        out.push_back(same_bytes(std::string("simulate_") + cfg, root, [&](const fs::path& d, unsigned t) {
            return run_cli({"simulate", "--config", configs + "/" + cfg + ".ini", "--out", d.string(), "--threads",
                            std::to_string(t)});
        }));
    }
    out.push_back(same_bytes("verify_report", root, [](const fs::path& d, unsigned t) {
        const int rc = run_cli({"verify", "--suite", "fdt", "--threads", std::to_string(t), "--report",
                                (d / "r.json").string()});
        return rc == kExitVerification ? kExitOk : rc; // only bytes matter here
    }));
    fs::remove_all(root);
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    std::string configs = BROWNSPEC_CONFIG_DIR;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
        } else if (a == "--configs" && i + 1 < argc) {
            configs = argv[++i];
        } else {
            std::cerr << "usage: " << argv[0] << " [--only N[,M...]] [--configs DIR]\n";
            return 2;
        }
    }

    const checks::SimScale full{};
    const std::vector<Criterion> criteria = {
        {1, "master formula reproduces the six closed forms", 1.0, [] { return checks::master_equivalence(50); }},
        {2, "limit ladder", 1.0, [] { return checks::limit_ladder(); }},
        {3, "one-sided VACF transform gives the viscous PSD", 0.0, [] { return checks::fourier_identity(); }},
        {4, "VACF recovered from sampled MSD", 0.0, [] { return checks::msd_vacf_loop(); }},
        {5, "hydrodynamic VACF, PSD and tail consistency", 30.0, [] { return checks::hydrodynamic_consistency(50); }},
        {6, "equipartition sum rule, six media", 0.0, [] { return checks::sum_rules(); }},
        {7, "linear media simulation vs closed forms", 300.0, [&] { return checks::linear_media_simulation(full); }},
        {8, "subdiffusive simulation slopes", 300.0, [&] { return checks::subdiffusive_simulation(full); }},
        {9, "Grunwald-Letnikov derivative accuracy", 0.0, [] { return checks::gl_accuracy(); }},
        {10, "byte-identical reruns at 1 and 4 threads", 0.0, [&] { return determinism(configs); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> results;
        std::string error;
        try {
            results = c.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = error.empty() && !results.empty();
        for (const auto& r : results) pass = pass && r.pass;
        const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
        pass = pass && in_time;
        if (!pass) ++failed;

        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " ("
                  << results.size() << " checks, " << fmt(secs) << " s";
        if (c.budget_s > 0.0) std::cout << " of " << fmt(c.budget_s) << " s";
        std::cout << ")\n";
        for (const auto& r : results) {
            std::cout << "    " << (r.pass ? "ok   " : "FAIL ") << r.name << " " << fmt(r.metric) << " <= "
                      << fmt(r.tolerance) << "\n";
        }
        if (!error.empty()) std::cout << "    error: " << error << "\n";
        if (!in_time) std::cout << "    over the runtime budget\n";
        std::cout.flush();
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
