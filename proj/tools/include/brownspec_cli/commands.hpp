#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace brownspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitVerification = 4;

// "lo:hi:n" (log-spaced, both ends included), "lin:lo:hi:n", or "a,b,c".
std::vector<double> parse_grid(const std::string& spec);

struct SpectrumOptions {
    std::string config;
    std::string medium;
    bool normalized = false;  // force normalized output
    bool dimensional = false; // rad/s axis and SI values; needs a full SI parameter set
    std::string grid = "1e-2:1e2:400";
    std::string out; // CSV path; empty writes to the output stream without a manifest
    std::map<std::string, double> overrides;
};

struct FiguresOptions {
    int id = 0;
    std::string outdir;
};

struct SimulateOptions {
    std::string config;
    std::string outdir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

struct VerifyOptions {
    std::string suite = "all";
    std::uint64_t seed = 20240611;
    unsigned threads = 1;
    std::string report; // optional JSON report path
};

struct CheckResult {
    std::string name;
    double metric = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out);
int cmd_figures(const FiguresOptions& opts, std::ostream& out);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

// Checks of one suite ("limits", "fdt", "simulation"); "all" runs the three.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts);

// Full command line (argv[0] is the program name). Maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace brownspec::cli
