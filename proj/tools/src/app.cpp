#include <CLI11.hpp>
#include <ostream>

#include "brownspec/errors.hpp"
#include "brownspec_cli/commands.hpp"

#ifndef BROWNSPEC_VERSION
#define BROWNSPEC_VERSION "0.0.0"
#endif

namespace brownspec::cli {

namespace {

struct ParamFlag {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr ParamFlag kParamFlags[] = {
    {"--kT", "kT", "thermal energy [J]"},
    {"--N", "N", "spatial dimensions"},
    {"--R", "R", "particle radius [m]"},
    {"--m", "m", "particle mass [kg]"},
    {"--rho-p", "rho_p", "particle density [kg/m^3]"},
    {"--rho-f", "rho_f", "fluid density [kg/m^3]"},
    {"--eta", "eta", "viscosity [Pa s]"},
    {"--G", "G", "elastic modulus [Pa]"},
    {"--eta-inf", "eta_inf", "solvent viscosity of the Jeffreys fluid [Pa s]"},
    {"--mu-alpha", "mu_alpha", "springpot coefficient [Pa s^alpha]"},
    {"--alpha", "alpha", "springpot order"},
    {"--omegaRtau", "omegaRtau", "dimensionless omega_R tau"},
    {"--xi", "xi", "dimensionless eta_inf / eta"},
    {"--gamma", "gamma", "dimensionless hydrodynamic ratio"},
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal power spectra of Brownian particles in linear viscoelastic media", "brownspec"};
    app.set_version_flag("--version", BROWNSPEC_VERSION);
    app.require_subcommand(1);

    SpectrumOptions sp;
    std::map<std::string, double> flag_values;
    auto* spectrum = app.add_subcommand("spectrum", "Closed-form PSD on a frequency grid (CSV)");
    spectrum->add_option("--config", sp.config, "INI file with [context] and one medium section");
    spectrum->add_option("--medium", sp.medium, "viscous, trap, maxwell, jeffreys, subdiffusive, hydrodynamic");
    spectrum->add_flag("--normalized", sp.normalized, "dimensionless axis, PSD divided by its reference");
    spectrum->add_flag("--dimensional", sp.dimensional, "rad/s axis and SI values");
    spectrum->add_option("--grid", sp.grid, "lo:hi:n (log), lin:lo:hi:n, or a comma list")->capture_default_str();
    spectrum->add_option("--out", sp.out, "CSV path; a .manifest.json is written beside it");
    for (const auto& f : kParamFlags) {
        spectrum->add_option_function<double>(
            f.flag, [&flag_values, key = std::string(f.key)](double v) { flag_values[key] = v; }, f.help);
    }

    FiguresOptions fo;
    auto* figures = app.add_subcommand("figures", "Normalized curve sets for figures 1, 4, 7, 9, 11");
    figures->add_option("id,--id", fo.id, "figure id")->required();
    figures->add_option("--outdir", fo.outdir, "output directory")->required();

    SimulateOptions so;
    auto* simulate = app.add_subcommand("simulate", "Simulate an ensemble and write trajectory files");
    simulate->add_option("--config", so.config, "INI file with a [simulation] section")->required();
    simulate->add_option("--out,--outdir", so.outdir, "trajectory directory")->required();
    simulate->add_option_function<std::uint64_t>("--seed", [&so](std::uint64_t v) { so.seed = v; }, "master seed");
    simulate->add_option_function<unsigned>("--threads", [&so](unsigned v) { so.threads = v; }, "worker threads");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", vo.suite, "limits, fdt, simulation or all")->capture_default_str();
    verify->add_option("--seed", vo.seed, "seed for the simulation suite")->capture_default_str();
    verify->add_option("--threads", vo.threads, "worker threads")->capture_default_str();
    verify->add_option("--report", vo.report, "JSON report path");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(std::move(args));
    } catch (const CLI::Success& e) {
        out << (e.get_name() == "CallForVersion" ? std::string(BROWNSPEC_VERSION) + "\n" : app.help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (*spectrum) {
            sp.overrides = flag_values;
            return cmd_spectrum(sp, out);
        }
        if (*figures) return cmd_figures(fo, out);
        if (*simulate) return cmd_simulate(so, out);
        return cmd_verify(vo, out);
    } catch (const DivergenceError& e) {
        err << "error: numerical divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "error: parameter out of domain: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace brownspec::cli
