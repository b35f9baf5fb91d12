#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pointkg/config.hpp"
#include "pointkg/errors.hpp"
#include "pointkg/runner.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace pointkg;

int main(int argc, char** argv) {
    CLI::App app{"Klein-Gordon field with a point nonlinearity: reduced dynamics and diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string trajectory;
    int threads = 0;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config,-c", config_path, "JSON run configuration");
        if (config_required) opt->required();
        opt->check(CLI::ExistingFile);
        sub->add_option("--out,-o", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--threads,-j", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--quiet,-q", quiet, "suppress progress output");
    };

    auto* sim = app.add_subcommand("simulate", "integrate the reduced equation and write diagnostics");
    add_common(sim, true);
    auto* ver = app.add_subcommand("verify-kernels", "check the memory kernels against independent references");
    add_common(ver, false);
    auto* scan = app.add_subcommand("soliton-scan", "tabulate solitary wave amplitudes over the gap");
    add_common(scan, false);
    auto* spectrum_cmd = app.add_subcommand("spectrum", "windowed spectra of a stored trajectory");
    add_common(spectrum_cmd, true);
    spectrum_cmd->add_option("--trajectory,-t", trajectory, "trajectory.csv from simulate")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        const RunConfig cfg = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
        const RunOptions opts{out_dir, quiet};
        if (sim->parsed()) return run_simulate(cfg, opts, std::cout);
        if (ver->parsed()) return run_verify_kernels(cfg, opts, std::cout);
        if (scan->parsed()) return run_soliton_scan(cfg, opts, std::cout);
        if (spectrum_cmd->parsed()) return run_spectrum(cfg, opts, trajectory, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalFault& e) {
        std::cerr << "numerical fault: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
