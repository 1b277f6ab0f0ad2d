// Command-line entry point: run experiment configs, the quick facts suite,
// or density analytics over a return-set CSV.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linrec/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailure = 2;
constexpr int kExitInvalidConfig = 3;

std::filesystem::path resolve_out(const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("LINREC_OUT"); env != nullptr && *env != '\0') return env;
    return "out";
}

int finish(const linrec::RunReport& rep) {
    for (const auto& a : rep.assertions) {
        std::cout << (a.pass ? "PASS " : "FAIL ") << a.name;
        if (!a.detail.empty()) std::cout << " [" << a.detail << "]";
        std::cout << '\n';
    }
    std::cout << (rep.all_pass() ? "OK" : "FAILED") << " " << rep.experiment << '\n';
    return rep.all_pass() ? kExitPass : kExitAssertionFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linrec: finite-horizon laboratory for two recurrence counterexample operators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 42;
    bool parallel = false;
    std::string csv_path;

    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", config_path, "config file (key = value with [section] headers)")
        ->required();

    auto* facts_cmd = app.add_subcommand("facts", "run the closed-form inequality sweeps");

    auto* density_cmd = app.add_subcommand("density", "density report for a return-set CSV");
    density_cmd->add_option("returnset", csv_path, "CSV with hit times in column n")->required();

    for (auto* cmd : {run_cmd, facts_cmd, density_cmd}) {
        cmd->add_option("--out", out_dir, "output directory (fallback: LINREC_OUT, then ./out)");
        cmd->add_option("--seed", seed, "random seed for randomized recipes");
        cmd->add_flag("--parallel", parallel, "parallel per-block computation where safe");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const auto out = resolve_out(out_dir);
        if (run_cmd->parsed()) {
            const auto cfg = linrec::Config::parse_file(config_path);
            return finish(linrec::run(cfg, out, seed, parallel));
        }
        if (facts_cmd->parsed()) {
            linrec::Config cfg;
            cfg.set("experiment", "facts-suite");
            return finish(linrec::run(cfg, out, seed, parallel));
        }
        // density
        std::ifstream in(csv_path);
        if (!in) {
            std::cerr << "cannot read: " << csv_path << '\n';
            return kExitInvalidConfig;
        }
        std::ostringstream os;
        os << in.rdbuf();
        const auto rs = linrec::parse_returnset_csv(os.str());
        const auto rep = linrec::build_report(rs);
        std::filesystem::create_directories(out);
        const auto path = std::filesystem::path(out) / "density_report.csv";
        std::ofstream of(path);
        of << linrec::report_csv(rep);
        std::cout << linrec::report_csv(rep);
        std::cout << "written " << path.string() << '\n';
        return kExitPass;
    } catch (const linrec::config_error& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAssertionFailure;
    }
}
