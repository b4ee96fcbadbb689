// fractalopt: run seeded SFS / FS experiments on the benchmark registry.
//
//   fractalopt list-benchmarks [--dim d]
//   fractalopt run [--config file] [--algorithm sfs|fs] [--benchmark name] [--dim d]
//                  [--pop N] [--generations G] [--diffusions q] [--walk p]
//                  [--seed s | --seeds s1,s2,...] [--out prefix] ...
//
// Flags override values from the config file. Exit codes: 0 success,
// 1 validation error, 2 runtime or objective error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fractalopt/benchmarks.hpp"
#include "fractalopt/experiment.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw fractalopt::ValidationError("cannot read config file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_benchmarks(std::size_t dim) {
    std::printf("%-12s %4s %12s %12s %s\n", "name", "dim", "lower", "upper", "optimum");
    for (const auto& s : fractalopt::bench::list_benchmarks(dim)) {
        std::printf("%-12s %4zu %12g %12g %s\n", s.name.c_str(), s.dimension, s.lower, s.upper,
                    fractalopt::format_real(s.optimum_value).c_str());
    }
}

void print_outcome(const fractalopt::harness::ExperimentConfig& cfg,
                   const fractalopt::harness::ExperimentOutcome& outcome) {
    using fractalopt::format_real;
    std::printf("%s on %s (d=%zu)\n", std::string(to_string(cfg.algorithm)).c_str(),
                cfg.benchmark.c_str(), cfg.dimension);
    for (const auto& run : outcome.runs) {
        std::printf("  seed %-20llu best %-24s evals %zu gens %zu\n",
                    static_cast<unsigned long long>(run.seed),
                    format_real(run.result.best_point.fitness).c_str(), run.result.evaluations,
                    run.result.generations_run);
    }
    const auto& s = outcome.stats;
    std::printf("best %s  median %s  mean %s  std %s  worst %s\n", format_real(s.best).c_str(),
                format_real(s.median).c_str(), format_real(s.mean).c_str(),
                format_real(s.std_dev).c_str(), format_real(s.worst).c_str());
    std::printf("total evaluations %zu  wall time %.3f s\n", s.total_evaluations,
                s.wall_time_seconds);
    if (!cfg.output_prefix.empty()) {
        std::printf("wrote %s\n",
                    fractalopt::harness::summary_path(cfg.output_prefix).string().c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic Fractal Search / Fractal Search experiment runner"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list-benchmarks", "Print the benchmark registry");
    std::size_t list_dim = 2;
    list->add_option("--dim", list_dim, "Dimension used for the listing")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "Run a seeded experiment batch");
    std::string config_path;
    run->add_option("--config", config_path, "key = value config document");

    // Overrides are kept as text and validated together with the file.
    std::map<std::string, std::string> overrides;
    auto add_override = [&](const std::string& flag, const std::string& key,
                            const std::string& help) {
        run->add_option_function<std::string>(
            flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
    };
    add_override("--algorithm", "algorithm", "sfs or fs");
    add_override("--benchmark", "benchmark", "Registered benchmark name");
    add_override("--dim", "dim", "Problem dimension");
    add_override("--pop", "pop", "Population size (fs: initial population)");
    add_override("--generations", "generations", "Maximum generations");
    add_override("--diffusions", "diffusions", "Diffusion candidates per point (sfs)");
    add_override("--walk", "walk", "Probability of the best-centred walk, in [0,1] (sfs)");
    add_override("--target", "target", "Stop once best fitness <= target (sfs)");
    add_override("--seed", "seed", "Single seed");
    add_override("--seeds", "seeds", "Comma-separated seed list");
    add_override("--out", "out", "Output prefix for trace CSVs and summary JSON");
    add_override("--threads", "threads", "Worker threads per run");
    add_override("--offspring", "offspring", "Offspring per particle (fs)");
    add_override("--survivors", "survivors", "Survivors per generation (fs)");
    add_override("--levy-prob", "levy_prob", "Probability of a levy step (fs)");
    add_override("--beta", "beta", "Levy exponent (fs)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (list->parsed()) {
            print_benchmarks(list_dim);
            return 0;
        }

        fractalopt::harness::KeyValues values;
        if (!config_path.empty()) {
            values = fractalopt::harness::parse_key_values(read_file(config_path));
        } else {
            values["algorithm"] = "sfs";
        }
        if (overrides.count("seed") && !overrides.count("seeds")) {
            values.erase("seeds");
        }
        if (overrides.count("seeds")) {
            values.erase("seed");
        }
        for (const auto& [k, v] : overrides) {
            values[k] = v;
        }
        const auto cfg = fractalopt::harness::build_config(values);
        const auto outcome = fractalopt::harness::run_experiment(cfg);
        print_outcome(cfg, outcome);
        return 0;
    } catch (const fractalopt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
