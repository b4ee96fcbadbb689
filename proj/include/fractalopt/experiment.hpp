#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fractalopt/fractal_search.hpp"
#include "fractalopt/sfs.hpp"
#include "fractalopt/trace.hpp"

namespace fractalopt::harness {

enum class Algorithm { sfs, fs };

std::string_view to_string(Algorithm a);

/// Raw `key = value` pairs, before validation.
using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Keys accepted in config documents (and as CLI overrides).
const std::vector<std::string>& known_keys();

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::sfs;
    std::string benchmark;
    std::size_t dimension = 0;
    sfs::SfsConfig sfs;  ///< seed field unused; see `seeds`
    fs::FsConfig fs;     ///< seed field unused; see `seeds`
    std::vector<std::uint64_t> seeds;
    std::string output_prefix;  ///< empty: do not write files
};

/// Splits a document of `key = value` lines. `#` starts a comment; blank
/// lines are skipped. Duplicate keys keep the last value.
KeyValues parse_key_values(std::string_view text);

/// Validates and applies defaults. Required: algorithm, benchmark, dim and
/// seeds (or seed). Throws ValidationError naming the offending key.
ExperimentConfig build_config(const KeyValues& values);

/// parse_key_values followed by build_config.
ExperimentConfig parse_config(std::string_view text);

struct SummaryStats {
    double best = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;  ///< sample (n - 1) deviation; 0 for one seed
    double worst = 0.0;
    std::size_t total_evaluations = 0;
    double wall_time_seconds = 0.0;
};

/// Statistics over final best fitness values. Order of `finals` is irrelevant.
SummaryStats summarize(std::vector<double> finals);

struct SeedRun {
    std::uint64_t seed = 0;
    RunResult result;
};

struct ExperimentOutcome {
    std::vector<SeedRun> runs;  ///< in config seed order
    SummaryStats stats;
};

/// Runs one engine invocation per seed. When output_prefix is set, writes
/// `<prefix>_seed<seed>.csv` per seed and `<prefix>_summary.json`.
/// Engine failures are rethrown with the seed named in the message.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// JSON summary document. Deliberately excludes wall time so that repeated
/// runs produce identical bytes.
std::string summary_json(const ExperimentConfig& config, const ExperimentOutcome& outcome);

std::filesystem::path trace_path(const std::string& prefix, std::uint64_t seed);
std::filesystem::path summary_path(const std::string& prefix);

}  // namespace fractalopt::harness
