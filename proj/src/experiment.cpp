#include "fractalopt/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fractalopt/benchmarks.hpp"

namespace fractalopt::harness {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(std::string_view key, std::string_view value, std::string_view expected) {
    std::ostringstream msg;
    msg << "invalid value '" << value << "' for key '" << key << "': expected " << expected;
    throw ValidationError(msg.str());
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text, T min_value) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < min_value) {
        invalid(key, text, "an integer >= " + std::to_string(min_value));
    }
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        invalid(key, text, "a finite real number");
    }
    return value;
}

double parse_probability(std::string_view key, std::string_view text) {
    const double value = parse_real(key, text);
    if (!(value >= 0.0 && value <= 1.0)) {
        invalid(key, trim(text), "a value in [0,1]");
    }
    return value;
}

std::vector<std::uint64_t> parse_seeds(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') {
            invalid(key, text, "a comma-separated list of seeds");
        }
        text = trim(text.substr(1, text.size() - 2));
    }
    std::vector<std::uint64_t> seeds;
    if (text.empty()) {
        throw ValidationError("key '" + std::string(key) + "': at least one seed is required");
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                             : comma - start);
        seeds.push_back(parse_integer<std::uint64_t>(key, item, 0));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return seeds;
}

const std::string* find(const KeyValues& values, std::string_view key) {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
}

const std::string& require(const KeyValues& values, std::string_view key) {
    if (const auto* v = find(values, key)) {
        return *v;
    }
    throw ValidationError("missing required key '" + std::string(key) + "'");
}

double median_of_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string_view to_string(Algorithm a) {
    return a == Algorithm::sfs ? "sfs" : "fs";
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "algorithm", "benchmark", "dim",      "pop",       "generations", "diffusions",
        "walk",      "target",    "seed",     "seeds",     "out",         "threads",
        "offspring", "survivors", "levy_prob", "beta",
    };
    return keys;
}

KeyValues parse_key_values(std::string_view text) {
    KeyValues values;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
            throw ValidationError("unknown config key '" + key + "' on line " +
                                  std::to_string(line_no));
        }
        values[key] = std::string(trim(line.substr(eq + 1)));
    }
    return values;
}

ExperimentConfig build_config(const KeyValues& values) {
    for (const auto& [key, value] : values) {
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
            throw ValidationError("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig cfg;

    const std::string& algorithm = require(values, "algorithm");
    if (algorithm == "sfs") {
        cfg.algorithm = Algorithm::sfs;
    } else if (algorithm == "fs") {
        cfg.algorithm = Algorithm::fs;
    } else {
        invalid("algorithm", algorithm, "one of {sfs, fs}");
    }

    cfg.benchmark = require(values, "benchmark");
    if (!bench::is_registered(cfg.benchmark)) {
        invalid("benchmark", cfg.benchmark, "a registered benchmark (see list-benchmarks)");
    }
    cfg.dimension = parse_integer<std::size_t>("dim", require(values, "dim"), 1);
    bench::spec(cfg.benchmark, cfg.dimension);  // rejects dimensions below the minimum

    if (const auto* v = find(values, "seeds")) {
        cfg.seeds = parse_seeds("seeds", *v);
    } else if (const auto* v = find(values, "seed")) {
        cfg.seeds = {parse_integer<std::uint64_t>("seed", *v, 0)};
    } else {
        throw ValidationError("missing required key 'seeds': at least one seed is required");
    }

    std::size_t threads = 1;
    if (const auto* v = find(values, "threads")) {
        threads = parse_integer<std::size_t>("threads", *v, 1);
    }
    if (const auto* v = find(values, "out")) {
        cfg.output_prefix = *v;
    }

    if (cfg.algorithm == Algorithm::sfs) {
        auto& s = cfg.sfs;
        if (const auto* v = find(values, "pop")) {
            s.population_size = parse_integer<std::size_t>("pop", *v, 3);
        }
        if (const auto* v = find(values, "generations")) {
            s.max_generations = parse_integer<std::size_t>("generations", *v, 1);
        }
        if (const auto* v = find(values, "diffusions")) {
            s.diffusion_count = parse_integer<std::size_t>("diffusions", *v, 1);
        }
        if (const auto* v = find(values, "walk")) {
            s.walk_choice_prob = parse_probability("walk", *v);
        }
        if (const auto* v = find(values, "target")) {
            s.target_fitness = parse_real("target", *v);
        }
        s.threads = threads;
        s.validate();
    } else {
        auto& f = cfg.fs;
        if (find(values, "target")) {
            throw ValidationError("key 'target' is only supported for algorithm sfs");
        }
        if (const auto* v = find(values, "pop")) {
            f.initial_population = parse_integer<std::size_t>("pop", *v, 1);
        }
        f.survivor_count = f.initial_population;
        if (const auto* v = find(values, "generations")) {
            f.max_generations = parse_integer<std::size_t>("generations", *v, 0);
        }
        if (const auto* v = find(values, "offspring")) {
            f.offspring_per_particle = parse_integer<std::size_t>("offspring", *v, 1);
        }
        if (const auto* v = find(values, "survivors")) {
            f.survivor_count = parse_integer<std::size_t>("survivors", *v, 1);
        }
        if (const auto* v = find(values, "levy_prob")) {
            f.levy_prob = parse_probability("levy_prob", *v);
        }
        if (const auto* v = find(values, "beta")) {
            f.beta = parse_real("beta", *v);
            if (!(f.beta > 0.3 && f.beta < 1.99)) {
                invalid("beta", trim(*v), "a value in (0.3, 1.99)");
            }
        }
        f.threads = threads;
        f.validate();
    }
    return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
    return build_config(parse_key_values(text));
}

SummaryStats summarize(std::vector<double> finals) {
    if (finals.empty()) {
        throw ValidationError("summarize: no results");
    }
    // Sorting first makes every statistic independent of seed order.
    std::sort(finals.begin(), finals.end());
    SummaryStats s;
    const double n = static_cast<double>(finals.size());
    s.best = finals.front();
    s.worst = finals.back();
    s.median = median_of_sorted(finals);
    double sum = 0.0;
    for (double v : finals) {
        sum += v;
    }
    s.mean = sum / n;
    if (finals.size() > 1) {
        double ss = 0.0;
        for (double v : finals) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.std_dev = std::sqrt(ss / (n - 1.0));
    }
    return s;
}

std::filesystem::path trace_path(const std::string& prefix, std::uint64_t seed) {
    return prefix + "_seed" + std::to_string(seed) + ".csv";
}

std::filesystem::path summary_path(const std::string& prefix) {
    return prefix + "_summary.json";
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    if (config.seeds.empty()) {
        throw ValidationError("experiment: at least one seed is required");
    }
    const auto started = std::chrono::steady_clock::now();
    const bench::BenchmarkObjective objective(config.benchmark, config.dimension);

    ExperimentOutcome outcome;
    std::vector<double> finals;
    std::size_t total_evaluations = 0;
    for (const auto seed : config.seeds) {
        RunResult result;
        try {
            if (config.algorithm == Algorithm::sfs) {
                auto c = config.sfs;
                c.seed = seed;
                result = sfs::run(c, objective);
            } else {
                auto c = config.fs;
                c.seed = seed;
                result = fs::fs_run(c, objective);
            }
        } catch (const ValidationError& e) {
            throw ValidationError("seed " + std::to_string(seed) + ": " + e.what());
        } catch (const ObjectiveError& e) {
            throw ObjectiveError("seed " + std::to_string(seed) + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("seed " + std::to_string(seed) + ": " + e.what());
        }
        finals.push_back(result.best_point.fitness);
        total_evaluations += result.evaluations;
        outcome.runs.push_back({seed, std::move(result)});
    }
    outcome.stats = summarize(finals);
    outcome.stats.total_evaluations = total_evaluations;
    outcome.stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (!config.output_prefix.empty()) {
        for (const auto& run : outcome.runs) {
            write_trace(run.result.trace, trace_path(config.output_prefix, run.seed));
        }
        const auto path = summary_path(config.output_prefix);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open summary file for writing: " + path.string());
        }
        out << summary_json(config, outcome);
        if (!out) {
            throw std::runtime_error("failed writing summary file: " + path.string());
        }
    }
    return outcome;
}

std::string summary_json(const ExperimentConfig& config, const ExperimentOutcome& outcome) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["algorithm"] = std::string(to_string(config.algorithm));
    doc["benchmark"] = config.benchmark;
    doc["dimension"] = config.dimension;

    ordered_json params;
    if (config.algorithm == Algorithm::sfs) {
        params["population_size"] = config.sfs.population_size;
        params["max_generations"] = config.sfs.max_generations;
        params["diffusion_count"] = config.sfs.diffusion_count;
        params["walk_choice_prob"] = config.sfs.walk_choice_prob;
        params["target_fitness"] = config.sfs.target_fitness ? ordered_json(*config.sfs.target_fitness)
                                                             : ordered_json(nullptr);
    } else {
        params["initial_population"] = config.fs.initial_population;
        params["offspring_per_particle"] = config.fs.offspring_per_particle;
        params["survivor_count"] = config.fs.survivor_count;
        params["max_generations"] = config.fs.max_generations;
        params["levy_prob"] = config.fs.levy_prob;
        params["beta"] = config.fs.beta;
    }
    doc["parameters"] = params;
    doc["seeds"] = config.seeds;

    ordered_json runs = ordered_json::array();
    for (const auto& run : outcome.runs) {
        ordered_json r;
        r["seed"] = run.seed;
        r["final_best_fitness"] = run.result.best_point.fitness;
        r["evaluations"] = run.result.evaluations;
        r["generations_run"] = run.result.generations_run;
        r["best_coords"] = run.result.best_point.coords;
        if (!config.output_prefix.empty()) {
            r["trace_file"] = trace_path(config.output_prefix, run.seed).filename().string();
        }
        runs.push_back(std::move(r));
    }
    doc["runs"] = std::move(runs);

    const auto& s = outcome.stats;
    doc["summary"] = {{"best", s.best},     {"median", s.median}, {"mean", s.mean},
                      {"std", s.std_dev},   {"worst", s.worst},
                      {"total_evaluations", s.total_evaluations}};
    return doc.dump(2) + "\n";
}

}  // namespace fractalopt::harness
