#include "fractalopt/sfs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fractalopt/detail/parallel.hpp"
#include "fractalopt/walks.hpp"

namespace fractalopt::sfs {
namespace {

void require_update_size(std::size_t n, const char* what) {
    if (n < 3) {
        throw ValidationError(std::string(what) + ": need at least 3 points");
    }
}

// Builds candidates for every index against a fixed snapshot, then merges
// them in index order with strict-improvement acceptance.
template <typename MakeCandidate>
Population apply_greedy(const Population& population, std::size_t threads,
                        MakeCandidate&& make_candidate) {
    std::vector<std::optional<Point>> candidates(population.size());
    detail::parallel_for(population.size(), threads,
                         [&](std::size_t i) { candidates[i] = make_candidate(i); });
    Population next = population;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] && candidates[i]->fitness < next[i].fitness) {
            next.replace(i, std::move(*candidates[i]));
        }
    }
    return next;
}

std::optional<Point> finish_candidate(std::optional<Vector> coords, const Bounds& bounds,
                                      const Objective& objective, RandomSource& rng) {
    if (!coords) {
        return std::nullopt;
    }
    return make_point(repair(std::move(*coords), bounds, rng), objective);
}

Population first_update_with(const Population& population, const Bounds& bounds,
                             const Objective& objective, std::size_t threads,
                             const std::function<RandomSource&(std::size_t)>& stream_for) {
    require_update_size(population.size(), "first_update");
    const Vector pa = rank_probabilities(population);
    const std::span<const Point> points(population.points());
    return apply_greedy(population, threads, [&](std::size_t i) {
        RandomSource& rng = stream_for(i);
        return finish_candidate(first_update_candidate(i, points, pa[i], rng), bounds,
                                objective, rng);
    });
}

Population second_update_with(const Population& population, const Point& bp,
                              const Bounds& bounds, const Objective& objective,
                              std::size_t threads,
                              const std::function<RandomSource&(std::size_t)>& stream_for) {
    require_update_size(population.size(), "second_update");
    if (bp.coords.size() != bounds.dimension()) {
        throw ValidationError("second_update: best point dimension mismatch");
    }
    const Vector pa = rank_probabilities(population);
    const std::span<const Point> points(population.points());
    return apply_greedy(population, threads, [&](std::size_t i) {
        RandomSource& rng = stream_for(i);
        return finish_candidate(second_update_candidate(i, points, pa[i], bp.coords, rng),
                                bounds, objective, rng);
    });
}

}  // namespace

void SfsConfig::validate() const {
    // Both update processes pick two partners distinct from the point itself.
    if (population_size < 3) {
        throw ValidationError("sfs: population size must be >= 3");
    }
    if (max_generations < 1) {
        throw ValidationError("sfs: max_generations must be >= 1");
    }
    if (diffusion_count < 1) {
        throw ValidationError("sfs: diffusion count must be >= 1");
    }
    if (!(walk_choice_prob >= 0.0 && walk_choice_prob <= 1.0)) {
        throw ValidationError("sfs: walk_choice_prob must be in [0,1]");
    }
    if (target_fitness && !std::isfinite(*target_fitness)) {
        throw ValidationError("sfs: target_fitness must be finite");
    }
    if (threads < 1) {
        throw ValidationError("sfs: threads must be >= 1");
    }
}

Point diffuse(const Point& p, const Point& bp, std::size_t generation, const SfsConfig& config,
              const Bounds& bounds, const Objective& objective, RandomSource& rng) {
    if (config.diffusion_count < 1) {
        throw ValidationError("diffuse: diffusion count must be >= 1");
    }
    if (!p.evaluated() || !bp.evaluated()) {
        throw ValidationError("diffuse: points must be evaluated");
    }
    const Vector sigma = diffusion_sigma(generation, p.coords, bp.coords);
    std::optional<Point> best;
    for (std::size_t k = 0; k < config.diffusion_count; ++k) {
        const bool towards_best = rng.uniform() < config.walk_choice_prob;
        Vector coords = towards_best ? gaussian_walk_first(p.coords, bp.coords, sigma, rng)
                                     : gaussian_walk_second(p.coords, sigma, rng);
        Point candidate = make_point(repair(std::move(coords), bounds, rng), objective);
        if (!best || candidate.fitness < best->fitness) {
            best = std::move(candidate);
        }
    }
    return std::move(*best);
}

double first_update_component(double pr, double pt, double pi, double eps) {
    return pr - eps * (pt - pi);
}

Vector second_update_towards_best(std::span<const double> pi, std::span<const double> pt,
                                  std::span<const double> bp, double eps_hat) {
    if (pi.size() != pt.size() || pi.size() != bp.size()) {
        throw ValidationError("second_update: length mismatch");
    }
    Vector out(pi.size());
    for (std::size_t j = 0; j < pi.size(); ++j) {
        out[j] = pi[j] - eps_hat * (pt[j] - bp[j]);
    }
    return out;
}

Vector second_update_difference(std::span<const double> pi, std::span<const double> pt,
                                std::span<const double> pr, double eps_hat) {
    if (pi.size() != pt.size() || pi.size() != pr.size()) {
        throw ValidationError("second_update: length mismatch");
    }
    Vector out(pi.size());
    for (std::size_t j = 0; j < pi.size(); ++j) {
        out[j] = pi[j] + eps_hat * (pt[j] - pr[j]);
    }
    return out;
}

std::pair<std::size_t, std::size_t> pick_two_others(std::size_t i, std::size_t n,
                                                    RandomSource& rng) {
    if (n < 3 || i >= n) {
        throw ValidationError("pick_two_others: need n >= 3 and i < n");
    }
    std::size_t t = rng.index(n - 1);
    if (t >= i) {
        ++t;
    }
    const std::size_t lo = std::min(i, t);
    const std::size_t hi = std::max(i, t);
    std::size_t r = rng.index(n - 2);
    if (r >= lo) {
        ++r;
    }
    if (r >= hi) {
        ++r;
    }
    return {t, r};
}

std::optional<Vector> first_update_candidate(std::size_t i, std::span<const Point> points,
                                             double pa_i, RandomSource& rng) {
    const auto [t, r] = pick_two_others(i, points.size(), rng);
    const Vector& pi = points[i].coords;
    Vector out = pi;
    bool modified = false;
    for (std::size_t j = 0; j < pi.size(); ++j) {
        if (rng.uniform() > pa_i) {
            const double eps = rng.uniform();
            out[j] = first_update_component(points[r].coords[j], points[t].coords[j], pi[j], eps);
            modified = true;
        }
    }
    if (!modified) {
        return std::nullopt;
    }
    return out;
}

std::optional<Vector> second_update_candidate(std::size_t i, std::span<const Point> points,
                                              double pa_i, std::span<const double> bp,
                                              RandomSource& rng) {
    if (!(rng.uniform() > pa_i)) {
        return std::nullopt;
    }
    const auto [t, r] = pick_two_others(i, points.size(), rng);
    const double selector = rng.uniform();
    const double eps_hat = rng.uniform();
    if (selector <= 0.5) {
        return second_update_towards_best(points[i].coords, points[t].coords, bp, eps_hat);
    }
    return second_update_difference(points[i].coords, points[t].coords, points[r].coords,
                                    eps_hat);
}

Population first_update(const Population& population, const Bounds& bounds,
                        const Objective& objective, RandomSource& rng) {
    return first_update_with(population, bounds, objective, 1,
                             [&](std::size_t) -> RandomSource& { return rng; });
}

Population second_update(const Population& population, const Point& bp, const Bounds& bounds,
                         const Objective& objective, RandomSource& rng) {
    return second_update_with(population, bp, bounds, objective, 1,
                              [&](std::size_t) -> RandomSource& { return rng; });
}

RunResult run(const SfsConfig& config, const Objective& objective, const Bounds& bounds,
              const Observer& observer) {
    config.validate();
    if (bounds.dimension() != objective.dimension()) {
        std::ostringstream msg;
        msg << "sfs: bounds dimension " << bounds.dimension() << " does not match objective "
            << "dimension " << objective.dimension();
        throw ValidationError(msg.str());
    }
    const CountingObjective counted(objective);
    const std::size_t n = config.population_size;
    auto notify = [&](Phase phase, std::size_t g, const Population& pop) {
        if (observer) {
            observer(phase, g, pop);
        }
    };

    std::vector<Point> initial(n);
    detail::parallel_for(n, config.threads, [&](std::size_t i) {
        auto rng = SeededRandom::derive(config.seed, 0, StreamPhase::init, i);
        Point p = initialize_point(bounds, rng);
        p.fitness = evaluate_checked(counted, p.coords);
        initial[i] = std::move(p);
    });
    Population population(std::move(initial));
    notify(Phase::initialized, 0, population);

    RunResult result;
    std::vector<SeededRandom> streams;
    streams.reserve(n);
    auto reset_streams = [&](std::size_t g, StreamPhase phase) {
        streams.clear();
        for (std::size_t i = 0; i < n; ++i) {
            streams.push_back(SeededRandom::derive(config.seed, g, phase, i));
        }
    };
    auto stream_for = [&](std::size_t i) -> RandomSource& { return streams[i]; };

    for (std::size_t g = 1; g <= config.max_generations; ++g) {
        reset_streams(g, StreamPhase::diffusion);
        const Point bp = population.best();
        population = apply_greedy(population, config.threads, [&](std::size_t i) {
            return std::optional<Point>(
                diffuse(population[i], bp, g, config, bounds, counted, streams[i]));
        });
        notify(Phase::diffused, g, population);

        reset_streams(g, StreamPhase::first_update);
        population = first_update_with(population, bounds, counted, config.threads, stream_for);
        notify(Phase::first_updated, g, population);

        reset_streams(g, StreamPhase::second_update);
        const Point bp_updated = population.best();
        population = second_update_with(population, bp_updated, bounds, counted, config.threads,
                                        stream_for);
        notify(Phase::second_updated, g, population);

        result.trace.records.push_back(
            {g, counted.count(), population.best().fitness, population.mean_fitness()});
        result.generations_run = g;
        if (config.target_fitness && population.best().fitness <= *config.target_fitness) {
            break;
        }
    }
    result.best_point = population.best();
    result.evaluations = counted.count();
    return result;
}

RunResult run(const SfsConfig& config, const Objective& objective) {
    return run(config, objective, objective.default_bounds());
}

}  // namespace fractalopt::sfs
