#include "fractalopt/fractal_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fractalopt/detail/parallel.hpp"

namespace fractalopt::fs {
namespace {

Point best_of(std::span<const EnergyParticle> particles) {
    const auto it = std::min_element(particles.begin(), particles.end(),
                                     [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
    return Point{it->coords, it->fitness};
}

double mean_fitness(std::span<const EnergyParticle> particles) {
    double sum = 0.0;
    for (const auto& p : particles) {
        sum += p.fitness;
    }
    return sum / static_cast<double>(particles.size());
}

}  // namespace

void FsConfig::validate() const {
    if (initial_population < 1) {
        throw ValidationError("fs: initial population must be >= 1");
    }
    if (offspring_per_particle < 1) {
        throw ValidationError("fs: offspring per particle must be >= 1");
    }
    if (survivor_count < 1) {
        throw ValidationError("fs: survivor count must be >= 1");
    }
    if (survivor_count > initial_population * offspring_per_particle) {
        throw ValidationError("fs: survivor count must not exceed initial population x offspring");
    }
    if (!(levy_prob >= 0.0 && levy_prob <= 1.0)) {
        throw ValidationError("fs: levy_prob must be in [0,1]");
    }
    if (!(beta > 0.3 && beta < 1.99)) {
        throw ValidationError("fs: beta must be in (0.3, 1.99)");
    }
    if (threads < 1) {
        throw ValidationError("fs: threads must be >= 1");
    }
}

Vector diffusion_step(double energy, const FsConfig& config, const Bounds& bounds,
                      RandomSource& rng) {
    Vector step(bounds.dimension());
    if (rng.uniform() < config.levy_prob) {
        for (std::size_t j = 0; j < step.size(); ++j) {
            step[j] = energy * levy_sample(config.beta, rng) * bounds.width(j) * kLevyWidthFraction;
        }
    } else {
        for (std::size_t j = 0; j < step.size(); ++j) {
            step[j] = energy * rng.normal() * bounds.width(j) * kGaussianWidthFraction;
        }
    }
    return step;
}

std::vector<EnergyParticle> fs_diffuse(const EnergyParticle& particle, const FsConfig& config,
                                       const Bounds& bounds, const Objective& objective,
                                       RandomSource& rng) {
    const std::size_t p = config.offspring_per_particle;
    if (p < 1) {
        throw ValidationError("fs_diffuse: offspring per particle must be >= 1");
    }
    if (!(particle.energy > 0.0)) {
        throw ValidationError("fs_diffuse: particle energy must be positive");
    }
    if (particle.coords.size() != bounds.dimension()) {
        throw ValidationError("fs_diffuse: particle dimension does not match bounds");
    }
    const double share = particle.energy / static_cast<double>(p);
    std::vector<EnergyParticle> offspring;
    offspring.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        const Vector step = diffusion_step(particle.energy, config, bounds, rng);
        Vector coords = particle.coords;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            coords[j] += step[j];
        }
        EnergyParticle child{repair(std::move(coords), bounds, rng), share};
        child.fitness = evaluate_checked(objective, child.coords);
        offspring.push_back(std::move(child));
    }
    return offspring;
}

std::vector<EnergyParticle> fs_select_survivors(std::span<const EnergyParticle> particles,
                                                std::size_t k) {
    if (particles.empty()) {
        throw ValidationError("fs_select_survivors: empty input");
    }
    if (k < 1) {
        throw ValidationError("fs_select_survivors: k must be >= 1");
    }
    std::vector<std::size_t> order(particles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return particles[a].fitness < particles[b].fitness;
    });
    order.resize(std::min(k, order.size()));
    std::vector<EnergyParticle> out;
    out.reserve(order.size());
    for (std::size_t idx : order) {
        out.push_back(particles[idx]);
    }
    return out;
}

GenerationOutcome fs_generation(std::span<const EnergyParticle> particles, std::size_t generation,
                                const FsConfig& config, const Bounds& bounds,
                                const Objective& objective) {
    std::vector<std::vector<EnergyParticle>> broods(particles.size());
    detail::parallel_for(particles.size(), config.threads, [&](std::size_t i) {
        auto rng = SeededRandom::derive(config.seed, generation, StreamPhase::fs_diffusion, i);
        broods[i] = fs_diffuse(particles[i], config, bounds, objective, rng);
    });
    std::vector<EnergyParticle> pool(particles.begin(), particles.end());
    for (auto& brood : broods) {
        std::move(brood.begin(), brood.end(), std::back_inserter(pool));
    }
    GenerationOutcome outcome;
    outcome.pool_size = pool.size();
    outcome.survivors = fs_select_survivors(pool, config.survivor_count);
    return outcome;
}

RunResult fs_run(const FsConfig& config, const Objective& objective, const Bounds& bounds,
                 const Observer& observer) {
    config.validate();
    if (bounds.dimension() != objective.dimension()) {
        std::ostringstream msg;
        msg << "fs: bounds dimension " << bounds.dimension() << " does not match objective "
            << "dimension " << objective.dimension();
        throw ValidationError(msg.str());
    }
    const CountingObjective counted(objective);

    std::vector<EnergyParticle> particles(config.initial_population);
    detail::parallel_for(particles.size(), config.threads, [&](std::size_t i) {
        auto rng = SeededRandom::derive(config.seed, 0, StreamPhase::init, i);
        Point p = initialize_point(bounds, rng);
        particles[i] = EnergyParticle{std::move(p.coords), 1.0};
        particles[i].fitness = evaluate_checked(counted, particles[i].coords);
    });
    if (observer) {
        observer(0, particles);
    }

    RunResult result;
    for (std::size_t g = 1; g <= config.max_generations; ++g) {
        particles = fs_generation(particles, g, config, bounds, counted).survivors;
        if (observer) {
            observer(g, particles);
        }
        // Survivors are sorted, so the front is the best of the elitist pool.
        result.trace.records.push_back(
            {g, counted.count(), particles.front().fitness, mean_fitness(particles)});
        result.generations_run = g;
    }
    result.best_point = best_of(particles);
    result.evaluations = counted.count();
    return result;
}

RunResult fs_run(const FsConfig& config, const Objective& objective) {
    return fs_run(config, objective, objective.default_bounds());
}

}  // namespace fractalopt::fs
