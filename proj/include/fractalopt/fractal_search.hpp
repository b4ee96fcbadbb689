#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fractalopt/core.hpp"
#include "fractalopt/trace.hpp"
#include "fractalopt/walks.hpp"

namespace fractalopt::fs {

/// Particle carrying a share of potential energy.
struct EnergyParticle {
    Vector coords;
    double energy = 1.0;
    double fitness = std::numeric_limits<double>::quiet_NaN();
};

struct FsConfig {
    std::size_t initial_population = 50;
    std::size_t offspring_per_particle = 5;
    std::size_t survivor_count = 50;
    std::size_t max_generations = 500;  ///< 0 evaluates the initial population only
    double levy_prob = 0.5;
    double beta = kDefaultLevyBeta;
    std::uint64_t seed = 0;
    std::size_t threads = 1;  ///< execution only; results do not depend on it

    void validate() const;
};

/// Gaussian step spread as a fraction of the box width, before energy scaling.
inline constexpr double kGaussianWidthFraction = 1.0 / 20.0;
/// Levy step scale as a fraction of the box width, before energy scaling.
inline constexpr double kLevyWidthFraction = 1.0 / 2.0;

/// Raw displacement of one offspring. With probability levy_prob every
/// component moves by energy * levy * width/2, otherwise by
/// energy * N(0,1) * width/20.
Vector diffusion_step(double energy, const FsConfig& config, const Bounds& bounds,
                      RandomSource& rng);

/// Splits the parent into offspring_per_particle children, each holding
/// energy / p, displaced by diffusion_step, repaired and evaluated.
std::vector<EnergyParticle> fs_diffuse(const EnergyParticle& particle, const FsConfig& config,
                                       const Bounds& bounds, const Objective& objective,
                                       RandomSource& rng);

/// The k fittest particles in ascending fitness, stable by input order.
std::vector<EnergyParticle> fs_select_survivors(std::span<const EnergyParticle> particles,
                                                std::size_t k);

struct GenerationOutcome {
    std::vector<EnergyParticle> survivors;
    std::size_t pool_size = 0;
};

/// One generation: pool = current particles followed by each particle's
/// offspring (in particle order), truncated to survivor_count.
/// Particle i draws from the stream (seed, generation, fs_diffusion, i).
GenerationOutcome fs_generation(std::span<const EnergyParticle> particles, std::size_t generation,
                                const FsConfig& config, const Bounds& bounds,
                                const Objective& objective);

using Observer =
    std::function<void(std::size_t generation, std::span<const EnergyParticle> particles)>;

RunResult fs_run(const FsConfig& config, const Objective& objective, const Bounds& bounds,
                 const Observer& observer = {});

RunResult fs_run(const FsConfig& config, const Objective& objective);

}  // namespace fractalopt::fs
