#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "fractalopt/core.hpp"
#include "fractalopt/trace.hpp"

namespace fractalopt::sfs {

struct SfsConfig {
    std::size_t population_size = 50;
    std::size_t max_generations = 500;
    std::size_t diffusion_count = 1;
    double walk_choice_prob = 0.75;  ///< chance of the best-centred walk per candidate
    std::optional<double> target_fitness;
    std::uint64_t seed = 0;
    std::size_t threads = 1;  ///< execution only; results do not depend on it

    void validate() const;
};

enum class Phase { initialized, diffused, first_updated, second_updated };

/// Called with the population after each phase of each generation
/// (generation 0 for initialization).
using Observer = std::function<void(Phase, std::size_t generation, const Population&)>;

/// Static diffusion: generates `diffusion_count` candidates around `p` and
/// returns the best one (the first among equals). Each candidate picks the
/// best-centred walk with probability walk_choice_prob, otherwise the
/// point-centred walk, is repaired into bounds and evaluated.
Point diffuse(const Point& p, const Point& bp, std::size_t generation, const SfsConfig& config,
              const Bounds& bounds, const Objective& objective, RandomSource& rng);

/// P_r(j) - eps * (P_t(j) - P_i(j))
double first_update_component(double pr, double pt, double pi, double eps);

/// P'_i - eps_hat * (P'_t - BP)
Vector second_update_towards_best(std::span<const double> pi, std::span<const double> pt,
                                  std::span<const double> bp, double eps_hat);

/// P'_i + eps_hat * (P'_t - P'_r)
Vector second_update_difference(std::span<const double> pi, std::span<const double> pt,
                                std::span<const double> pr, double eps_hat);

/// Two indices t != r, both different from i, uniform without replacement
/// from [0, n). Requires n >= 3; consumes two uniforms.
std::pair<std::size_t, std::size_t> pick_two_others(std::size_t i, std::size_t n,
                                                    RandomSource& rng);

/// Elementwise, rank-gated update of point i. Returns the unrepaired
/// candidate, or nothing when no component passed the gate.
/// Draw order: t, r, then per component the gate and (if passed) eps.
std::optional<Vector> first_update_candidate(std::size_t i, std::span<const Point> points,
                                             double pa_i, RandomSource& rng);

/// Whole-vector update of point i. Returns the unrepaired candidate, or
/// nothing when the gate was not passed.
/// Draw order: gate, t, r, branch selector, eps_hat.
std::optional<Vector> second_update_candidate(std::size_t i, std::span<const Point> points,
                                              double pa_i, std::span<const double> bp,
                                              RandomSource& rng);

/// First update process over the whole population. Candidates are built from
/// the population as it stood on entry, repaired, evaluated and accepted
/// only on strict improvement.
Population first_update(const Population& population, const Bounds& bounds,
                        const Objective& objective, RandomSource& rng);

/// Second update process, ranking the given population afresh and moving
/// relative to `bp`.
Population second_update(const Population& population, const Point& bp, const Bounds& bounds,
                         const Objective& objective, RandomSource& rng);

/// Full generational loop. Every point of every phase draws from its own
/// stream derived from (seed, generation, phase, index), so the result is
/// independent of config.threads.
RunResult run(const SfsConfig& config, const Objective& objective, const Bounds& bounds,
              const Observer& observer = {});

/// Same, using the objective's default bounds.
RunResult run(const SfsConfig& config, const Objective& objective);

}  // namespace fractalopt::sfs
