#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace fractalopt {

/// Source of the uniform and standard-normal draws consumed by the search
/// operators. Every random quantity in the library is routed through this
/// interface so tests can substitute scripted or recording sources.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Uniform real in [0, 1).
    virtual double uniform() = 0;

    /// Standard normal N(0, 1).
    virtual double normal() = 0;

    /// Uniform index in [0, n). Consumes exactly one uniform draw.
    std::size_t index(std::size_t n);
};

/// Phase tags mixed into derived stream seeds.
enum class StreamPhase : std::uint64_t {
    init = 1,
    diffusion = 2,
    first_update = 3,
    second_update = 4,
    fs_diffusion = 5,
};

/// Deterministic generator built on std::mt19937_64, whose output sequence is
/// fixed by the standard. Uniforms take the top 53 bits; normals use the
/// Box-Muller transform with the second variate cached.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed);

    /// Independent stream for one (generation, phase, index) cell of a run.
    /// The same arguments always give the same stream, which is what makes
    /// serial and threaded execution agree.
    static SeededRandom derive(std::uint64_t master_seed, std::uint64_t generation,
                               StreamPhase phase, std::uint64_t index);

    double uniform() override;
    double normal() override;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::optional<double> cached_normal_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace fractalopt
