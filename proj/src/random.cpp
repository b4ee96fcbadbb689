#include "fractalopt/random.hpp"

#include <cmath>
#include <numbers>

namespace fractalopt {

std::size_t RandomSource::index(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SeededRandom::SeededRandom(std::uint64_t seed) : seed_(seed), engine_(seed) {}

SeededRandom SeededRandom::derive(std::uint64_t master_seed, std::uint64_t generation,
                                  StreamPhase phase, std::uint64_t index) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ generation);
    h = mix64(h ^ static_cast<std::uint64_t>(phase));
    h = mix64(h ^ index);
    return SeededRandom(h);
}

double SeededRandom::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRandom::normal() {
    if (cached_normal_) {
        double z = *cached_normal_;
        cached_normal_.reset();
        return z;
    }
    // 1 - u lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

}  // namespace fractalopt
