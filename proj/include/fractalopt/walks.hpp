#pragma once

#include <cstddef>
#include <span>

#include "fractalopt/core.hpp"

namespace fractalopt {

/// Generation index and walk-selection probability for one diffusion pass.
struct WalkParams {
    std::size_t generation = 1;
    double walk_choice_prob = 0.75;

    void validate() const;
};

/// sigma[j] = |ln(g) / g * (p[j] - bp[j])|. Zero at g = 1.
Vector diffusion_sigma(std::size_t generation, std::span<const double> p,
                       std::span<const double> bp);

/// Walk centred on the best point:
///   out[j] = N(bp[j], sigma[j]) + (u_j * bp[j] - u'_j * p[j])
/// Per component the draws are: normal, u_j, u'_j.
Vector gaussian_walk_first(std::span<const double> p, std::span<const double> bp,
                           std::span<const double> sigma, RandomSource& rng);

/// Walk centred on the diffusing point: out[j] = N(p[j], sigma[j]).
/// One normal per component; sigma = 0 returns p exactly.
Vector gaussian_walk_second(std::span<const double> p, std::span<const double> sigma,
                            RandomSource& rng);

inline constexpr double kDefaultLevyBeta = 1.5;

/// Mantegna scale for the numerator variate:
///   [G(1+b) sin(pi b / 2) / (G((1+b)/2) b 2^((b-1)/2))]^(1/b)
double levy_sigma_u(double beta);

/// u / |v|^(1/beta).
double levy_step(double u, double v, double beta);

/// One Mantegna levy-stable step, beta in (0.3, 1.99). Draws two normals.
double levy_sample(double beta, RandomSource& rng);

}  // namespace fractalopt
