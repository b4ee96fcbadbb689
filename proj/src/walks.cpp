#include "fractalopt/walks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fractalopt {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": length mismatch (" << a << " vs " << b << ")";
        throw ValidationError(msg.str());
    }
}

void require_non_negative(std::span<const double> sigma, const char* what) {
    for (double s : sigma) {
        if (!(s >= 0.0)) {
            throw ValidationError(std::string(what) + ": sigma must be non-negative");
        }
    }
}

}  // namespace

void WalkParams::validate() const {
    if (generation < 1) {
        throw ValidationError("walk params: generation must be >= 1");
    }
    if (!(walk_choice_prob >= 0.0 && walk_choice_prob <= 1.0)) {
        throw ValidationError("walk params: walk_choice_prob must be in [0,1]");
    }
}

Vector diffusion_sigma(std::size_t generation, std::span<const double> p,
                       std::span<const double> bp) {
    if (generation < 1) {
        throw ValidationError("diffusion_sigma: generation must be >= 1");
    }
    require_same_length(p.size(), bp.size(), "diffusion_sigma");
    const double g = static_cast<double>(generation);
    const double scale = std::log(g) / g;
    Vector sigma(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        sigma[j] = std::abs(scale * (p[j] - bp[j]));
    }
    return sigma;
}

Vector gaussian_walk_first(std::span<const double> p, std::span<const double> bp,
                           std::span<const double> sigma, RandomSource& rng) {
    require_same_length(p.size(), bp.size(), "gaussian_walk_first");
    require_same_length(p.size(), sigma.size(), "gaussian_walk_first");
    require_non_negative(sigma, "gaussian_walk_first");
    Vector out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double gauss = bp[j] + sigma[j] * rng.normal();
        const double eps = rng.uniform();
        const double eps_prime = rng.uniform();
        out[j] = gauss + (eps * bp[j] - eps_prime * p[j]);
    }
    return out;
}

Vector gaussian_walk_second(std::span<const double> p, std::span<const double> sigma,
                            RandomSource& rng) {
    require_same_length(p.size(), sigma.size(), "gaussian_walk_second");
    require_non_negative(sigma, "gaussian_walk_second");
    Vector out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        out[j] = p[j] + sigma[j] * rng.normal();
    }
    return out;
}

double levy_sigma_u(double beta) {
    if (!(beta > 0.3 && beta < 1.99)) {
        throw ValidationError("levy: beta must be in (0.3, 1.99)");
    }
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den =
        std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

double levy_step(double u, double v, double beta) {
    return u / std::pow(std::abs(v), 1.0 / beta);
}

double levy_sample(double beta, RandomSource& rng) {
    const double sigma_u = levy_sigma_u(beta);
    const double u = sigma_u * rng.normal();
    const double v = rng.normal();
    return levy_step(u, v, beta);
}

}  // namespace fractalopt
