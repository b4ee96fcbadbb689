#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractalopt/core.hpp"

namespace fractalopt::bench {

/// Definitions (d = dimension):
///   sphere      sum x_j^2                                          [-5.12, 5.12]
///   rosenbrock  sum_{j<d} 100 (x_{j+1} - x_j^2)^2 + (1 - x_j)^2     [-5, 10], d >= 2
///   rastrigin   10 d + sum (x_j^2 - 10 cos(2 pi x_j))               [-5.12, 5.12]
///   ackley      -20 exp(-0.2 sqrt(mean x^2)) - exp(mean cos(2 pi x)) + 20 + e
///                                                                  [-32.768, 32.768]
///   griewank    1 + sum x_j^2 / 4000 - prod cos(x_j / sqrt(j))      [-600, 600]
///   schwefel    418.9829 d - sum x_j sin(sqrt|x_j|)                 [-500, 500]
/// Schwefel's offset leaves a small positive value at its minimizer
/// x_j = 420.968746359982..., recorded as the known optimum.
struct BenchmarkSpec {
    std::string name;
    std::size_t dimension = 0;
    std::size_t min_dimension = 1;
    double lower = 0.0;  ///< per-dimension default bounds
    double upper = 0.0;
    Vector optimum_coords;
    double optimum_value = 0.0;

    Bounds bounds() const { return Bounds::uniform(dimension, lower, upper); }
};

/// Evaluates a registered function; the dimension is coords.size().
double evaluate(std::string_view name, std::span<const double> coords);

/// Registry entry at a given dimension.
BenchmarkSpec spec(std::string_view name, std::size_t dimension);

/// All registered functions sorted by name, at `dimension` (default 2).
std::vector<BenchmarkSpec> list_benchmarks(std::size_t dimension = 2);

bool is_registered(std::string_view name);

/// Objective adapter for a registered function.
class BenchmarkObjective final : public Objective {
public:
    BenchmarkObjective(std::string_view name, std::size_t dimension);

    std::size_t dimension() const override { return spec_.dimension; }
    Bounds default_bounds() const override { return spec_.bounds(); }
    double evaluate(std::span<const double> coords) const override;

    const BenchmarkSpec& spec() const noexcept { return spec_; }

private:
    using Fn = double (*)(std::span<const double>);
    BenchmarkSpec spec_;
    Fn fn_;
};

}  // namespace fractalopt::bench
