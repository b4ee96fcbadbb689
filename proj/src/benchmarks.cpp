#include "fractalopt/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fractalopt::bench {
namespace {

using std::numbers::pi;

constexpr double kSchwefelOffset = 418.9829;
constexpr double kSchwefelArgmin = 420.96874635998202731;
// 418.9829 - 420.9687...*sin(sqrt(420.9687...)), per dimension.
constexpr double kSchwefelResidual = 1.2727566293725213565e-05;

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) {
        s += v * v - 10.0 * std::cos(2.0 * pi * v);
    }
    return s;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        s += x[j] * x[j] / 4000.0;
        p *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
    }
    return 1.0 + s - p;
}

// Summed per term so the offset cancels locally.
double schwefel(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += kSchwefelOffset - v * std::sin(std::sqrt(std::abs(v)));
    }
    return s;
}

struct Entry {
    std::string_view name;
    double (*fn)(std::span<const double>);
    std::size_t min_dimension;
    double lower;
    double upper;
    double optimum_coord;
    double optimum_value_per_dim;
};

// Sorted by name.
constexpr std::array kRegistry{
    Entry{"ackley", ackley, 1, -32.768, 32.768, 0.0, 0.0},
    Entry{"griewank", griewank, 1, -600.0, 600.0, 0.0, 0.0},
    Entry{"rastrigin", rastrigin, 1, -5.12, 5.12, 0.0, 0.0},
    Entry{"rosenbrock", rosenbrock, 2, -5.0, 10.0, 1.0, 0.0},
    Entry{"schwefel", schwefel, 1, -500.0, 500.0, kSchwefelArgmin, kSchwefelResidual},
    Entry{"sphere", sphere, 1, -5.12, 5.12, 0.0, 0.0},
};

const Entry& lookup(std::string_view name) {
    for (const auto& e : kRegistry) {
        if (e.name == name) {
            return e;
        }
    }
    std::ostringstream msg;
    msg << "unknown benchmark '" << name << "' (known:";
    for (const auto& e : kRegistry) {
        msg << ' ' << e.name;
    }
    msg << ")";
    throw ValidationError(msg.str());
}

void check_dimension(const Entry& e, std::size_t dimension) {
    if (dimension < e.min_dimension) {
        std::ostringstream msg;
        msg << "benchmark '" << e.name << "' needs dimension >= " << e.min_dimension << " (got "
            << dimension << ")";
        throw ValidationError(msg.str());
    }
}

BenchmarkSpec make_spec(const Entry& e, std::size_t dimension) {
    check_dimension(e, dimension);
    BenchmarkSpec s;
    s.name = std::string(e.name);
    s.dimension = dimension;
    s.min_dimension = e.min_dimension;
    s.lower = e.lower;
    s.upper = e.upper;
    s.optimum_coords.assign(dimension, e.optimum_coord);
    s.optimum_value = e.optimum_value_per_dim * static_cast<double>(dimension);
    return s;
}

}  // namespace

double evaluate(std::string_view name, std::span<const double> coords) {
    const Entry& e = lookup(name);
    check_dimension(e, coords.size());
    return e.fn(coords);
}

BenchmarkSpec spec(std::string_view name, std::size_t dimension) {
    return make_spec(lookup(name), dimension);
}

std::vector<BenchmarkSpec> list_benchmarks(std::size_t dimension) {
    std::vector<BenchmarkSpec> out;
    for (const auto& e : kRegistry) {
        out.push_back(make_spec(e, std::max(dimension, e.min_dimension)));
    }
    return out;
}

bool is_registered(std::string_view name) {
    return std::any_of(kRegistry.begin(), kRegistry.end(),
                       [&](const Entry& e) { return e.name == name; });
}

BenchmarkObjective::BenchmarkObjective(std::string_view name, std::size_t dimension)
    : spec_(bench::spec(name, dimension)), fn_(lookup(name).fn) {}

double BenchmarkObjective::evaluate(std::span<const double> coords) const {
    if (coords.size() != spec_.dimension) {
        throw ValidationError("benchmark '" + spec_.name + "': dimension mismatch");
    }
    return fn_(coords);
}

}  // namespace fractalopt::bench
