#include "fractalopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fractalopt {

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) {
        throw ValidationError("bounds: dimension must be at least 1");
    }
    if (lower_.size() != upper_.size()) {
        throw ValidationError("bounds: lower and upper differ in length");
    }
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]) || !(lower_[j] < upper_[j])) {
            std::ostringstream msg;
            msg << "bounds: need finite lower < upper in dimension " << j << " (got ["
                << lower_[j] << ", " << upper_[j] << "])";
            throw ValidationError(msg.str());
        }
    }
}

Bounds Bounds::uniform(std::size_t dimension, double lower, double upper) {
    return Bounds(Vector(dimension, lower), Vector(dimension, upper));
}

bool Bounds::contains(std::span<const double> coords) const {
    if (coords.size() != dimension()) {
        return false;
    }
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (!(coords[j] >= lower_[j] && coords[j] <= upper_[j])) {
            return false;
        }
    }
    return true;
}

Population::Population(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw ValidationError("population: need at least 2 points");
    }
    for (const auto& p : points_) {
        if (!p.evaluated()) {
            throw ValidationError("population: every point must be evaluated");
        }
    }
    refresh_best();
}

double Population::mean_fitness() const {
    double sum = 0.0;
    for (const auto& p : points_) {
        sum += p.fitness;
    }
    return sum / static_cast<double>(points_.size());
}

void Population::replace(std::size_t i, Point p) {
    if (!p.evaluated()) {
        throw ValidationError("population: replacement point is unevaluated");
    }
    points_.at(i) = std::move(p);
    refresh_best();
}

// Among equal minima the highest index wins, matching the rank order.
void Population::refresh_best() {
    best_index_ = 0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (points_[i].fitness <= points_[best_index_].fitness) {
            best_index_ = i;
        }
    }
}

FunctionObjective::FunctionObjective(Bounds bounds, Fn fn)
    : bounds_(std::move(bounds)), fn_(std::move(fn)) {
    if (!fn_) {
        throw ValidationError("objective: empty callable");
    }
}

double CountingObjective::evaluate(std::span<const double> coords) const {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner_.evaluate(coords);
}

double evaluate_checked(const Objective& objective, std::span<const double> coords) {
    const double value = objective.evaluate(coords);
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "objective returned non-finite value " << value << " at (";
        for (std::size_t j = 0; j < coords.size(); ++j) {
            msg << (j ? ", " : "") << coords[j];
        }
        msg << ")";
        throw ObjectiveError(msg.str());
    }
    return value;
}

Point make_point(Vector coords, const Objective& objective) {
    Point p{std::move(coords)};
    p.fitness = evaluate_checked(objective, p.coords);
    return p;
}

Point initialize_point(const Bounds& bounds, RandomSource& rng) {
    Point p;
    p.coords.resize(bounds.dimension());
    for (std::size_t j = 0; j < bounds.dimension(); ++j) {
        p.coords[j] = bounds.lower()[j] + rng.uniform() * bounds.width(j);
    }
    return p;
}

Vector repair(Vector coords, const Bounds& bounds, RandomSource& rng) {
    if (coords.size() != bounds.dimension()) {
        throw ValidationError("repair: coordinate length does not match bounds");
    }
    for (std::size_t j = 0; j < coords.size(); ++j) {
        // NaN fails both comparisons and is re-sampled as well.
        if (!(coords[j] >= bounds.lower()[j] && coords[j] <= bounds.upper()[j])) {
            coords[j] = bounds.lower()[j] + rng.uniform() * bounds.width(j);
        }
    }
    return coords;
}

Vector rank_probabilities(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw ValidationError("rank_probabilities: empty population");
    }
    for (const auto& p : points) {
        if (!p.evaluated()) {
            throw ValidationError("rank_probabilities: unevaluated fitness");
        }
    }
    // Worst first; among equals the earlier index comes first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a].fitness > points[b].fitness;
    });
    Vector pa(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        pa[order[rank]] = static_cast<double>(rank + 1) / static_cast<double>(n);
    }
    return pa;
}

Vector rank_probabilities(const Population& population) {
    return rank_probabilities(std::span<const Point>(population.points()));
}

}  // namespace fractalopt
