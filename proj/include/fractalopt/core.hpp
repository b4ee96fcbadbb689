#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractalopt/random.hpp"

namespace fractalopt {

/// Invalid configuration, arguments or domain values.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure raised while evaluating an objective (e.g. a non-finite value).
class ObjectiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

/// Box constraints [lower, upper] per dimension.
class Bounds {
public:
    Bounds(Vector lower, Vector upper);

    /// The same interval in every one of `dimension` coordinates.
    static Bounds uniform(std::size_t dimension, double lower, double upper);

    std::size_t dimension() const noexcept { return lower_.size(); }
    const Vector& lower() const noexcept { return lower_; }
    const Vector& upper() const noexcept { return upper_; }
    double width(std::size_t j) const { return upper_[j] - lower_[j]; }

    bool contains(std::span<const double> coords) const;

private:
    Vector lower_;
    Vector upper_;
};

/// Candidate solution. `fitness` stays NaN until the point is evaluated.
struct Point {
    Vector coords;
    double fitness = std::numeric_limits<double>::quiet_NaN();

    bool evaluated() const noexcept { return fitness == fitness; }
};

/// Fixed-size set of evaluated points with the index of its best member.
/// Ties for the best fitness resolve to the highest index, the point that
/// rank_probabilities assigns Pa = 1.
class Population {
public:
    explicit Population(std::vector<Point> points);

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& best() const { return points_[best_index_]; }
    std::size_t best_index() const noexcept { return best_index_; }

    double mean_fitness() const;

    /// Replaces point i and refreshes the best index.
    void replace(std::size_t i, Point p);

private:
    void refresh_best();

    std::vector<Point> points_;
    std::size_t best_index_ = 0;
};

/// Minimization target. `evaluate` must be deterministic and free of side
/// effects visible to the caller; the engines may call it from several
/// threads at once.
class Objective {
public:
    virtual ~Objective() = default;
    virtual std::size_t dimension() const = 0;
    virtual Bounds default_bounds() const = 0;
    virtual double evaluate(std::span<const double> coords) const = 0;
};

/// Adapts a callable into an Objective.
class FunctionObjective final : public Objective {
public:
    using Fn = std::function<double(std::span<const double>)>;

    FunctionObjective(Bounds bounds, Fn fn);

    std::size_t dimension() const override { return bounds_.dimension(); }
    Bounds default_bounds() const override { return bounds_; }
    double evaluate(std::span<const double> coords) const override { return fn_(coords); }

private:
    Bounds bounds_;
    Fn fn_;
};

/// Forwards to another objective and counts calls. Thread-safe.
class CountingObjective final : public Objective {
public:
    explicit CountingObjective(const Objective& inner) : inner_(inner) {}

    std::size_t dimension() const override { return inner_.dimension(); }
    Bounds default_bounds() const override { return inner_.default_bounds(); }
    double evaluate(std::span<const double> coords) const override;

    std::size_t count() const noexcept { return count_.load(std::memory_order_relaxed); }

private:
    const Objective& inner_;
    mutable std::atomic<std::size_t> count_{0};
};

/// Evaluates `coords`, throwing ObjectiveError on NaN or infinity.
double evaluate_checked(const Objective& objective, std::span<const double> coords);

/// Evaluates into a Point.
Point make_point(Vector coords, const Objective& objective);

/// coords[j] = lower[j] + u_j * (upper[j] - lower[j]) with a fresh u_j per
/// component. The returned point is unevaluated.
Point initialize_point(const Bounds& bounds, RandomSource& rng);

/// Re-samples every component outside [lower[j], upper[j]] with the
/// initialization rule; components already inside pass through untouched.
/// Draws one uniform per violating component, in index order.
Vector repair(Vector coords, const Bounds& bounds, RandomSource& rng);

/// Linear ranking probabilities Pa_i = rank_i / N. The worst point gets rank
/// 1 and the best rank N (so Pa = 1); equal fitness values are ranked by
/// original index, with the earlier index taking the lower rank.
Vector rank_probabilities(std::span<const Point> points);
Vector rank_probabilities(const Population& population);

}  // namespace fractalopt
