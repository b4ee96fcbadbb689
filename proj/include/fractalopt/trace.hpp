#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fractalopt/core.hpp"

namespace fractalopt {

struct TraceRecord {
    std::size_t generation = 0;
    std::size_t evaluations = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;

    bool operator==(const TraceRecord&) const = default;
};

/// One record per completed generation.
struct ConvergenceTrace {
    std::vector<TraceRecord> records;

    bool operator==(const ConvergenceTrace&) const = default;

    /// Generations and evaluations strictly increasing, best non-increasing.
    bool well_formed() const;
};

struct RunResult {
    Point best_point;
    ConvergenceTrace trace;
    std::size_t evaluations = 0;
    std::size_t generations_run = 0;
};

inline constexpr const char* kTraceHeader = "generation,evaluations,best_fitness,mean_fitness";

/// Shortest decimal form that parses back to the same double.
std::string format_real(double value);

void write_trace(const ConvergenceTrace& trace, std::ostream& out);
void write_trace(const ConvergenceTrace& trace, const std::filesystem::path& path);

ConvergenceTrace read_trace(std::istream& in);
ConvergenceTrace read_trace(const std::filesystem::path& path);

}  // namespace fractalopt
