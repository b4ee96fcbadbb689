#include "fractalopt/trace.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace fractalopt {
namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        std::ostringstream msg;
        msg << "trace: bad field '" << text << "' on line " << line_no;
        throw ValidationError(msg.str());
    }
    return value;
}

}  // namespace

bool ConvergenceTrace::well_formed() const {
    for (std::size_t k = 1; k < records.size(); ++k) {
        const auto& prev = records[k - 1];
        const auto& cur = records[k];
        if (cur.generation <= prev.generation || cur.evaluations <= prev.evaluations ||
            cur.best_fitness > prev.best_fitness) {
            return false;
        }
    }
    return true;
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_real: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

void write_trace(const ConvergenceTrace& trace, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.generation << ',' << r.evaluations << ',' << format_real(r.best_fitness) << ','
            << format_real(r.mean_fitness) << '\n';
    }
}

void write_trace(const ConvergenceTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open trace file for writing: " + path.string());
    }
    write_trace(trace, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing trace file: " + path.string());
    }
}

ConvergenceTrace read_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw ValidationError("trace: missing or unexpected header");
    }
    ConvergenceTrace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::array<std::string_view, 4> fields;
        std::string_view rest(line);
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const auto comma = rest.find(',');
            if ((comma == std::string_view::npos) != (k == fields.size() - 1)) {
                throw ValidationError("trace: expected 4 fields on line " + std::to_string(line_no));
            }
            fields[k] = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        TraceRecord r;
        r.generation = parse_field<std::size_t>(fields[0], line_no);
        r.evaluations = parse_field<std::size_t>(fields[1], line_no);
        r.best_fitness = parse_field<double>(fields[2], line_no);
        r.mean_fitness = parse_field<double>(fields[3], line_no);
        trace.records.push_back(r);
    }
    return trace;
}

ConvergenceTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trace file: " + path.string());
    }
    return read_trace(in);
}

}  // namespace fractalopt
