#include "tprice/harness.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tprice {
namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void put_vector(std::string& row, const Vector& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        row += ',';
        row += format_real(v[k]);
    }
}

}  // namespace

std::string format_real(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (r.ec != std::errc()) throw Error("format_real: conversion failed");
    return std::string(buf, r.ptr);
}

double parse_real(std::string_view text) {
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw Error("cannot parse '" + std::string(text) + "' as a real number");
    }
    return v;
}

std::string trace_csv_header(int d, bool with_gap) {
    std::string h = "t";
    for (const char* name : {"lambda_", "excess_"}) {
        for (int k = 0; k < d; ++k) h += "," + std::string(name) + std::to_string(k);
    }
    h += ",F,G";
    for (int k = 0; k < d; ++k) h += ",avg_excess_" + std::to_string(k);
    if (with_gap) h += ",oracle_gap";
    return h;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
    if (trace.empty()) throw Error("write_trace_csv: empty trace");
    const auto d = trace.front().lambda.size();
    bool with_gap = true;
    for (const auto& r : trace) with_gap = with_gap && r.oracle_gap.has_value();

    out << trace_csv_header(static_cast<int>(d), with_gap) << '\n';
    std::string row;
    for (const auto& r : trace) {
        if (r.lambda.size() != d || r.excess.size() != d || r.avg_excess.size() != d) {
            throw Error("write_trace_csv: inconsistent dimensions at t = " + std::to_string(r.t));
        }
        row = std::to_string(r.t);
        put_vector(row, r.lambda);
        put_vector(row, r.excess);
        row += ',' + format_real(r.F) + ',' + format_real(r.G);
        put_vector(row, r.avg_excess);
        if (with_gap) row += ',' + format_real(*r.oracle_gap);
        out << row << '\n';
    }
    if (!out) throw Error("write_trace_csv: write failed");
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_trace_csv(out, trace);
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("trace CSV: missing header");
    const auto header = split(line);
    // 1 + 3d + 2 columns, plus one for the gap.
    const auto cols = static_cast<long>(header.size());
    const bool with_gap = !header.empty() && header.back() == "oracle_gap";
    const long body = cols - 3 - (with_gap ? 1 : 0);
    if (body < 3 || body % 3 != 0) throw Error("trace CSV: unrecognised header");
    const int d = static_cast<int>(body / 3);
    if (line != trace_csv_header(d, with_gap)) throw Error("trace CSV: unrecognised header");

    std::vector<TraceRecord> trace;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (static_cast<long>(f.size()) != cols) {
            throw Error("trace CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(cols) + " fields");
        }
        try {
            TraceRecord r;
            long t = 0;
            const auto res = std::from_chars(f[0].data(), f[0].data() + f[0].size(), t);
            if (res.ec != std::errc() || res.ptr != f[0].data() + f[0].size()) {
                throw Error("bad round index '" + std::string(f[0]) + "'");
            }
            r.t = t;
            r.lambda.resize(d);
            r.excess.resize(d);
            r.avg_excess.resize(d);
            std::size_t i = 1;
            for (int k = 0; k < d; ++k) r.lambda[k] = parse_real(f[i++]);
            for (int k = 0; k < d; ++k) r.excess[k] = parse_real(f[i++]);
            r.F = parse_real(f[i++]);
            r.G = parse_real(f[i++]);
            for (int k = 0; k < d; ++k) r.avg_excess[k] = parse_real(f[i++]);
            if (with_gap) r.oracle_gap = parse_real(f[i++]);
            r.query = r.lambda;
            if (!trace.empty() && r.t <= trace.back().t) throw Error("round index not increasing");
            trace.push_back(std::move(r));
        } catch (const Error& e) {
            throw Error("trace CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_trace_csv(in);
}

}  // namespace tprice
