#pragma once

// Trade CSV schema: header `time,price,volume`; time = integer nanoseconds since epoch;
// price, volume = decimal literals; comma separated, no quoting.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"

namespace tickmoments {

inline constexpr std::string_view kTradeCsvHeader = "time,price,volume";

struct IngestResult {
    std::vector<Trade> trades;  // sorted by time
    std::size_t rejected_rows = 0;  // non-positive price or volume
    bool reordered = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

template <class T>
T parse_field(std::string_view field, const char* name, std::size_t line) {
    field = trim(field);
    T v{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        throw DataError("malformed " + std::string(name) + " field '" + std::string(field) + "'", line);
    return v;
}

}  // namespace detail

inline IngestResult ingest(std::istream& in) {
    IngestResult res;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = detail::trim(line);
        if (!header_seen) {
            if (row != kTradeCsvHeader)
                throw DataError("expected header '" + std::string(kTradeCsvHeader) + "'", line_no);
            header_seen = true;
            continue;
        }
        if (row.empty()) continue;
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos)
            throw DataError("expected 3 comma-separated fields", line_no);
        const auto time = detail::parse_field<Timestamp>(row.substr(0, c1), "time", line_no);
        const auto price = detail::parse_field<double>(row.substr(c1 + 1, c2 - c1 - 1), "price", line_no);
        const auto volume = detail::parse_field<double>(row.substr(c2 + 1), "volume", line_no);
        if (!(price > 0.0) || !(volume > 0.0) || !std::isfinite(price) || !std::isfinite(volume)) {
            ++res.rejected_rows;
            continue;
        }
        res.trades.push_back(make_trade(time, price, volume));
    }
    if (res.trades.empty()) res.warnings.emplace_back("input contains no usable trades");
    if (!std::is_sorted(res.trades.begin(), res.trades.end(),
                        [](const Trade& a, const Trade& b) { return a.time < b.time; })) {
        std::stable_sort(res.trades.begin(), res.trades.end(),
                         [](const Trade& a, const Trade& b) { return a.time < b.time; });
        res.reordered = true;
        res.warnings.emplace_back("timestamps were not monotone; trades reordered by time");
    }
    if (res.rejected_rows > 0)
        res.warnings.push_back(std::to_string(res.rejected_rows) + " row(s) rejected for non-positive price or volume");
    return res;
}

inline IngestResult ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file '" + path + "'");
    return ingest(in);
}

/// %.17g, enough digits to round-trip any double.
inline std::string format_double(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

inline void write_trades_csv(std::ostream& out, std::span<const Trade> trades) {
    out << kTradeCsvHeader << '\n';
    for (const Trade& t : trades) out << t.time << ',' << format_double(t.price) << ',' << format_double(t.volume) << '\n';
}

}  // namespace tickmoments
