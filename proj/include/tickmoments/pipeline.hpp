#pragma once

// End-to-end run over an in-memory trade stream: aggregation, per-interval price and return
// statistics, secondary averaging levels, VaR contrast and diagnostics.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"
#include "tickmoments/hierarchy.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/returns.hpp"
#include "tickmoments/risk.hpp"

namespace tickmoments {

/// Parses "<integer><unit>" with unit in ns|us|ms|s|m|h|d. A bare integer is nanoseconds.
inline Duration parse_duration(std::string_view text) {
    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
    if (digits == 0) throw ParameterError("duration '" + std::string(text) + "' must start with a non-negative integer");
    std::int64_t n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + digits, n);
    if (ec != std::errc{}) throw ParameterError("duration '" + std::string(text) + "' is out of range");
    const std::string_view unit = text.substr(digits);
    static const std::map<std::string_view, std::int64_t, std::less<>> scale{
        {"", 1},
        {"ns", 1},
        {"us", 1'000},
        {"ms", 1'000'000},
        {"s", 1'000'000'000},
        {"m", 60'000'000'000},
        {"h", 3'600'000'000'000},
        {"d", 86'400'000'000'000},
    };
    const auto it = scale.find(unit);
    if (it == scale.end()) throw ParameterError("unknown duration unit '" + std::string(unit) + "'");
    if (n > INT64_MAX / it->second) throw ParameterError("duration '" + std::string(text) + "' is out of range");
    return n * it->second;
}

struct RunConfig {
    Duration delta = 0;
    std::optional<Duration> tau;
    std::optional<Timestamp> origin;  // default: first trade time
    std::vector<int> levels;          // secondary factors M2, M3, ...
    int n_max = kDefaultMaxPower;
    std::vector<double> alphas;
    PartialWindowPolicy partial = PartialWindowPolicy::drop;
};

inline void validate(const RunConfig& cfg) {
    if (cfg.delta <= 0) throw ParameterError("delta must be positive");
    if (cfg.tau && *cfg.tau <= 0) throw ParameterError("tau must be positive");
    for (int m : cfg.levels)
        if (m < 2) throw ParameterError("every level factor must be >= 2");
    for (double a : cfg.alphas)
        if (!(a > 0.0 && a < 1.0)) throw ParameterError("every alpha must lie in (0, 1)");
    check_max_power(cfg.n_max);
}

/// One row per grid slot between the first and last non-empty interval.
struct IntervalRow {
    std::int64_t index = 0;
    Timestamp time = 0;
    std::size_t count = 0;
    std::optional<TradeMoments> trade;
    std::optional<PriceStats> price;
    std::optional<ReturnStats> ret;
    std::size_t return_dropped = 0;
};

enum class VarKind { price, ret };

struct VarRow {
    std::int64_t index = 0;
    VarKind kind = VarKind::price;
    double alpha = 0.0;
    std::optional<VarReport> report;  // empty when the statistics are undefined or degenerate
};

struct LevelReport {
    int level = 2;
    int factor = 2;
    LiftResult result;
};

struct Diagnostics {
    std::size_t trades = 0;
    std::size_t intervals = 0;        // non-empty
    std::size_t empty_intervals = 0;  // gaps between first and last non-empty interval
    std::size_t degenerate_intervals = 0;
    std::size_t return_observations = 0;
    std::size_t dropped_returns = 0;
    double dropped_return_fraction = 0.0;
};

struct RunReport {
    IntervalGrid grid{0, 1};
    std::vector<IntervalRow> intervals;
    std::vector<LevelReport> levels;
    std::vector<VarRow> var;
    Diagnostics diagnostics;
};

/// Runs every engine over time-sorted trades.
inline RunReport run(std::span<const Trade> trades, const RunConfig& cfg) {
    validate(cfg);
    check_sorted(trades);
    if (trades.empty()) throw UndefinedStatistic("no usable intervals: input has no trades");

    RunReport rep;
    rep.grid = IntervalGrid(cfg.origin.value_or(trades.front().time), cfg.delta);
    const AggregateMap aggs = aggregate(trades, rep.grid, cfg.n_max);
    Diagnostics& diag = rep.diagnostics;
    diag.trades = trades.size();
    diag.intervals = aggs.size();

    std::map<std::int64_t, double> past_means;
    const std::int64_t first = aggs.begin()->first;
    const std::int64_t last = aggs.rbegin()->first;
    rep.intervals.reserve(static_cast<std::size_t>(last - first + 1));
    std::size_t offset = 0;  // position of the current interval's first trade
    for (std::int64_t k = first; k <= last; ++k) {
        IntervalRow row;
        row.index = k;
        row.time = rep.grid.center(k);
        const auto it = aggs.find(k);
        if (it == aggs.end()) {
            ++diag.empty_intervals;
            rep.intervals.push_back(row);
            continue;
        }
        const IntervalAggregate& agg = it->second;
        row.count = agg.count;
        row.trade = trade_moments(agg);
        row.price = market_price_stats(agg, *row.trade);
        if (row.price->degenerate) ++diag.degenerate_intervals;

        if (cfg.tau) {
            const auto run_trades = trades.subspan(offset, agg.count);
            const ReturnSeries series = build_return_series(run_trades, trades, *cfg.tau);
            row.return_dropped = series.dropped;
            diag.dropped_returns += series.dropped;
            diag.return_observations += series.observations.size();
            if (!series.observations.empty()) {
                row.ret = return_stats(series.observations);
                if (series.dropped == 0) past_means.emplace(k, row.ret->past_mean);
            }
        }
        offset += agg.count;

        for (double alpha : cfg.alphas) {
            VarRow vr{k, VarKind::price, alpha, std::nullopt};
            if (!row.price->degenerate) vr.report = compare_var(*row.price, alpha);
            rep.var.push_back(vr);
            if (cfg.tau) {
                VarRow rr{k, VarKind::ret, alpha, std::nullopt};
                if (row.ret && !row.ret->degenerate) rr.report = compare_var(*row.ret, alpha);
                rep.var.push_back(rr);
            }
        }
        rep.intervals.push_back(std::move(row));
    }
    const std::size_t total_returns = diag.return_observations + diag.dropped_returns;
    diag.dropped_return_fraction =
        total_returns == 0 ? 0.0 : static_cast<double>(diag.dropped_returns) / static_cast<double>(total_returns);

    if (!cfg.levels.empty()) {
        const LevelSeries base = first_level(aggs, rep.grid, past_means);
        std::vector<LiftResult> lifted = build_hierarchy(base, cfg.levels, cfg.partial);
        for (std::size_t i = 0; i < lifted.size(); ++i)
            rep.levels.push_back({static_cast<int>(i) + 2, cfg.levels[i], std::move(lifted[i])});
    }
    return rep;
}

}  // namespace tickmoments
