#pragma once

// Trades, the interval partition of the time axis and per-interval power sums.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tickmoments/errors.hpp"
#include "tickmoments/summation.hpp"

namespace tickmoments {

/// Nanoseconds since epoch.
using Timestamp = std::int64_t;
/// Nanoseconds.
using Duration = std::int64_t;

inline constexpr int kDefaultMaxPower = 2;
inline constexpr int kMaxPowerLimit = 8;

/// One executed deal. value == price * volume by construction.
struct Trade {
    Timestamp time = 0;
    double value = 0.0;   // C
    double volume = 0.0;  // U
    double price = 0.0;   // p
};

/// Builds a trade from (time, price, volume); value is computed as price * volume.
inline Trade make_trade(Timestamp time, double price, double volume) {
    if (!(price > 0.0) || !std::isfinite(price))
        throw ParameterError("trade price must be positive and finite");
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw ParameterError("trade volume must be positive and finite");
    return Trade{time, price * volume, volume, price};
}

/// Checks the trade invariants: positive fields and |C - pU| <= 1e-9 C.
inline bool is_valid(const Trade& t) noexcept {
    if (!(t.value > 0.0 && t.volume > 0.0 && t.price > 0.0)) return false;
    return std::abs(t.value - t.price * t.volume) <= 1e-9 * t.value;
}

namespace detail {
// Floor division for signed integers, b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    const std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}
}  // namespace detail

/// Partition of the time axis into intervals [t_k - width/2, t_k + width/2),
/// t_k = origin + width * k, k in Z.
class IntervalGrid {
public:
    IntervalGrid(Timestamp origin, Duration width) : origin_(origin), width_(width) {
        if (width <= 0) throw ParameterError("interval width must be positive");
    }

    Timestamp origin() const noexcept { return origin_; }
    Duration width() const noexcept { return width_; }

    /// Center t_k of interval k.
    Timestamp center(std::int64_t k) const noexcept { return origin_ + width_ * k; }

    /// Index of the interval containing `time`. Upper boundaries belong to the next interval.
    std::int64_t index_of(Timestamp time) const noexcept {
        const std::int64_t d = time - origin_;
        const std::int64_t q = detail::floor_div(d, width_);
        const std::int64_t r = d - q * width_;  // in [0, width)
        // r >= width/2 without rounding odd widths
        return (r >= width_ - r) ? q + 1 : q;
    }

    /// Half-open membership: t_k - width/2 <= time < t_k + width/2.
    bool contains(std::int64_t k, Timestamp time) const noexcept {
        const std::int64_t twice = 2 * (time - center(k));
        return -width_ <= twice && twice < width_;
    }

    friend bool operator==(const IntervalGrid&, const IntervalGrid&) = default;

private:
    Timestamp origin_;
    Duration width_;
};

inline std::int64_t assign_interval(Timestamp time, const IntervalGrid& grid) noexcept {
    return grid.index_of(time);
}

/// Power sums of trade value and volume over one interval.
/// value_power_sums[n-1] = sum_i C_i^n, likewise for volume, n = 1..n_max.
struct IntervalAggregate {
    std::int64_t interval_index = 0;
    std::size_t count = 0;
    std::vector<double> value_power_sums;
    std::vector<double> volume_power_sums;
    double joint_sum_cu = 0.0;      // sum_i C_i U_i
    double price_sum = 0.0;         // sum_i p_i
    double price_square_sum = 0.0;  // sum_i p_i^2

    int max_power() const noexcept { return static_cast<int>(value_power_sums.size()); }

    double value_sum(int n) const { return value_power_sums.at(static_cast<std::size_t>(n - 1)); }
    double volume_sum(int n) const { return volume_power_sums.at(static_cast<std::size_t>(n - 1)); }

    /// Frequency moment C(t_k;n) = C_sum(n) / N.
    double value_mean(int n) const { return value_sum(n) / static_cast<double>(count); }
    double volume_mean(int n) const { return volume_sum(n) / static_cast<double>(count); }
};

/// Power sums over a contiguous run of trades (all assumed to share one interval).
inline IntervalAggregate aggregate_run(std::span<const Trade> run, std::int64_t index, int n_max) {
    IntervalAggregate agg;
    agg.interval_index = index;
    agg.count = run.size();
    agg.value_power_sums.resize(static_cast<std::size_t>(n_max));
    agg.volume_power_sums.resize(static_cast<std::size_t>(n_max));
    const std::size_t n = run.size();
    for (int p = 1; p <= n_max; ++p) {
        agg.value_power_sums[static_cast<std::size_t>(p - 1)] =
            pairwise_sum(0, n, [&](std::size_t i) { return ipow(run[i].value, p); });
        agg.volume_power_sums[static_cast<std::size_t>(p - 1)] =
            pairwise_sum(0, n, [&](std::size_t i) { return ipow(run[i].volume, p); });
    }
    agg.joint_sum_cu = pairwise_sum(0, n, [&](std::size_t i) { return run[i].value * run[i].volume; });
    agg.price_sum = pairwise_sum(0, n, [&](std::size_t i) { return run[i].price; });
    agg.price_square_sum = pairwise_sum(0, n, [&](std::size_t i) { return run[i].price * run[i].price; });
    return agg;
}

inline void check_max_power(int n_max) {
    if (n_max < 2 || n_max > kMaxPowerLimit)
        throw ParameterError("n_max must lie in [2, " + std::to_string(kMaxPowerLimit) + "], got " +
                             std::to_string(n_max));
}

inline void check_sorted(std::span<const Trade> trades) {
    const auto it = std::adjacent_find(trades.begin(), trades.end(),
                                       [](const Trade& a, const Trade& b) { return b.time < a.time; });
    if (it != trades.end())
        throw InputOrderError("trades are not sorted by time at position " +
                              std::to_string(std::distance(trades.begin(), it) + 1));
}

/// Per-interval aggregates keyed by interval index. Intervals without trades are absent.
using AggregateMap = std::map<std::int64_t, IntervalAggregate>;

/// Aggregates time-sorted trades over the grid.
inline AggregateMap aggregate(std::span<const Trade> trades, const IntervalGrid& grid,
                              int n_max = kDefaultMaxPower) {
    check_max_power(n_max);
    check_sorted(trades);
    AggregateMap out;
    std::size_t begin = 0;
    while (begin < trades.size()) {
        const std::int64_t k = grid.index_of(trades[begin].time);
        std::size_t end = begin + 1;
        while (end < trades.size() && grid.index_of(trades[end].time) == k) ++end;
        out.emplace(k, aggregate_run(trades.subspan(begin, end - begin), k, n_max));
        begin = end;
    }
    return out;
}

/// Field-wise sum of two aggregates of the same interval.
inline IntervalAggregate merge(const IntervalAggregate& a, const IntervalAggregate& b) {
    if (a.interval_index != b.interval_index)
        throw ParameterError("cannot merge aggregates of different intervals");
    if (a.max_power() != b.max_power())
        throw ParameterError("cannot merge aggregates with different n_max");
    IntervalAggregate r = a;
    r.count += b.count;
    for (std::size_t i = 0; i < r.value_power_sums.size(); ++i) {
        r.value_power_sums[i] += b.value_power_sums[i];
        r.volume_power_sums[i] += b.volume_power_sums[i];
    }
    r.joint_sum_cu += b.joint_sum_cu;
    r.price_sum += b.price_sum;
    r.price_square_sum += b.price_square_sum;
    return r;
}

/// Merges two aggregate maps (e.g. from disjoint trade batches processed separately).
inline AggregateMap merge(const AggregateMap& a, const AggregateMap& b) {
    AggregateMap r = a;
    for (const auto& [k, agg] : b) {
        auto it = r.find(k);
        if (it == r.end())
            r.emplace(k, agg);
        else
            it->second = merge(it->second, agg);
    }
    return r;
}

}  // namespace tickmoments
