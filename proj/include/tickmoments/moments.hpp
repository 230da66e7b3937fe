#pragma once

// Frequency-based and market-based (volume-weighted) price moments over one interval.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"
#include "tickmoments/summation.hpp"

namespace tickmoments {

/// (1/N) * sum x_i^n.
inline double frequency_moment(std::span<const double> samples, int n) {
    if (samples.empty()) throw UndefinedStatistic("frequency moment of an empty sample");
    if (n < 1) throw ParameterError("moment order must be >= 1");
    return pairwise_sum(0, samples.size(), [&](std::size_t i) { return ipow(samples[i], n); }) /
           static_cast<double>(samples.size());
}

inline void require_nonempty(const IntervalAggregate& agg) {
    if (agg.count == 0) throw UndefinedStatistic("statistic of an empty interval");
}

/// Volume weighted average price C_sum(1) / U_sum(1).
inline double vwap(const IntervalAggregate& agg) {
    require_nonempty(agg);
    return agg.value_sum(1) / agg.volume_sum(1);
}

/// Normalized volume weights w_i(m) = U_i^m / sum_j U_j^m. These are weights, not price probabilities.
inline std::vector<double> weight_function(std::span<const Trade> trades, int m) {
    if (trades.empty()) throw UndefinedStatistic("weights of an empty trade set");
    if (m < 1) throw ParameterError("weight power must be >= 1");
    const double total =
        pairwise_sum(0, trades.size(), [&](std::size_t i) { return ipow(trades[i].volume, m); });
    std::vector<double> w(trades.size());
    for (std::size_t i = 0; i < trades.size(); ++i) w[i] = ipow(trades[i].volume, m) / total;
    return w;
}

/// p(n, m) = sum_i p_i^n U_i^m / sum_i U_i^m.
inline double weighted_price_moment(std::span<const Trade> trades, int n, int m) {
    if (trades.empty()) throw UndefinedStatistic("weighted moment of an empty trade set");
    if (n < 1 || m < 1) throw ParameterError("moment orders must be >= 1");
    const double num = pairwise_sum(0, trades.size(), [&](std::size_t i) {
        return ipow(trades[i].price, n) * ipow(trades[i].volume, m);
    });
    const double den =
        pairwise_sum(0, trades.size(), [&](std::size_t i) { return ipow(trades[i].volume, m); });
    return num / den;
}

/// Frequency moments of trade value and volume plus their covariance.
struct TradeMoments {
    double value_mean = 0.0;    // C(t_k;1)
    double value_second = 0.0;  // C(t_k;2)
    double volume_mean = 0.0;   // U(t_k;1)
    double volume_second = 0.0; // U(t_k;2)
    double value_vol = 0.0;     // Omega_C^2
    double volume_vol = 0.0;    // Omega_U^2
    double corr_cu = 0.0;       // E[CU] - C(1) U(1)
    double joint_mean = 0.0;    // E[CU]
};

/// Second central moment from raw moments. Differences below zero are rounding noise and clamp to 0.
constexpr double central_second(double second, double mean) noexcept {
    return std::max(0.0, second - mean * mean);
}

inline TradeMoments trade_moments(const IntervalAggregate& agg) {
    require_nonempty(agg);
    const double n = static_cast<double>(agg.count);
    TradeMoments tm;
    tm.value_mean = agg.value_sum(1) / n;
    tm.value_second = agg.value_sum(2) / n;
    tm.volume_mean = agg.volume_sum(1) / n;
    tm.volume_second = agg.volume_sum(2) / n;
    tm.value_vol = central_second(tm.value_second, tm.value_mean);
    tm.volume_vol = central_second(tm.volume_second, tm.volume_mean);
    tm.joint_mean = agg.joint_sum_cu / n;
    tm.corr_cu = tm.joint_mean - tm.value_mean * tm.volume_mean;
    return tm;
}

/// Market-based price statistics of one interval next to the frequency-based ones.
struct PriceStats {
    double a1 = 0.0;           // VWAP
    double a2 = 0.0;           // market-based 2nd moment
    double sigma2 = 0.0;       // market-based price volatility
    double freq_mean = 0.0;    // E[p]
    double freq_second = 0.0;  // E[p^2]
    double p22 = 0.0;          // C_sum(2) / U_sum(2)
    std::size_t count = 0;
    bool degenerate = false;   // single-trade interval

    double freq_variance() const noexcept { return central_second(freq_second, freq_mean); }
};

/// Price volatility through value/volume volatilities and their correlation:
///   sigma2 = [Omega_C^2 + a1^2 Omega_U^2 - 2 a1 corr] / U(2)
///   a2     = [C(2) + 2 a1^2 Omega_U^2 - 2 a1 corr] / U(2)
inline PriceStats market_price_stats(const IntervalAggregate& agg, const TradeMoments& tm) {
    require_nonempty(agg);
    const double n = static_cast<double>(agg.count);
    PriceStats ps;
    ps.count = agg.count;
    ps.degenerate = agg.count == 1;
    ps.a1 = tm.value_mean / tm.volume_mean;
    const double a1 = ps.a1;
    ps.sigma2 = std::max(
        0.0, (tm.value_vol + a1 * a1 * tm.volume_vol - 2.0 * a1 * tm.corr_cu) / tm.volume_second);
    ps.a2 = (tm.value_second + 2.0 * a1 * a1 * tm.volume_vol - 2.0 * a1 * tm.corr_cu) / tm.volume_second;
    ps.freq_mean = agg.price_sum / n;
    ps.freq_second = agg.price_square_sum / n;
    ps.p22 = agg.value_sum(2) / agg.volume_sum(2);
    return ps;
}

inline PriceStats market_price_stats(const IntervalAggregate& agg) {
    return market_price_stats(agg, trade_moments(agg));
}

/// Price volatility as the direct weighted sum sum_i (p_i - a1)^2 w_i(2).
/// Independent of the decomposition above; used for self-checks.
inline double direct_price_volatility(std::span<const Trade> trades) {
    const double a1 = weighted_price_moment(trades, 1, 1);
    const std::vector<double> w = weight_function(trades, 2);
    return pairwise_sum(0, trades.size(), [&](std::size_t i) {
        const double d = trades[i].price - a1;
        return d * d * w[i];
    });
}

}  // namespace tickmoments
