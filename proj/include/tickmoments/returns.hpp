#pragma once

// Lagged gross returns r = p(t) / p(t - tau) and their market-based statistics, where each
// return is weighted by the past value C_o = p(t - tau) U(t) of the trade.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/summation.hpp"

namespace tickmoments {

/// Price of the last trade with time <= t - tau. `history` must be sorted by time.
inline double past_price(std::span<const Trade> history, Timestamp t, Duration tau) {
    if (tau <= 0) throw ParameterError("return lag tau must be positive");
    const Timestamp lookback = t - tau;
    const auto it = std::upper_bound(history.begin(), history.end(), lookback,
                                     [](Timestamp v, const Trade& tr) { return v < tr.time; });
    if (it == history.begin())
        throw InsufficientHistory("no trade at or before t - tau = " + std::to_string(lookback));
    return std::prev(it)->price;
}

struct ReturnObservation {
    Timestamp time = 0;
    double ret = 0.0;            // r(t, tau)
    double past_value = 0.0;     // C_o(t, tau)
    double current_value = 0.0;  // C(t)
};

struct ReturnSeries {
    std::vector<ReturnObservation> observations;
    std::size_t dropped = 0;  // trades without history at t - tau

    double dropped_fraction() const noexcept {
        const std::size_t total = observations.size() + dropped;
        return total == 0 ? 0.0 : static_cast<double>(dropped) / static_cast<double>(total);
    }
};

/// One observation per trade with available history; the rest are counted in `dropped`.
inline ReturnSeries build_return_series(std::span<const Trade> trades, std::span<const Trade> history,
                                        Duration tau) {
    if (tau <= 0) throw ParameterError("return lag tau must be positive");
    ReturnSeries out;
    out.observations.reserve(trades.size());
    for (const Trade& tr : trades) {
        double past = 0.0;
        try {
            past = past_price(history, tr.time, tau);
        } catch (const InsufficientHistory&) {
            ++out.dropped;
            continue;
        }
        out.observations.push_back({tr.time, tr.price / past, past * tr.volume, tr.value});
    }
    return out;
}

struct ReturnStats {
    double h1 = 0.0;           // market-based average return
    double h2m = 0.0;          // market-based 2nd moment of return
    double v2 = 0.0;           // market-based return volatility
    double past_mean = 0.0;    // C_o(t_k,tau;1)
    double past_second = 0.0;  // C_o(t_k,tau;2)
    double phi2 = 0.0;         // past-value volatility
    double corr_c_co = 0.0;    // E[C C_o] - C(1) C_o(1)
    double value_mean = 0.0;   // C(t_k;1) over the observations
    double value_second = 0.0; // C(t_k;2) over the observations
    double value_vol = 0.0;    // Omega_C^2 over the observations
    double freq_mean = 0.0;    // E[r]
    double freq_second = 0.0;  // E[r^2]
    std::size_t count = 0;
    bool degenerate = false;

    double freq_variance() const noexcept { return central_second(freq_second, freq_mean); }
};

///   h1  = sum C / sum C_o
///   v2  = [Omega_C^2 + h1^2 Phi^2 - 2 h1 corr{C C_o}] / C_o(2)
///   h2m = [C(2) + 2 h1^2 Phi^2 - 2 h1 corr{C C_o}] / C_o(2)
inline ReturnStats return_stats(std::span<const ReturnObservation> obs) {
    if (obs.empty()) throw UndefinedStatistic("return statistics of an empty observation set");
    const std::size_t n = obs.size();
    const double nd = static_cast<double>(n);
    auto mean_of = [&](auto&& term) { return pairwise_sum(0, n, term) / nd; };

    ReturnStats rs;
    rs.count = n;
    rs.degenerate = n == 1;
    rs.value_mean = mean_of([&](std::size_t i) { return obs[i].current_value; });
    rs.value_second = mean_of([&](std::size_t i) { return obs[i].current_value * obs[i].current_value; });
    rs.past_mean = mean_of([&](std::size_t i) { return obs[i].past_value; });
    rs.past_second = mean_of([&](std::size_t i) { return obs[i].past_value * obs[i].past_value; });
    const double joint = mean_of([&](std::size_t i) { return obs[i].current_value * obs[i].past_value; });
    rs.freq_mean = mean_of([&](std::size_t i) { return obs[i].ret; });
    rs.freq_second = mean_of([&](std::size_t i) { return obs[i].ret * obs[i].ret; });

    rs.value_vol = central_second(rs.value_second, rs.value_mean);
    rs.phi2 = central_second(rs.past_second, rs.past_mean);
    rs.corr_c_co = joint - rs.value_mean * rs.past_mean;
    rs.h1 = rs.value_mean / rs.past_mean;
    const double h = rs.h1;
    rs.v2 = std::max(0.0, (rs.value_vol + h * h * rs.phi2 - 2.0 * h * rs.corr_c_co) / rs.past_second);
    rs.h2m = (rs.value_second + 2.0 * h * h * rs.phi2 - 2.0 * h * rs.corr_c_co) / rs.past_second;
    return rs;
}

/// Return volatility as the direct weighted sum sum_i (r_i - h1)^2 C_o,i^2 / sum_j C_o,j^2.
inline double direct_return_volatility(std::span<const ReturnObservation> obs) {
    if (obs.empty()) throw UndefinedStatistic("return volatility of an empty observation set");
    const std::size_t n = obs.size();
    const double sum_rc = pairwise_sum(0, n, [&](std::size_t i) { return obs[i].ret * obs[i].past_value; });
    const double sum_c = pairwise_sum(0, n, [&](std::size_t i) { return obs[i].past_value; });
    const double h1 = sum_rc / sum_c;
    const double sum_c2 =
        pairwise_sum(0, n, [&](std::size_t i) { return obs[i].past_value * obs[i].past_value; });
    return pairwise_sum(0, n, [&](std::size_t i) {
               const double d = obs[i].ret - h1;
               return d * d * obs[i].past_value * obs[i].past_value;
           }) /
           sum_c2;
}

}  // namespace tickmoments
