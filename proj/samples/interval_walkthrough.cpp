// Generates a short synthetic stream and prints, per 1 s interval, the VWAP and market-based price
// volatility next to their frequency-based counterparts, then one level of secondary averaging.

#include <cstdio>
#include <vector>

#include "tickmoments/tickmoments.hpp"

namespace tkm = tickmoments;

int main() {
    tkm::GenConfig gen;
    gen.count = 10'000;
    gen.tick_spacing = tkm::parse_duration("1ms");
    gen.price_log_step = 5e-4;
    gen.volume_log_std = 1.0;
    gen.rho = 0.5;
    const std::vector<tkm::Trade> trades = tkm::generate(gen);

    const tkm::IntervalGrid grid(trades.front().time, tkm::parse_duration("1s"));
    const tkm::AggregateMap aggs = tkm::aggregate(trades, grid);

    std::printf("%4s %6s %12s %12s %14s %14s\n", "k", "N", "vwap", "mean", "sigma2", "freq var");
    for (const auto& [k, agg] : aggs) {
        const tkm::PriceStats ps = tkm::market_price_stats(agg);
        std::printf("%4lld %6zu %12.6f %12.6f %14.8f %14.8f\n", static_cast<long long>(k), agg.count, ps.a1,
                    ps.freq_mean, ps.sigma2, ps.freq_variance());
    }

    const tkm::LiftResult level2 = tkm::lift(tkm::first_level(aggs, grid), 5);
    for (const auto& w : level2.windows)
        std::printf("level 2 window %lld: a2 = %.6f, sigma2 = %.8f\n", static_cast<long long>(w.index),
                    w.stats.a2_price, w.stats.sigma2_price);
}
