#pragma once

// Built-in oracle equivalence checks: the published closed forms against the direct weighted sums
// on seeded random trade sets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/hierarchy.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/returns.hpp"
#include "tickmoments/synthgen.hpp"

namespace tickmoments {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // worst scaled error observed
};

/// |a - b| / max(|a|, |b|, floor). `floor` is the magnitude scale of the quantity; it keeps values
/// that are zero up to rounding from being judged by a relative error of order one.
inline double scaled_error(double a, double b, double floor) {
    const double den = std::max({std::abs(a), std::abs(b), floor});
    return den == 0.0 ? 0.0 : std::abs(a - b) / den;
}

namespace detail {

inline std::vector<Trade> random_trades(NormalSource& rng, std::size_t n) {
    std::vector<Trade> out;
    out.reserve(n);
    const double price_spread = 0.05 + 0.5 * rng.uniform();
    const double volume_spread = 0.1 + rng.uniform();
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(make_trade(static_cast<Timestamp>(i), 100.0 * std::exp(price_spread * rng.normal()),
                                 std::exp(volume_spread * rng.normal())));
    return out;
}

}  // namespace detail

inline std::vector<CheckResult> run_selftest(std::uint64_t seed = 7, std::size_t sets = 200, double tol = 1e-12) {
    NormalSource rng(seed);
    const IntervalGrid grid(0, 1'000'000);
    CheckResult price{"price volatility: decomposition vs direct weighted sum", true};
    CheckResult second{"price 2nd moment: closed form vs sigma2 + a1^2", true};
    CheckResult ret{"return volatility: decomposition vs direct weighted sum", true};
    CheckResult secondary{"secondary stats: window formulas vs level-1 engine", true};
    CheckResult reduction{"constant volume: market moments equal frequency moments", true};

    auto track = [tol](CheckResult& c, double err) {
        c.worst = std::max(c.worst, err);
        if (!(err <= tol)) c.passed = false;
    };

    for (std::size_t s = 0; s < sets; ++s) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 200.0);
        std::vector<Trade> trades = detail::random_trades(rng, n);
        const IntervalAggregate agg = aggregate(trades, grid).begin()->second;
        const PriceStats ps = market_price_stats(agg);
        const double scale = ps.a1 * ps.a1;
        track(price, scaled_error(ps.sigma2, direct_price_volatility(trades), scale));
        track(second, scaled_error(ps.a2, ps.sigma2 + ps.a1 * ps.a1, scale));

        std::vector<ReturnObservation> obs;
        for (const Trade& t : trades) {
            const double past = 100.0 * std::exp(0.3 * rng.normal());
            obs.push_back({t.time, t.price / past, past * t.volume, t.value});
        }
        const ReturnStats rs = return_stats(obs);
        track(ret, scaled_error(rs.v2, direct_return_volatility(obs), rs.h1 * rs.h1));

        std::vector<LevelPoint> window;
        std::vector<Trade> pseudo;
        for (std::size_t k = 0; k < std::min<std::size_t>(n, 50); ++k) {
            const double c = trades[k].value;
            const double u = trades[k].volume;
            window.push_back({static_cast<std::int64_t>(k), static_cast<Timestamp>(k), c, u, std::nullopt, 1, false});
            pseudo.push_back(make_trade(static_cast<Timestamp>(k), c / u, u));
        }
        const SecondaryPrice sp = secondary_price_stats(window);
        const PriceStats pl = market_price_stats(aggregate(pseudo, grid).begin()->second);
        track(secondary, scaled_error(sp.a2, pl.a1, 0.0));
        track(secondary, scaled_error(sp.sigma2, pl.sigma2, pl.a1 * pl.a1));

        for (Trade& t : trades) t = make_trade(t.time, t.price, 2.5);
        const PriceStats cv = market_price_stats(aggregate(trades, grid).begin()->second);
        track(reduction, scaled_error(cv.a1, cv.freq_mean, 0.0));
        track(reduction, scaled_error(cv.sigma2, cv.freq_variance(), cv.a1 * cv.a1));
    }
    return {price, second, ret, secondary, reduction};
}

}  // namespace tickmoments
