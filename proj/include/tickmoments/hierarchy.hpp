#pragma once

// Secondary averaging: the per-interval first moments C(t_k;1), U(t_k;1), C_o(t_k,tau;1) are
// treated as random variables over a window of M consecutive intervals (width M * delta), giving
// the secondary average price/return and the volatility of those fluctuating averages. Each
// window yields a point of the next level, so the procedure composes recursively.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/errors.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/summation.hpp"

namespace tickmoments {

struct LevelPoint {
    std::int64_t index = 0;  // interval index on the level grid
    Timestamp time = 0;      // interval center
    double value_mean = 0.0;
    double volume_mean = 0.0;
    std::optional<double> past_value_mean;
    std::size_t count = 0;   // trades (level 1) or points of the level below
    bool partial = false;    // built from a window with fewer than M points
};

struct LevelSeries {
    int level = 1;
    IntervalGrid grid{0, 1};
    std::vector<LevelPoint> points;  // strictly increasing index
};

/// Level-1 series from interval aggregates. `past_value_means` maps interval index to
/// C_o(t_k,tau;1); intervals missing from it carry no past value.
inline LevelSeries first_level(const AggregateMap& aggregates, const IntervalGrid& grid,
                               const std::map<std::int64_t, double>& past_value_means = {}) {
    LevelSeries s;
    s.level = 1;
    s.grid = grid;
    s.points.reserve(aggregates.size());
    for (const auto& [k, agg] : aggregates) {
        if (agg.count == 0) continue;
        LevelPoint p;
        p.index = k;
        p.time = grid.center(k);
        p.value_mean = agg.value_mean(1);
        p.volume_mean = agg.volume_mean(1);
        p.count = agg.count;
        if (auto it = past_value_means.find(k); it != past_value_means.end()) p.past_value_mean = it->second;
        s.points.push_back(p);
    }
    return s;
}

struct SecondaryPrice {
    double a2 = 0.0;      // a_2(t;1)
    double sigma2 = 0.0;  // sigma^2(t;1)
};

struct SecondaryReturn {
    double h2 = 0.0;  // h_2(t,tau;1)
    double v2 = 0.0;  // v^2(t,tau;1)
};

struct SecondaryStats {
    double a2_price = 0.0;
    double sigma2_price = 0.0;
    std::optional<double> h2_return;
    std::optional<double> v2_return;
    double value_mean = 0.0;    // C(t;1,1)
    double value_second = 0.0;  // C(t;1,2)
    double volume_mean = 0.0;   // U(t;1,1)
    double volume_second = 0.0; // U(t;1,2)
    std::optional<double> past_mean;    // C_o(t,tau;1,1)
    std::optional<double> past_second;  // C_o(t,tau;1,2)
    double omega_c2 = 0.0;
    double omega_u2 = 0.0;
    double joint_cu2 = 0.0;  // E[C(t_k;1) U(t_k;1)]
    double corr_cu2 = 0.0;
    std::optional<double> phi_2sq;
    std::optional<double> joint_cco2;
    std::optional<double> corr_cco2;
};

namespace detail {

template <class Term>
double window_mean(std::span<const LevelPoint> w, Term&& term) {
    return pairwise_sum(0, w.size(), [&](std::size_t i) { return term(w[i]); }) /
           static_cast<double>(w.size());
}

inline bool has_past_values(std::span<const LevelPoint> w) {
    return std::all_of(w.begin(), w.end(), [](const LevelPoint& p) { return p.past_value_mean.has_value(); });
}

inline void fill_price_part(std::span<const LevelPoint> w, SecondaryStats& s) {
    if (w.empty()) throw UndefinedStatistic("secondary statistics of an empty window");
    s.value_mean = window_mean(w, [](const LevelPoint& p) { return p.value_mean; });
    s.value_second = window_mean(w, [](const LevelPoint& p) { return p.value_mean * p.value_mean; });
    s.volume_mean = window_mean(w, [](const LevelPoint& p) { return p.volume_mean; });
    s.volume_second = window_mean(w, [](const LevelPoint& p) { return p.volume_mean * p.volume_mean; });
    s.joint_cu2 = window_mean(w, [](const LevelPoint& p) { return p.value_mean * p.volume_mean; });
    s.omega_c2 = central_second(s.value_second, s.value_mean);
    s.omega_u2 = central_second(s.volume_second, s.volume_mean);
    s.corr_cu2 = s.joint_cu2 - s.value_mean * s.volume_mean;
    const double a = s.value_mean / s.volume_mean;
    s.a2_price = a;
    s.sigma2_price = std::max(0.0, (s.omega_c2 + a * a * s.omega_u2 - 2.0 * a * s.corr_cu2) / s.volume_second);
}

inline void fill_return_part(std::span<const LevelPoint> w, SecondaryStats& s) {
    if (!has_past_values(w)) throw IncompleteWindow("window points lack past-value means");
    const double co1 = window_mean(w, [](const LevelPoint& p) { return *p.past_value_mean; });
    const double co2 = window_mean(w, [](const LevelPoint& p) { return *p.past_value_mean * *p.past_value_mean; });
    const double joint = window_mean(w, [](const LevelPoint& p) { return p.value_mean * *p.past_value_mean; });
    const double phi = central_second(co2, co1);
    const double corr = joint - s.value_mean * co1;
    const double h = s.value_mean / co1;
    s.past_mean = co1;
    s.past_second = co2;
    s.phi_2sq = phi;
    s.joint_cco2 = joint;
    s.corr_cco2 = corr;
    s.h2_return = h;
    s.v2_return = std::max(0.0, (s.omega_c2 + h * h * phi - 2.0 * h * corr) / co2);
}

}  // namespace detail

///   a_2      = sum C(t_k;1) / sum U(t_k;1)
///   sigma^2  = [Omega_C2^2 + a_2^2 Omega_U2^2 - 2 a_2 corr{C U}] / U(t;1,2)
inline SecondaryPrice secondary_price_stats(std::span<const LevelPoint> window) {
    SecondaryStats s;
    detail::fill_price_part(window, s);
    return {s.a2_price, s.sigma2_price};
}

///   h_2 = sum C(t_k;1) / sum C_o(t_k,tau;1)
///   v^2 = [Omega_C2^2 + h_2^2 Phi_2^2 - 2 h_2 corr{C C_o}] / C_o(t,tau;1,2)
inline SecondaryReturn secondary_return_stats(std::span<const LevelPoint> window) {
    SecondaryStats s;
    detail::fill_price_part(window, s);
    detail::fill_return_part(window, s);
    return {*s.h2_return, *s.v2_return};
}

/// All secondary statistics of a window; return fields are set only when every point has a past value.
inline SecondaryStats window_stats(std::span<const LevelPoint> window) {
    SecondaryStats s;
    detail::fill_price_part(window, s);
    if (detail::has_past_values(window)) detail::fill_return_part(window, s);
    return s;
}

enum class PartialWindowPolicy { drop, emit_flagged };

struct SecondaryWindow {
    std::int64_t index = 0;  // index on the next-level grid
    Timestamp time = 0;
    std::size_t point_count = 0;
    bool partial = false;
    SecondaryStats stats;
};

struct LiftResult {
    LevelSeries next;
    std::vector<SecondaryWindow> windows;
};

/// Groups the series into non-overlapping windows of `factor` consecutive grid slots, anchored at
/// the first point. A window with fewer than `factor` points present is partial.
inline LiftResult lift(const LevelSeries& series, int factor,
                       PartialWindowPolicy policy = PartialWindowPolicy::drop) {
    if (factor < 2) throw ParameterError("secondary averaging factor M must be >= 2, got " + std::to_string(factor));
    const Duration width = series.grid.width();
    const std::int64_t m = factor;
    LiftResult out;
    out.next.level = series.level + 1;
    if (series.points.empty()) {
        out.next.grid = IntervalGrid(series.grid.origin(), width * m);
        return out;
    }
    const std::int64_t first = series.points.front().index;
    const Timestamp origin = series.grid.center(first) + ((m - 1) * width) / 2;
    out.next.grid = IntervalGrid(origin, width * m);

    const std::span<const LevelPoint> pts(series.points);
    std::size_t begin = 0;
    while (begin < pts.size()) {
        const std::int64_t w = detail::floor_div(pts[begin].index - first, m);
        std::size_t end = begin + 1;
        while (end < pts.size() && detail::floor_div(pts[end].index - first, m) == w) ++end;
        const auto window = pts.subspan(begin, end - begin);
        begin = end;

        const bool partial = window.size() < static_cast<std::size_t>(m);
        if (partial && policy == PartialWindowPolicy::drop) continue;

        SecondaryWindow sw;
        sw.index = w;
        sw.time = out.next.grid.center(w);
        sw.point_count = window.size();
        sw.partial = partial;
        sw.stats = window_stats(window);
        out.windows.push_back(sw);

        LevelPoint np;
        np.index = w;
        np.time = sw.time;
        np.value_mean = sw.stats.value_mean;
        np.volume_mean = sw.stats.volume_mean;
        np.past_value_mean = sw.stats.past_mean;
        np.count = window.size();
        np.partial = partial || std::any_of(window.begin(), window.end(), [](const LevelPoint& p) { return p.partial; });
        out.next.points.push_back(np);
    }
    return out;
}

/// Applies lift once per factor, e.g. {M2, M3} gives levels 2 and 3.
inline std::vector<LiftResult> build_hierarchy(const LevelSeries& base, std::span<const int> factors,
                                               PartialWindowPolicy policy = PartialWindowPolicy::drop) {
    std::vector<LiftResult> levels;
    levels.reserve(factors.size());
    const LevelSeries* current = &base;
    for (int m : factors) {
        levels.push_back(lift(*current, m, policy));
        current = &levels.back().next;
    }
    return levels;
}

}  // namespace tickmoments
