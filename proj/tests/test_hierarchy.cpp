#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tickmoments/core_model.hpp"
#include "tickmoments/hierarchy.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/returns.hpp"

namespace tkm = tickmoments;

namespace {

double rel(double a, double b, double floor = 0.0) {
    const double den = std::max({std::abs(a), std::abs(b), floor});
    return den == 0.0 ? 0.0 : std::abs(a - b) / den;
}

tkm::LevelPoint point(std::int64_t k, double c, double u, std::optional<double> co = std::nullopt) {
    return {k, k, c, u, co, 1, false};
}

// sum_k (a_k - a2)^2 U_k^2 / sum U_j^2, a_k = C_k / U_k
double direct_secondary_sigma2(const std::vector<tkm::LevelPoint>& w) {
    long double sc = 0, su = 0, su2 = 0, num = 0;
    for (const auto& p : w) {
        sc += p.value_mean;
        su += p.volume_mean;
        su2 += static_cast<long double>(p.volume_mean) * p.volume_mean;
    }
    const long double a2 = sc / su;
    for (const auto& p : w) {
        const long double d = static_cast<long double>(p.value_mean) / p.volume_mean - a2;
        num += d * d * p.volume_mean * p.volume_mean;
    }
    return static_cast<double>(num / su2);
}

}  // namespace

TEST(SecondaryPriceTest, Example) {
    const std::vector w{point(0, 28.0, 2.5), point(1, 30.0, 2.5)};
    const auto sp = tkm::secondary_price_stats(w);
    EXPECT_DOUBLE_EQ(sp.a2, 11.6);
    EXPECT_NEAR(direct_secondary_sigma2(w), 0.16, 1e-15);
    EXPECT_NEAR(sp.sigma2, 0.16, 1e-12);
    const auto s = tkm::window_stats(w);
    EXPECT_DOUBLE_EQ(s.omega_c2, 1.0);
    EXPECT_DOUBLE_EQ(s.omega_u2, 0.0);
    EXPECT_DOUBLE_EQ(s.corr_cu2, 0.0);
    EXPECT_FALSE(s.h2_return.has_value());
}

TEST(SecondaryPriceTest, ConstantWindowAndConstantAveragePrice) {
    const std::vector same{point(0, 30.0, 3.0), point(1, 30.0, 3.0), point(2, 30.0, 3.0)};
    const auto a = tkm::secondary_price_stats(same);
    EXPECT_DOUBLE_EQ(a.a2, 10.0);
    EXPECT_NEAR(a.sigma2, 0.0, 1e-12 * 100);

    // a(t_k;1) = 4 throughout, volumes vary
    const std::vector flat{point(0, 8.0, 2.0), point(1, 20.0, 5.0), point(2, 2.0, 0.5)};
    const auto b = tkm::secondary_price_stats(flat);
    EXPECT_NEAR(direct_secondary_sigma2(flat), 0.0, 1e-15);
    EXPECT_NEAR(b.sigma2, 0.0, 1e-12 * 16);
    EXPECT_GE(b.sigma2, 0.0);
    EXPECT_THROW(tkm::secondary_price_stats({}), tkm::UndefinedStatistic);
}

TEST(SecondaryReturnTest, Examples) {
    const std::vector w{point(0, 28.0, 2.5, 23.0), point(1, 30.0, 2.5, 23.0)};
    const auto sr = tkm::secondary_return_stats(w);
    EXPECT_NEAR(sr.h2, 58.0 / 46.0, 1e-15);

    const std::vector eq{point(0, 22.0, 1.0, 20.0), point(1, 22.0, 3.0, 20.0)};
    EXPECT_NEAR(tkm::secondary_return_stats(eq).v2, 0.0, 1e-15);

    const std::vector one{point(0, 33.0, 2.0, 30.0)};
    const auto s1 = tkm::secondary_return_stats(one);
    EXPECT_NEAR(s1.h2, 1.1, 1e-15);
    EXPECT_EQ(s1.v2, 0.0);

    const std::vector missing{point(0, 22.0, 1.0, 20.0), point(1, 22.0, 3.0)};
    EXPECT_THROW(tkm::secondary_return_stats(missing), tkm::IncompleteWindow);
}

TEST(SecondaryTest, StructuralIdentityWithLevelOneEngine) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> z;
    const tkm::IntervalGrid grid(0, 1'000);
    for (int s = 0; s < 200; ++s) {
        const std::size_t m = 1 + rng() % 60;
        std::vector<tkm::LevelPoint> w;
        std::vector<tkm::Trade> pseudo;
        std::vector<tkm::ReturnObservation> obs;
        for (std::size_t k = 0; k < m; ++k) {
            const double u = std::exp(z(rng));
            const double c = 20.0 * std::exp(0.2 * z(rng)) * u;
            const double co = c * std::exp(-0.05 * z(rng));
            w.push_back(point(static_cast<std::int64_t>(k), c, u, co));
            pseudo.push_back(tkm::make_trade(static_cast<tkm::Timestamp>(k), c / u, u));
            obs.push_back({static_cast<tkm::Timestamp>(k), c / co, co, c});
        }
        const auto sp = tkm::secondary_price_stats(w);
        const auto level1 = tkm::market_price_stats(tkm::aggregate(pseudo, grid).begin()->second);
        EXPECT_LT(rel(sp.a2, level1.a1), 1e-12);
        EXPECT_LT(rel(sp.sigma2, level1.sigma2, level1.a1 * level1.a1), 1e-12);
        EXPECT_LT(rel(sp.sigma2, direct_secondary_sigma2(w), sp.a2 * sp.a2), 1e-12);

        const auto sr = tkm::secondary_return_stats(w);
        const auto rs = tkm::return_stats(obs);
        EXPECT_LT(rel(sr.h2, rs.h1), 1e-12);
        EXPECT_LT(rel(sr.v2, rs.v2, rs.h1 * rs.h1), 1e-12);
    }
}

TEST(LiftTest, WindowsAndComposition) {
    tkm::LevelSeries s;
    s.grid = tkm::IntervalGrid(0, 10);
    for (int k = 0; k < 4; ++k) s.points.push_back({k, 10 * k, 28.0 + k, 2.5, 23.0, 2, false});
    const auto r = tkm::lift(s, 2);
    ASSERT_EQ(r.windows.size(), 2u);
    EXPECT_EQ(r.next.level, 2);
    EXPECT_EQ(r.next.grid.width(), 20);
    EXPECT_EQ(r.next.points.size(), 2u);
    EXPECT_NEAR(r.windows[0].stats.a2_price, (28.0 + 29.0) / 5.0, 1e-15);
    EXPECT_NEAR(*r.windows[0].stats.h2_return, 57.0 / 46.0, 1e-15);
    EXPECT_EQ(r.next.points[0].count, 2u);
    EXPECT_NEAR(r.next.points[1].value_mean, 30.5, 1e-15);
    EXPECT_EQ(r.next.points[1].past_value_mean, 23.0);
    EXPECT_EQ(r.windows[0].time, 5);  // center of slots 0 and 1 (times 0, 10)
    EXPECT_THROW(tkm::lift(s, 1), tkm::ParameterError);
}

TEST(LiftTest, PartialWindowPolicy) {
    tkm::LevelSeries s;
    s.grid = tkm::IntervalGrid(0, 10);
    // slots 0,1,2 then a gap at 3, then 4,5,6 -> windows {0,1,2}, {3,4,5} (slot 3 empty), {6}
    for (int k : {0, 1, 2, 4, 5, 6}) s.points.push_back({k, 10 * k, 10.0 + k, 1.0, std::nullopt, 1, false});
    const auto dropped = tkm::lift(s, 3);
    ASSERT_EQ(dropped.windows.size(), 1u);
    EXPECT_EQ(dropped.windows[0].index, 0);

    const auto flagged = tkm::lift(s, 3, tkm::PartialWindowPolicy::emit_flagged);
    ASSERT_EQ(flagged.windows.size(), 3u);
    EXPECT_FALSE(flagged.windows[0].partial);
    EXPECT_TRUE(flagged.windows[1].partial);
    EXPECT_EQ(flagged.windows[1].point_count, 2u);
    EXPECT_TRUE(flagged.windows[2].partial);
    EXPECT_TRUE(flagged.next.points[2].partial);
    EXPECT_NEAR(flagged.windows[1].stats.a2_price, (14.0 + 15.0) / 2.0, 1e-14);
}

TEST(LiftTest, RecursionOnConstantSeriesIsConstant) {
    tkm::LevelSeries s;
    s.grid = tkm::IntervalGrid(0, 7);
    for (int k = 0; k < 60; ++k) s.points.push_back({k, 7 * k, 42.0, 3.0, 40.0, 5, false});
    const std::vector<int> factors{3, 4, 5};
    const auto levels = tkm::build_hierarchy(s, factors);
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_EQ(levels[2].next.level, 4);
    EXPECT_EQ(levels[2].windows.size(), 1u);
    EXPECT_EQ(levels[2].next.grid.width(), 7 * 60);
    for (const auto& l : levels)
        for (const auto& w : l.windows) {
            EXPECT_NEAR(w.stats.a2_price, 14.0, 1e-13);
            EXPECT_NEAR(w.stats.sigma2_price, 0.0, 1e-12 * 196);
            EXPECT_NEAR(*w.stats.h2_return, 42.0 / 40.0, 1e-14);
            EXPECT_NEAR(*w.stats.v2_return, 0.0, 1e-13);
        }
}

TEST(LiftTest, EqualCountCollapseToRawVwap) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    const tkm::IntervalGrid grid(0, 100);
    std::vector<tkm::Trade> trades;
    for (int k = 0; k < 40; ++k)
        for (int i = 0; i < 7; ++i)
            trades.push_back(tkm::make_trade(100 * k + 10 * i - 30, 30.0 * std::exp(0.1 * z(rng)), std::exp(z(rng))));
    const auto aggs = tkm::aggregate(trades, grid);
    ASSERT_EQ(aggs.size(), 40u);
    const auto lifted = tkm::lift(tkm::first_level(aggs, grid), 8);
    ASSERT_EQ(lifted.windows.size(), 5u);
    for (std::size_t w = 0; w < 5; ++w) {
        const std::span<const tkm::Trade> raw(trades.data() + w * 56, 56);
        long double num = 0, den = 0;
        for (const auto& t : raw) {
            num += static_cast<long double>(t.price) * t.volume;
            den += t.volume;
        }
        EXPECT_LT(rel(lifted.windows[w].stats.a2_price, static_cast<double>(num / den)), 1e-12);
    }
}

TEST(LiftTest, NonNegativity) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> z;
    for (int s = 0; s < 500; ++s) {
        std::vector<tkm::LevelPoint> w;
        const std::size_t m = 1 + rng() % 20;
        const bool flat_price = s % 3 == 0;
        for (std::size_t k = 0; k < m; ++k) {
            const double u = std::exp(z(rng));
            const double a = flat_price ? 17.0 : 17.0 * std::exp(0.05 * z(rng));
            w.push_back(point(static_cast<std::int64_t>(k), a * u, u, a * u / (flat_price ? 1.0 : 1.01)));
        }
        const auto st = tkm::window_stats(w);
        EXPECT_GE(st.sigma2_price, 0.0);
        EXPECT_GE(*st.v2_return, 0.0);
        EXPECT_GE(st.omega_c2, 0.0);
        EXPECT_GE(st.omega_u2, 0.0);
        EXPECT_GE(*st.phi_2sq, 0.0);
    }
}
