#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "tickmoments/csv_io.hpp"
#include "tickmoments/synthgen.hpp"

namespace tkm = tickmoments;

namespace {

tkm::IngestResult ingest_text(const std::string& text) {
    std::istringstream in(text);
    return tkm::ingest(in);
}

}  // namespace

TEST(IngestTest, SingleRow) {
    const auto r = ingest_text("time,price,volume\n1000000000,10.0,2.0\n");
    ASSERT_EQ(r.trades.size(), 1u);
    EXPECT_EQ(r.trades[0].time, 1'000'000'000);
    EXPECT_EQ(r.trades[0].price, 10.0);
    EXPECT_EQ(r.trades[0].volume, 2.0);
    EXPECT_EQ(r.trades[0].value, 20.0);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(IngestTest, HeaderOnlyWarns) {
    const auto r = ingest_text("time,price,volume\n");
    EXPECT_TRUE(r.trades.empty());
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(IngestTest, RejectsNonPositiveRows) {
    const auto r = ingest_text("time,price,volume\r\n1,10,0\r\n2,10,1\r\n3,-1,1\r\n");
    EXPECT_EQ(r.trades.size(), 1u);
    EXPECT_EQ(r.rejected_rows, 2u);
}

TEST(IngestTest, ReordersWithWarning) {
    const auto r = ingest_text("time,price,volume\n30,1,1\n10,2,1\n20,3,1\n10,4,1\n");
    ASSERT_EQ(r.trades.size(), 4u);
    EXPECT_TRUE(r.reordered);
    EXPECT_EQ(r.trades[0].price, 2.0);  // stable: equal timestamps keep file order
    EXPECT_EQ(r.trades[1].price, 4.0);
    EXPECT_EQ(r.trades[3].time, 30);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(IngestTest, MalformedRowsReportLineNumbers) {
    auto line_of = [](const std::string& text) {
        try {
            ingest_text(text);
        } catch (const tkm::DataError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("time,price,volume\n1,2,3\n1,abc,3\n"), 3u);
    EXPECT_EQ(line_of("time,price,volume\n1,2\n"), 2u);
    EXPECT_EQ(line_of("time,price,volume\n1,2,3,4\n"), 2u);
    EXPECT_EQ(line_of("time,price,volume\n1.5,2,3\n"), 2u);
    EXPECT_EQ(line_of("price,volume,time\n"), 1u);
    EXPECT_THROW(tkm::ingest(std::string("/nonexistent/trades.csv")), tkm::DataError);
}

TEST(IngestTest, WriteThenIngestIsLossless) {
    tkm::GenConfig cfg;
    cfg.count = 2'000;
    cfg.price_log_step = 0.03;
    cfg.volume_log_std = 2.0;
    const auto trades = tkm::generate(cfg);
    std::stringstream buf;
    tkm::write_trades_csv(buf, trades);
    const auto back = tkm::ingest(buf);
    ASSERT_EQ(back.trades.size(), trades.size());
    for (std::size_t i = 0; i < trades.size(); ++i) {
        EXPECT_EQ(back.trades[i].time, trades[i].time);
        EXPECT_EQ(back.trades[i].price, trades[i].price);
        EXPECT_EQ(back.trades[i].volume, trades[i].volume);
        EXPECT_EQ(back.trades[i].value, trades[i].value);
    }
}
