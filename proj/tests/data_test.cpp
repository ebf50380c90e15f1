#include "liqprob/data.hpp"
#include "liqprob/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace liqprob::data {
namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

constexpr std::string_view kMinimal =
    "date,open,high,low,close\n2024-03-29,3500,3560,3480,3520\n2024-03-30,3520,3530,3400,3410\n";

Error capture(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "expected an Error";
    return Error(ErrorKind::Io, "none");
}

/// Consecutive daily bars with the given closes; open equals the previous close.
OhlcSeries series_from_closes(const std::vector<double>& closes) {
    std::vector<OhlcBar> bars;
    sys_days d = sys_days{year_month_day{year{2024}, month{3}, day{29}}};
    double open = closes.front();
    for (double c : closes) {
        bars.push_back({year_month_day{d}, open, std::max(open, c), std::min(open, c), c});
        open = c;
        d += std::chrono::days{1};
    }
    return OhlcSeries{std::move(bars)};
}

OhlcSeries series_from_changes(const std::vector<double>& changes) {
    std::vector<OhlcBar> bars;
    sys_days d = sys_days{year_month_day{year{2024}, month{3}, day{29}}};
    for (double c : changes) {
        const double open = 3000.0;
        const double close = open + c;
        bars.push_back({year_month_day{d}, open, std::max(open, close), std::min(open, close), close});
        d += std::chrono::days{1};
    }
    return OhlcSeries{std::move(bars)};
}

TEST(ParseCsv, MinimalInput) {
    const OhlcSeries s = parse_ohlc_csv(kMinimal);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.bars()[0].date, (year_month_day{year{2024}, month{3}, day{29}}));
    EXPECT_EQ(s.bars()[1].close, 3410.0);
}

TEST(ParseCsv, ToleratesCrlfAndMissingTrailingNewline) {
    const OhlcSeries s = parse_ohlc_csv(
        "date,open,high,low,close\r\n2024-03-29,3500,3560,3480,3520\r\n2024-03-30,3520,3530,3400,3410");
    EXPECT_EQ(s, parse_ohlc_csv(kMinimal));
}

TEST(ParseCsv, ColumnsFoundByName) {
    const OhlcSeries s = parse_ohlc_csv(
        "close,volume,date,low,high,open\n3520,1,2024-03-29,3480,3560,3500\n3410,2,2024-03-30,3400,3530,3520\n");
    EXPECT_EQ(s, parse_ohlc_csv(kMinimal));
}

TEST(ParseCsv, MissingColumnNamed) {
    const Error e = capture([] { (void)parse_ohlc_csv("date,open,high,low\n2024-03-29,1,1,1\n"); });
    EXPECT_EQ(e.kind(), ErrorKind::Format);
    EXPECT_NE(std::string(e.what()).find("close"), std::string::npos);
    const Error renamed = capture([] { (void)parse_ohlc_csv("date,open,high,low,px_close\n"); });
    EXPECT_NE(std::string(renamed.what()).find("'close'"), std::string::npos);
}

TEST(ParseCsv, NonPositivePriceReportsRow) {
    const Error e = capture([] {
        (void)parse_ohlc_csv(
            "date,open,high,low,close\n2024-03-29,3500,3560,3480,3520\n2024-03-30,0,3530,0,3410\n");
    });
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_EQ(e.row(), 2u);
}

TEST(ParseCsv, HighLowMustBracket) {
    const Error e = capture(
        [] { (void)parse_ohlc_csv("date,open,high,low,close\n2024-03-29,3500,3510,3480,3520\n"); });
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_EQ(e.row(), 1u);
}

TEST(ParseCsv, DateOrdering) {
    const char* dup =
        "date,open,high,low,close\n2024-03-29,1,1,1,1\n2024-03-30,1,1,1,1\n2024-03-30,1,1,1,1\n";
    Error e = capture([&] { (void)parse_ohlc_csv(dup); });
    EXPECT_EQ(e.kind(), ErrorKind::Ordering);
    EXPECT_EQ(e.row(), 3u);
    e = capture([] { (void)parse_ohlc_csv("date,open,high,low,close\n2024-03-29,1,1,1,1\n2024-03-01,1,1,1,1\n"); });
    EXPECT_EQ(e.kind(), ErrorKind::Ordering);
    EXPECT_EQ(e.row(), 2u);
}

TEST(ParseCsv, GapsAreFine) {
    EXPECT_EQ(parse_ohlc_csv("date,open,high,low,close\n2024-03-01,1,1,1,1\n2024-03-09,1,2,1,2\n").size(), 2u);
}

TEST(ParseCsv, MalformedFields) {
    for (const char* text : {"date,open,high,low,close\n2024-3-29,1,1,1,1\n",
                             "date,open,high,low,close\n2024-02-30,1,1,1,1\n",
                             "date,open,high,low,close\n2024-03-29,1x,1,1,1\n",
                             "date,open,high,low,close\n2024-03-29,1,1,1\n", ""}) {
        EXPECT_EQ(capture([&] { (void)parse_ohlc_csv(text); }).kind(), ErrorKind::Format) << text;
    }
}

TEST(ParseCsv, SerializeRoundTripProperty) {
    std::mt19937_64 gen(21);
    std::lognormal_distribution<double> price(8.0, 0.5);
    std::uniform_int_distribution<int> gap(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OhlcBar> bars;
        sys_days d = sys_days{year_month_day{year{2020}, month{1}, day{1}}};
        for (int i = 0; i < 200; ++i) {
            const double o = price(gen), c = price(gen);
            bars.push_back({year_month_day{d}, o, std::max(o, c) * 1.01, std::min(o, c) * 0.99, c});
            d += std::chrono::days{gap(gen)};
        }
        const OhlcSeries series{bars};
        const std::string text = serialize_ohlc_csv(series);
        const OhlcSeries back = parse_ohlc_csv(text);
        ASSERT_EQ(back, series);
        ASSERT_EQ(serialize_ohlc_csv(back), text);
    }
}

TEST(Volatility, ConstantClosesAreZeroVolatility) {
    EXPECT_EQ(capture([] { (void)estimate_volatility(series_from_closes({3000, 3000, 3000, 3000})); }).kind(),
              ErrorKind::ZeroVolatility);
    EXPECT_EQ(capture([] {
                  (void)estimate_volatility(
                      series_from_closes({100, 100 * std::exp(0.01), 100 * std::exp(0.02)}));
              }).kind(),
              ErrorKind::ZeroVolatility);
}

TEST(Volatility, NeedsTwoReturns) {
    EXPECT_EQ(capture([] { (void)estimate_volatility(parse_ohlc_csv(kMinimal)); }).kind(),
              ErrorKind::InsufficientData);
}

TEST(Volatility, SampleStdevOracle) {
    // stdev of ln(110/100), ln(99/110), ln(105/99), ln(101/105), mpmath.
    const auto v = estimate_volatility(series_from_closes({100, 110, 99, 105, 101}));
    EXPECT_EQ(v.n_returns, 4u);
    EXPECT_NEAR(v.sigma_daily, 0.091525685753559392, 1e-15);
    EXPECT_NEAR(v.sigma_annual, v.sigma_daily * std::sqrt(365.0), 1e-12 * v.sigma_annual);
}

TEST(Volatility, ScaleInvarianceProperty) {
    std::mt19937_64 gen(8);
    std::normal_distribution<double> r(0.0, 0.04);
    std::lognormal_distribution<double> scale(0.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> closes{2000.0};
        for (int i = 0; i < 60; ++i) {
            closes.push_back(closes.back() * std::exp(r(gen)));
        }
        const double c = scale(gen);
        std::vector<double> scaled = closes;
        for (double& x : scaled) {
            x *= c;
        }
        const double a = estimate_volatility(series_from_closes(closes)).sigma_daily;
        const double b = estimate_volatility(series_from_closes(scaled)).sigma_daily;
        ASSERT_NEAR(a, b, 1e-12 * a) << c;
    }
}

TEST(Histogram, SingleBar) {
    const auto h = histogram_close_minus_open(series_from_changes({5.0}), 20.0);
    ASSERT_EQ(h.bins.size(), 1u);
    EXPECT_EQ(h.bins[0], (HistogramBin{0.0, 1}));
}

TEST(Histogram, ZeroIsABoundary) {
    const auto h = histogram_close_minus_open(series_from_changes({-1.0, 1.0}), 20.0);
    ASSERT_EQ(h.bins.size(), 2u);
    EXPECT_EQ(h.bins[0], (HistogramBin{-20.0, 1}));
    EXPECT_EQ(h.bins[1], (HistogramBin{0.0, 1}));
}

TEST(Histogram, EdgesBelongToTheRightBin) {
    const auto h = histogram_close_minus_open(series_from_changes({-20.0, 0.0, 20.0, 40.0}), 20.0);
    ASSERT_EQ(h.bins.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(h.bins[i].left_edge, -20.0 + 20.0 * i);
        EXPECT_EQ(h.bins[i].count, 1u);
    }
}

TEST(Histogram, EmptyInteriorBinsKept) {
    const auto h = histogram_close_minus_open(series_from_changes({-380.0, 585.0}), 20.0);
    EXPECT_EQ(h.bins.size(), 49u);
    EXPECT_EQ(h.bins.front().left_edge, -380.0);
    EXPECT_EQ(h.bins.back().left_edge, 580.0);
    EXPECT_EQ(h.total(), 2u);
}

TEST(Histogram, Errors) {
    EXPECT_EQ(capture([] { (void)histogram_close_minus_open(OhlcSeries{}, 20.0); }).kind(),
              ErrorKind::InsufficientData);
    EXPECT_EQ(capture([] { (void)histogram_close_minus_open(series_from_changes({1}), 0.0); }).kind(),
              ErrorKind::Validation);
}

TEST(Histogram, MatchesBruteForceCounting) {
    std::mt19937_64 gen(365);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> changes;
    for (int i = 0; i < 365; ++i) {
        changes.push_back(80.0 * z(gen));
    }
    const auto h = histogram_close_minus_open(series_from_changes(changes), 20.0);
    // The helper uses open = 3000, so recompute the exact floating samples.
    std::vector<double> samples;
    for (double c : changes) {
        samples.push_back((3000.0 + c) - 3000.0);
    }
    const auto oracle = testing::count_bins(samples, 20.0);
    std::map<double, std::uint64_t> got;
    for (const auto& b : h.bins) {
        if (b.count > 0) {
            got[b.left_edge] = b.count;
        }
    }
    EXPECT_EQ(got, oracle);
    EXPECT_EQ(h.total(), 365u);
}

TEST(Histogram, ConservationAndMembershipProperty) {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> width(0.3, 50.0);
    std::normal_distribution<double> change(0.0, 150.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> changes(1 + trial * 3);
        for (double& c : changes) {
            c = change(gen);
        }
        const OhlcSeries s = series_from_changes(changes);
        const double w = width(gen);
        const auto h = histogram_close_minus_open(s, w);
        ASSERT_EQ(h.total(), s.size());
        for (const auto& bar : s.bars()) {
            const double x = bar.close - bar.open;
            const auto hits = std::count_if(h.bins.begin(), h.bins.end(), [&](const HistogramBin& b) {
                return b.left_edge <= x && x < b.left_edge + w;
            });
            ASSERT_GE(hits, 1);
        }
        for (std::size_t i = 1; i < h.bins.size(); ++i) {
            ASSERT_GT(h.bins[i].left_edge, h.bins[i - 1].left_edge);
        }
    }
}

TEST(Json, FieldNames) {
    const auto v = estimate_volatility(series_from_closes({100, 110, 99, 105, 101}));
    const nlohmann::json jv = v;
    EXPECT_TRUE(jv.contains("sigma_daily"));
    EXPECT_TRUE(jv.contains("sigma_annual"));
    EXPECT_EQ(jv["n_returns"], 4);
    const nlohmann::json jh = histogram_close_minus_open(series_from_changes({-1, 1}), 20.0);
    EXPECT_EQ(jh["bin_width"], 20.0);
    EXPECT_EQ(jh["origin"], 0.0);
    EXPECT_EQ(jh["bins"][1]["left_edge"], 0.0);
    EXPECT_EQ(jh["bins"][1]["count"], 1);
}

}  // namespace
}  // namespace liqprob::data
