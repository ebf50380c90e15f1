#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace liqprob::data {

struct OhlcBar {
    std::chrono::year_month_day date;
    double open;
    double high;
    double low;
    double close;

    friend bool operator==(const OhlcBar&, const OhlcBar&) = default;
};

/// Daily bars in strictly increasing date order. Calendar gaps are allowed.
class OhlcSeries {
public:
    OhlcSeries() = default;

    /// Throws Error{Validation} for a bar with a non-positive price or a
    /// high/low that does not bracket open and close, and Error{Ordering}
    /// for a date that does not advance. Row numbers in errors are 1-based.
    explicit OhlcSeries(std::vector<OhlcBar> bars);

    [[nodiscard]] const std::vector<OhlcBar>& bars() const noexcept { return bars_; }
    [[nodiscard]] std::size_t size() const noexcept { return bars_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bars_.empty(); }

    friend bool operator==(const OhlcSeries&, const OhlcSeries&) = default;

private:
    std::vector<OhlcBar> bars_;
};

/// Reads `date,open,high,low,close` CSV (columns located by header name,
/// extra columns ignored). Dates are YYYY-MM-DD; CRLF line endings and
/// blank lines are tolerated.
///
/// Errors: Error{Format} naming a missing column or an unparsable field,
/// Error{Validation} / Error{Ordering} with the offending data row.
[[nodiscard]] OhlcSeries parse_ohlc_csv(std::istream& source);
[[nodiscard]] OhlcSeries parse_ohlc_csv(std::string_view text);

/// Writes the canonical header and shortest round-trip decimal prices.
[[nodiscard]] std::string serialize_ohlc_csv(const OhlcSeries& series);

[[nodiscard]] std::string format_date(std::chrono::year_month_day date);
/// Strict YYYY-MM-DD. Throws Error{Format}.
[[nodiscard]] std::chrono::year_month_day parse_date(std::string_view text);

struct VolatilityEstimate {
    double sigma_daily;
    double sigma_annual;
    std::size_t n_returns;
};

/// Sample standard deviation (mean removed, n-1 denominator) of daily
/// close-to-close log returns, annualized by sqrt(365).
///
/// Needs at least two returns (three bars): Error{InsufficientData}.
/// Identical returns give Error{ZeroVolatility}.
[[nodiscard]] VolatilityEstimate estimate_volatility(const OhlcSeries& series);

struct HistogramBin {
    double left_edge;
    std::uint64_t count;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Bins cover [origin + k w, origin + (k+1) w) for consecutive k, from the
/// lowest occupied bin to the highest, empty interior bins included.
struct Histogram {
    double bin_width;
    double origin;
    std::vector<HistogramBin> bins;

    [[nodiscard]] std::uint64_t total() const noexcept;
};

/// Histogram of close - open per bar with 0 (or `origin`) as a bin boundary.
/// Errors: empty series → Error{InsufficientData}; bin_width not finite and
/// positive → Error{Validation}.
[[nodiscard]] Histogram histogram_close_minus_open(const OhlcSeries& series, double bin_width,
                                                   double origin = 0.0);

void to_json(nlohmann::json& j, const VolatilityEstimate& v);
void to_json(nlohmann::json& j, const HistogramBin& b);
void to_json(nlohmann::json& j, const Histogram& h);

}  // namespace liqprob::data
