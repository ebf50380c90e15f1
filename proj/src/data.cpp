#include "liqprob/data.hpp"

#include "liqprob/core.hpp"
#include "liqprob/error.hpp"
#include "liqprob/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace liqprob::data {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            return fields;
        }
        start = comma + 1;
    }
}

double parse_price(std::string_view field, const char* column, std::size_t row) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw Error(ErrorKind::Format,
                    "row " + std::to_string(row) + ": column '" + column + "' is not a number",
                    row);
    }
    return value;
}

int parse_digits(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return -1;
    }
    return v;
}

void check_bar(const OhlcBar& bar, std::size_t row) {
    const std::string where = "row " + std::to_string(row) + ": ";
    for (double p : {bar.open, bar.high, bar.low, bar.close}) {
        if (!(std::isfinite(p) && p > 0.0)) {
            throw Error(ErrorKind::Validation, where + "prices must be finite and > 0", row);
        }
    }
    if (bar.low > std::min(bar.open, bar.close) || bar.high < std::max(bar.open, bar.close)) {
        throw Error(ErrorKind::Validation, where + "high/low do not bracket open and close", row);
    }
}

}  // namespace

OhlcSeries::OhlcSeries(std::vector<OhlcBar> bars) : bars_(std::move(bars)) {
    for (std::size_t i = 0; i < bars_.size(); ++i) {
        const std::size_t row = i + 1;
        if (!bars_[i].date.ok()) {
            throw Error(ErrorKind::Validation, "row " + std::to_string(row) + ": invalid date", row);
        }
        check_bar(bars_[i], row);
        if (i > 0 && !(bars_[i - 1].date < bars_[i].date)) {
            throw Error(ErrorKind::Ordering,
                        "row " + std::to_string(row) + ": date " + format_date(bars_[i].date) +
                            " does not follow " + format_date(bars_[i - 1].date),
                        row);
        }
    }
}

std::string format_date(std::chrono::year_month_day date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

std::chrono::year_month_day parse_date(std::string_view text) {
    const auto fail = [&] {
        return Error(ErrorKind::Format, "invalid ISO date '" + std::string(text) + "'");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw fail();
    }
    const int y = parse_digits(text.substr(0, 4));
    const int m = parse_digits(text.substr(5, 2));
    const int d = parse_digits(text.substr(8, 2));
    if (y < 0 || m < 0 || d < 0) {
        throw fail();
    }
    const std::chrono::year_month_day date{std::chrono::year{y},
                                           std::chrono::month{static_cast<unsigned>(m)},
                                           std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw fail();
    }
    return date;
}

OhlcSeries parse_ohlc_csv(std::istream& source) {
    constexpr std::array<const char*, 5> kColumns = {"date", "open", "high", "low", "close"};

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::array<std::size_t, 5> index{};
    std::size_t width = 0;
    std::vector<OhlcBar> bars;

    while (std::getline(source, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) {
            continue;
        }
        const auto fields = split_commas(view);
        if (!have_header) {
            for (std::size_t c = 0; c < kColumns.size(); ++c) {
                const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
                if (it == fields.end()) {
                    throw Error(ErrorKind::Format,
                                std::string("missing column '") + kColumns[c] + "' in header", 0);
                }
                index[c] = static_cast<std::size_t>(it - fields.begin());
            }
            width = fields.size();
            have_header = true;
            continue;
        }
        const std::size_t row = bars.size() + 1;
        if (fields.size() != width) {
            throw Error(ErrorKind::Format,
                        "row " + std::to_string(row) + ": expected " + std::to_string(width) +
                            " fields, got " + std::to_string(fields.size()),
                        row);
        }
        OhlcBar bar{};
        try {
            bar.date = parse_date(fields[index[0]]);
        } catch (const Error& e) {
            throw Error(ErrorKind::Format, "row " + std::to_string(row) + ": " + e.what(), row);
        }
        bar.open = parse_price(fields[index[1]], "open", row);
        bar.high = parse_price(fields[index[2]], "high", row);
        bar.low = parse_price(fields[index[3]], "low", row);
        bar.close = parse_price(fields[index[4]], "close", row);
        check_bar(bar, row);
        if (!bars.empty() && !(bars.back().date < bar.date)) {
            throw Error(ErrorKind::Ordering,
                        "row " + std::to_string(row) + ": date " + format_date(bar.date) +
                            " does not follow " + format_date(bars.back().date),
                        row);
        }
        bars.push_back(bar);
    }
    if (!have_header) {
        throw Error(ErrorKind::Format, "missing header line", 0);
    }
    return OhlcSeries{std::move(bars)};
}

OhlcSeries parse_ohlc_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_ohlc_csv(in);
}

std::string serialize_ohlc_csv(const OhlcSeries& series) {
    std::string out = "date,open,high,low,close\n";
    for (const OhlcBar& b : series.bars()) {
        out += format_date(b.date);
        for (double p : {b.open, b.high, b.low, b.close}) {
            out += ',';
            out += fmt::shortest(p);
        }
        out += '\n';
    }
    return out;
}

VolatilityEstimate estimate_volatility(const OhlcSeries& series) {
    if (series.size() < 3) {
        throw Error(ErrorKind::InsufficientData,
                    "volatility needs at least 3 bars (2 returns), got " +
                        std::to_string(series.size()));
    }
    const auto& bars = series.bars();
    std::vector<double> returns;
    returns.reserve(bars.size() - 1);
    for (std::size_t i = 1; i < bars.size(); ++i) {
        returns.push_back(std::log(bars[i].close / bars[i - 1].close));
    }
    const double n = static_cast<double>(returns.size());
    double mean = 0.0;
    double largest = 0.0;
    for (double r : returns) {
        mean += r;
        largest = std::max(largest, std::abs(r));
    }
    mean /= n;
    double ss = 0.0;
    for (double r : returns) {
        ss += (r - mean) * (r - mean);
    }
    const double sigma_daily = std::sqrt(ss / (n - 1.0));
    // Returns equal up to log rounding are a constant series.
    if (sigma_daily <= 1e-12 * largest) {
        throw Error(ErrorKind::ZeroVolatility, "zero volatility: all daily log returns are equal");
    }
    return VolatilityEstimate{.sigma_daily = sigma_daily,
                              .sigma_annual = sigma_daily * std::sqrt(kDaysPerYear),
                              .n_returns = returns.size()};
}

std::uint64_t Histogram::total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& b : bins) {
        sum += b.count;
    }
    return sum;
}

Histogram histogram_close_minus_open(const OhlcSeries& series, double bin_width, double origin) {
    if (!(std::isfinite(bin_width) && bin_width > 0.0)) {
        throw Error(ErrorKind::Validation, "bin_width must be finite and > 0");
    }
    if (!std::isfinite(origin)) {
        throw Error(ErrorKind::Validation, "origin must be finite");
    }
    if (series.empty()) {
        throw Error(ErrorKind::InsufficientData, "histogram needs at least one bar");
    }

    const auto edge = [&](long long k) { return origin + static_cast<double>(k) * bin_width; };
    // Floor of the scaled offset, then nudged so edge(k) <= x < edge(k + 1)
    // holds with the same arithmetic used to report edges.
    const auto bin_of = [&](double x) {
        auto k = static_cast<long long>(std::floor((x - origin) / bin_width));
        while (edge(k) > x) {
            --k;
        }
        while (edge(k + 1) <= x) {
            ++k;
        }
        return k;
    };

    std::vector<long long> keys;
    keys.reserve(series.size());
    for (const OhlcBar& b : series.bars()) {
        keys.push_back(bin_of(b.close - b.open));
    }
    const auto [lo, hi] = std::minmax_element(keys.begin(), keys.end());
    const long long span = *hi - *lo + 1;
    constexpr long long kMaxBins = 10'000'000;
    if (span > kMaxBins) {
        throw Error(ErrorKind::Validation, "bin_width too small: more than 1e7 bins");
    }

    Histogram h{.bin_width = bin_width, .origin = origin, .bins = {}};
    h.bins.reserve(static_cast<std::size_t>(span));
    for (long long k = *lo; k <= *hi; ++k) {
        h.bins.push_back({edge(k), 0});
    }
    for (long long k : keys) {
        ++h.bins[static_cast<std::size_t>(k - *lo)].count;
    }
    return h;
}

void to_json(nlohmann::json& j, const VolatilityEstimate& v) {
    j = nlohmann::json{{"sigma_daily", v.sigma_daily},
                       {"sigma_annual", v.sigma_annual},
                       {"n_returns", v.n_returns}};
}

void to_json(nlohmann::json& j, const HistogramBin& b) {
    j = nlohmann::json{{"left_edge", b.left_edge}, {"count", b.count}};
}

void to_json(nlohmann::json& j, const Histogram& h) {
    j = nlohmann::json{{"bin_width", h.bin_width}, {"origin", h.origin}, {"bins", h.bins}};
}

}  // namespace liqprob::data
