#include "liqprob/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace liqprob::fmt {

std::string shortest(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) {
        throw std::logic_error("to_chars failed");
    }
    return std::string(buf, end);
}

std::string fixed(double x, int digits) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

double round_to(double x, int digits) {
    // Parse the correctly rounded text rather than scaling, which can be off
    // by one ulp in the last place.
    const std::string s = fixed(x, digits);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

}  // namespace liqprob::fmt
