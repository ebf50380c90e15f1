#pragma once

#include <string>

namespace liqprob::fmt {

/// Shortest decimal that parses back to the same double.
[[nodiscard]] std::string shortest(double x);

/// Fixed-point with `digits` decimals, correctly rounded from the binary
/// value; a rounded negative zero prints without its sign.
[[nodiscard]] std::string fixed(double x, int digits);

/// `x` rounded to `digits` decimals, as the nearest double. JSON writers use
/// this so that the emitted text is the short decimal.
[[nodiscard]] double round_to(double x, int digits);

}  // namespace liqprob::fmt
