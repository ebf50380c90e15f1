#pragma once

#include <array>
#include <cstdint>

namespace liqprob::rng {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
///
/// A pure function of (counter, key): any block of any stream can be
/// regenerated independently, which is what makes path simulation
/// order-independent.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

[[nodiscard]] PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Maps two 32-bit words onto a double in the open interval (0, 1) using
/// the top 52 bits.
[[nodiscard]] double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept;

/// Standard normal quantile (Acklam's rational approximation, relative
/// error below 1.2e-9). Pure arithmetic, so variates are bit-stable for a
/// given libm. Requires 0 < u < 1.
[[nodiscard]] double inverse_normal_cdf(double u) noexcept;

/// Standard normal variates for one simulated path.
///
/// Draw k of path p under master seed s is a fixed function of (s, p, k):
/// block k/2 of the Philox stream with counter (k/2, p) and key s supplies
/// two uniforms, and half k%2 is used.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t path_index) noexcept;

    /// Variate at an arbitrary draw index.
    [[nodiscard]] double at(std::uint64_t draw_index) const noexcept;

    /// Next variate in sequence; equivalent to at(0), at(1), ...
    double next() noexcept;

private:
    [[nodiscard]] std::array<double, 2> block(std::uint64_t block_index) const noexcept;

    PhiloxKey key_;
    std::uint64_t path_;
    std::uint64_t next_index_ = 0;
    std::array<double, 2> cache_{};
};

}  // namespace liqprob::rng
