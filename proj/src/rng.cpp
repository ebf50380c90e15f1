#include "liqprob/rng.hpp"

#include <cmath>

namespace liqprob::rng {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        counter = round(counter, key);
    }
    return counter;
}

double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    // 52 bits so that the largest value, 1 - 2^-53, is representable.
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

double inverse_normal_cdf(double u) noexcept {
    constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                            1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                            6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                            -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                            3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    auto tail = [&](double p) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    };

    if (u < p_low) {
        return tail(u);
    }
    if (u > 1.0 - p_low) {
        return -tail(1.0 - u);
    }
    const double q = u - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t path_index) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      path_(path_index) {}

std::array<double, 2> NormalStream::block(std::uint64_t block_index) const noexcept {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(block_index),
                            static_cast<std::uint32_t>(block_index >> 32),
                            static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32)};
    const PhiloxCounter out = philox4x32_10(ctr, key_);
    return {inverse_normal_cdf(to_open_unit(out[0], out[1])),
            inverse_normal_cdf(to_open_unit(out[2], out[3]))};
}

double NormalStream::at(std::uint64_t draw_index) const noexcept {
    return block(draw_index >> 1)[draw_index & 1];
}

double NormalStream::next() noexcept {
    const std::uint64_t i = next_index_++;
    if ((i & 1) == 0) {
        cache_ = block(i >> 1);
    }
    return cache_[i & 1];
}

}  // namespace liqprob::rng
