#pragma once

// Counter-based random source: draw k of stream s is a pure function of
// (seed, s, k), so chunked/parallel Monte Carlo runs are bit-identical to
// serial ones.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace twrn::rng {

inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// A short-lived generator keyed by (seed, stream, draw). Internally a
// splitmix64 sequence started from the mixed key.
class DrawRng {
public:
    DrawRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) {
        state_ = mix64(seed);
        state_ = mix64(state_ ^ (0x6A09E667F3BCC909ull + stream));
        state_ = mix64(state_ ^ (0xBB67AE8584CAA73Bull + draw));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // uniform on (0, 1]
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller
    double next_normal() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace twrn::rng
