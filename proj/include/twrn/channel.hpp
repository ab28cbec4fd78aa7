#pragma once

// Squared-envelope gain of a Nakagami-m fading link, i.e. a gamma random
// variable with shape m and scale theta = Omega / m.

#include <cmath>
#include <stdexcept>

#include "twrn/rng.hpp"
#include "twrn/specfun.hpp"

namespace twrn {

struct GammaChannel {
    double shape = 1.0;  // m; integer for the analytic path, real >= 0.5 for sampling
    double scale = 1.0;  // theta = Omega / m

    GammaChannel() = default;
    GammaChannel(double m, double theta) : shape(m), scale(theta) {
        if (!(m >= 0.5)) throw std::domain_error("GammaChannel: shape must be >= 0.5");
        if (!(theta > 0)) throw std::domain_error("GammaChannel: scale must be > 0");
    }

    double average_power() const { return shape * scale; }

    bool integer_shape() const {
        return shape == std::floor(shape) && shape >= 1.0;
    }
    int shape_int() const {
        if (!integer_shape())
            throw std::domain_error("GammaChannel: analytic path needs integer shape");
        return static_cast<int>(shape);
    }
};

// Omega = d^{-alpha}, theta = Omega / m.
inline GammaChannel channel_from_geometry(double d, double alpha, double m) {
    if (!(d > 0)) throw std::domain_error("channel_from_geometry: d must be > 0");
    if (!(alpha > 0)) throw std::domain_error("channel_from_geometry: alpha must be > 0");
    const double omega = std::pow(d, -alpha);
    return GammaChannel(m, omega / m);
}

inline double gain_pdf(const GammaChannel& ch, double v) {
    if (!(v > 0)) throw std::domain_error("gain_pdf: v must be > 0");
    return std::pow(v, ch.shape - 1) * std::exp(-v / ch.scale) /
           (std::tgamma(ch.shape) * std::pow(ch.scale, ch.shape));
}

inline double gain_cdf(const GammaChannel& ch, double v) {
    if (v < 0) throw std::domain_error("gain_cdf: v must be >= 0");
    if (v == 0) return 0.0;
    return specfun::reg_lower_incomplete_gamma_int(ch.shape_int(), v / ch.scale);
}

namespace detail {

// Marsaglia-Tsang squeeze method, shape >= 1.
inline double gamma_variate_ge1(rng::DrawRng& g, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = g.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = g.next_uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace detail

// One gamma(shape, scale) draw. Shapes in [0.5, 1) go through the
// shape-boost transform; this path is outside the analytic formulas'
// domain and exists for exploratory sampling only.
inline double sample_gain(const GammaChannel& ch, rng::DrawRng& g) {
    if (ch.shape >= 1.0) return ch.scale * detail::gamma_variate_ge1(g, ch.shape);
    const double boosted = detail::gamma_variate_ge1(g, ch.shape + 1.0);
    return ch.scale * boosted * std::pow(g.next_uniform(), 1.0 / ch.shape);
}

}  // namespace twrn
