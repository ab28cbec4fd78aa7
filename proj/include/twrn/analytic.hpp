#pragma once

// Closed-form outage engine: P1-P4 with full case analysis, the quartic
// intersection solver, Gaussian-Chebyshev quadrature and the regime
// classifier.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twrn/specfun.hpp"
#include "twrn/system.hpp"

namespace twrn {

enum class Regime { Cooperative, DirectOnly, FullOutage };

enum class P4Case { NotApplicable, NoIntersection, OneRoot, ThreeRootsGateHigh, ThreeRootsGateLow };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Cooperative: return "cooperative";
        case Regime::DirectOnly: return "direct-only";
        default: return "full-outage";
    }
}

inline const char* to_string(P4Case c) {
    switch (c) {
        case P4Case::NotApplicable: return "not-applicable";
        case P4Case::NoIntersection: return "no-intersection";
        case P4Case::OneRoot: return "one-root";
        case P4Case::ThreeRootsGateHigh: return "three-roots-gate-high";
        default: return "three-roots-gate-low";
    }
}

struct QuarticAnalysis {
    double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    std::vector<double> positive_real_roots;  // sorted ascending
    double x_in = 0;
    std::optional<double> x1, x2;      // extra roots (three-root case)
    std::optional<double> phi1, phi2;  // max{x1,x2}, max{Q(x1),Q(x2)}
    bool three_roots = false;
};

struct OutageResult {
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    double p_out = 0;
    double p4_raw = 0;  // before clamping, for diagnostics
    Regime regime = Regime::Cooperative;
    P4Case p4_case = P4Case::NotApplicable;
    int quadrature_N = 0;
};

namespace detail {

// All complex roots of sum_i coeffs[i] x^i by Durand-Kerner simultaneous
// iteration. Near-zero leading coefficients are stripped first.
inline std::vector<std::complex<double>> poly_roots(std::vector<double> coeffs) {
    double cmax = 0;
    for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0) throw std::runtime_error("poly_roots: zero polynomial");
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * cmax) coeffs.pop_back();
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    std::vector<std::complex<double>> a(coeffs.begin(), coeffs.end());
    for (auto& c : a) c /= coeffs.back();
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i]));
    bound += 1.0;
    std::vector<std::complex<double>> w(n);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc = 1.0;
    for (int k = 0; k < n; ++k) {
        acc *= seed;
        w[k] = bound * acc;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> r = a[n];
        for (int i = n - 1; i >= 0; --i) r = r * x + a[i];
        return r;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (w[k] - w[j]);
            const std::complex<double> step = eval(w[k]) / denom;
            w[k] -= step;
            delta = std::max(delta, std::abs(step) / (1.0 + std::abs(w[k])));
        }
        if (delta < 1e-15) break;
    }
    return w;
}

// l1 boundary curve: Q(x) = I4 * gamma_th * (rho I2 x + I3 + 1/x)
inline double q_curve(double x, const DerivedConstants& c, double rho) {
    return *c.i4 * c.gamma_th * (rho * c.i2 * x + c.i3 + 1.0 / x);
}

// Lower branch of Q's inverse (defined where the discriminant is >= 0).
inline double g_curve(double x, const DerivedConstants& c, double rho) {
    const double a = c.gamma_th * c.i3 * *c.i4 - x;
    const double disc = a * a - 4.0 * rho * c.gamma_th * c.gamma_th * c.i2 * *c.i4 * *c.i4;
    if (disc < 0) throw std::runtime_error("g_curve: negative discriminant");
    return (-a - std::sqrt(disc)) / (2.0 * rho * c.gamma_th * c.i2 * *c.i4);
}

// The shared T2T relaying-link closed form (the body of P2^1 with the
// roles of the two relay channels given explicitly). Uses exponentially
// scaled Bessel K so the whole term is assembled with one exponent.
inline double p2_core(int ma, double tha, int mb, double thb, const DerivedConstants& c,
                      double rho) {
    const double g = c.gamma_th;
    const double i4 = *c.i4;
    const double B = i4 * g / thb;
    const double A = c.i2 * i4 * rho * g / thb + 1.0 / tha;
    const double w = 2.0 * std::sqrt(A * B);
    double sum = 0;
    for (int l = 0; l <= mb - 1; ++l) {
        for (int s = 0; s <= l; ++s) {
            for (int t = 0; t <= l - s; ++t) {
                const int nu = s + ma - t;
                double coef = static_cast<double>(specfun::binomial(l, s)) *
                              static_cast<double>(specfun::binomial(l - s, t)) /
                              specfun::factorial(l);
                coef *= std::pow(c.i2 * rho, s) * std::pow(c.i3, l - s - t) * std::pow(B, l);
                sum += coef * std::pow(B / A, 0.5 * nu) * specfun::bessel_k_int_scaled(nu, w);
            }
        }
    }
    const double lead = 2.0 / (specfun::factorial(ma - 1) * std::pow(tha, ma));
    const double raw = 1.0 - lead * std::exp(-c.i3 * i4 * g / thb - w) * sum;
    if (std::isnan(raw)) throw std::runtime_error("p2_core: evaluation produced NaN");
    if (raw < -1e-9 || raw > 1.0 + 1e-9)
        throw std::runtime_error("p2_core: raw value " + std::to_string(raw) + " out of range");
    return std::clamp(raw, 0.0, 1.0);
}

// Gamma-tail sum shared by (29a) and the Xi5 terms of (29b):
// 1/(Gamma(ma) tha^ma) sum_l 1/l! (1/thb)^l (1/tha+1/thb)^{-(l+ma)}
//   * Gamma(l+ma, x_in (1/tha + 1/thb))
inline double p4_gamma_tail(int ma, double tha, int mb, double thb, double x_in) {
    const double s = 1.0 / tha + 1.0 / thb;
    double sum = 0;
    for (int l = 0; l <= mb - 1; ++l) {
        sum += std::pow(1.0 / thb, l) / specfun::factorial(l) * std::pow(s, -(l + ma)) *
               specfun::upper_incomplete_gamma_int(l + ma, x_in * s);
    }
    return sum / (specfun::factorial(ma - 1) * std::pow(tha, ma));
}

// Chebyshev quadrature of the P4 boundary integrand over [lo, hi]:
// Gamma-weighted integral of x^{ma-1} (rho I2 x + I3 + 1/x)^l
//   exp(-(rho g I2 I4/thb + 1/tha) x - g I4/(thb x))
inline double p4_quadrature(int ma, double tha, int mb, double thb, const DerivedConstants& c,
                            double rho, double lo, double hi, int N) {
    const double g = c.gamma_th;
    const double i4 = *c.i4;
    const auto nodes = specfun::chebyshev_nodes(N);
    const double half = (hi - lo) / 2.0;
    const double mid = (hi + lo) / 2.0;
    double sum = 0;
    for (int l = 0; l <= mb - 1; ++l) {
        const double bl = std::pow(i4 * g / thb, l) / specfun::factorial(l);
        for (double v : nodes.nodes) {
            const double k = half * v + mid;
            sum += bl * std::sqrt(1.0 - v * v) * std::pow(k, ma - 1) *
                   std::pow(rho * c.i2 * k + c.i3 + 1.0 / k, l) *
                   std::exp(-(rho * g * c.i2 * i4 / thb + 1.0 / tha) * k - g * i4 / (thb * k));
        }
    }
    const double pref = std::numbers::pi * (hi - lo) /
                        (2.0 * N * specfun::factorial(ma - 1) * std::pow(tha, ma));
    return pref * std::exp(-g * c.i3 * i4 / thb) * sum;
}

// Tangent-substituted quadrature for the [Phi, inf) tail of the
// three-root region, with the inverse-curve bound G(x).
inline double p4_tail_quadrature(int ma, double tha, int mb, double thb,
                                 const DerivedConstants& c, double rho, double phi, int N) {
    const auto nodes = specfun::chebyshev_nodes(N);
    double sum = 0;
    for (int l = 0; l <= mb - 1; ++l) {
        const double bl = std::pow(1.0 / thb, l) / specfun::factorial(l);
        for (double v : nodes.nodes) {
            const double kn3 = std::numbers::pi / 4.0 * (v + 1.0);
            const double x = std::tan(kn3) + phi;
            const double gx = g_curve(x, c, rho);
            const double sec = 1.0 / std::cos(kn3);
            sum += bl * std::sqrt(1.0 - v * v) * std::pow(x, ma - 1) * std::pow(gx, l) * sec *
                   sec * std::exp(-(gx / thb + x / tha));
        }
    }
    const double pref = std::numbers::pi * std::numbers::pi /
                        (4.0 * N * specfun::factorial(ma - 1) * std::pow(tha, ma));
    return pref * sum;
}

}  // namespace detail

inline Regime classify_regime(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    if (c.gamma_th >= c.osc_threshold) return Regime::FullOutage;
    if (c.gamma_th >= c.rcc_threshold) return Regime::DirectOnly;
    return Regime::Cooperative;
}

// Outage probability of the direct link.
inline double p1(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    const double kk = p.impairment_sum();
    if (c.gamma_th >= c.osc_threshold) return 1.0;
    const double w = c.gamma_th / (p.ch_d.scale * p.rho * (1.0 - c.gamma_th * kk));
    return specfun::reg_lower_incomplete_gamma_int(p.ch_d.shape_int(), w);
}

// T2T outage of the S_b -> S_a relaying link.
inline double p2(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    if (!c.i4) return 1.0;
    return detail::p2_core(p.ch_a.shape_int(), p.ch_a.scale, p.ch_b.shape_int(), p.ch_b.scale, c,
                           p.rho);
}

// T2T outage of the S_a -> S_b relaying link (roles of a and b swapped).
inline double p3(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    if (!c.i4) return 1.0;
    return detail::p2_core(p.ch_b.shape_int(), p.ch_b.scale, p.ch_a.shape_int(), p.ch_a.scale, c,
                           p.rho);
}

// Intersection analysis of the two boundary curves (valid only when
// gamma_th < I1/(2 I2), where the diagonal intersection x_in exists).
inline QuarticAnalysis quartic_analysis(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    if (!(c.gamma_th < c.rcc_threshold))
        throw std::domain_error("quartic_analysis: requires gamma_th < I1/(2 I2)");
    const double g = c.gamma_th;
    const double i4 = *c.i4;
    const double u = p.rho * g * c.i2 * i4;  // = g I2 / (I1 - g I2), < 1 here

    QuarticAnalysis qa;
    qa.c0 = p.rho * c.i2 * i4 * i4 * g * g * g;
    qa.c1 = c.i3 * i4 * g * g * (1.0 + 2.0 * u);
    qa.c2 = i4 * g * g * (u * c.i3 * c.i3 + 2.0 * g * i4 * p.rho * p.rho * c.i2 * c.i2 +
                          c.i3 * c.i3);
    qa.c3 = c.i3 * g * (2.0 * u * u + u - 1.0);
    qa.c4 = p.rho * g * c.i2 * (u * u - 1.0);

    // closed-form diagonal intersection
    const double disc = (c.i3 * g) * (c.i3 * g) - 4.0 * p.rho * g * (2.0 * c.i2 * g - c.i1);
    qa.x_in = (-c.i3 * g - std::sqrt(disc)) / (2.0 * p.rho * (2.0 * c.i2 * g - c.i1));

    const std::vector<double> coeffs{qa.c0, qa.c1, qa.c2, qa.c3, qa.c4};
    double cmax = 0;
    for (double cc : coeffs) cmax = std::max(cmax, std::abs(cc));
    const auto roots = detail::poly_roots(coeffs);
    for (const auto& r : roots) {
        if (std::abs(r.imag()) <= 1e-9 * (1.0 + std::abs(r.real())) && r.real() > 1e-12) {
            const double x = r.real();
            const double x2 = x * x;
            const double res =
                qa.c4 * x2 * x2 + qa.c3 * x2 * x + qa.c2 * x2 + qa.c1 * x + qa.c0;
            if (std::abs(res) > 1e-9 * cmax * std::max(1.0, x2 * x2))
                throw std::runtime_error("quartic_analysis: root residual above tolerance");
            qa.positive_real_roots.push_back(x);
        }
    }
    std::sort(qa.positive_real_roots.begin(), qa.positive_real_roots.end());

    // collapse coincident roots
    std::vector<double> uniq;
    for (double r : qa.positive_real_roots) {
        if (uniq.empty() || std::abs(r - uniq.back()) > 1e-7 * std::max(1.0, std::abs(r)))
            uniq.push_back(r);
    }

    bool found_xin = false;
    std::vector<double> extras;
    for (double r : uniq) {
        if (std::abs(r - qa.x_in) <= 1e-6 * std::max(1.0, qa.x_in) * std::max(1.0, qa.x_in)) {
            found_xin = true;
        } else {
            extras.push_back(r);
        }
    }
    if (!found_xin)
        throw std::runtime_error("quartic_analysis: x_in not found among quartic roots");

    if (extras.size() >= 2) {
        qa.three_roots = true;
        qa.x1 = extras[0];
        qa.x2 = extras[1];
        qa.phi1 = std::max(*qa.x1, *qa.x2);
        qa.phi2 = std::max(detail::q_curve(*qa.x1, c, p.rho), detail::q_curve(*qa.x2, c, p.rho));
    }
    return qa;
}

namespace detail {

// One-root case (29a).
inline double p4_one_root(const SystemParams& p, const DerivedConstants& c, double x_in) {
    const int ma = p.ch_a.shape_int(), mb = p.ch_b.shape_int();
    const double tha = p.ch_a.scale, thb = p.ch_b.scale;
    return 1.0 - p4_gamma_tail(ma, tha, mb, thb, x_in) -
           p4_quadrature(ma, tha, mb, thb, c, p.rho, 0.0, x_in, p.quadrature_N) -
           p4_gamma_tail(mb, thb, ma, tha, x_in) -
           p4_quadrature(mb, thb, ma, tha, c, p.rho, 0.0, x_in, p.quadrature_N);
}

// Three-root case (29b), gate-open branch. phi1 bounds the x-side strip,
// phi2 the y-side strip.
inline double p4_three_roots_open(const SystemParams& p, const DerivedConstants& c, double x_in,
                                  double phi1, double phi2) {
    const int ma = p.ch_a.shape_int(), mb = p.ch_b.shape_int();
    const double tha = p.ch_a.scale, thb = p.ch_b.scale;
    const int N = p.quadrature_N;
    double v = 1.0;
    v += p4_gamma_tail(ma, tha, mb, thb, x_in);
    v += p4_gamma_tail(mb, thb, ma, tha, x_in);
    v -= p4_quadrature(ma, tha, mb, thb, c, p.rho, x_in, phi1, N);
    v -= p4_quadrature(mb, thb, ma, tha, c, p.rho, x_in, phi2, N);
    v -= p4_tail_quadrature(ma, tha, mb, thb, c, p.rho, phi1, N);
    v -= p4_tail_quadrature(mb, thb, ma, tha, c, p.rho, phi2, N);
    return v;
}

}  // namespace detail

struct P4Result {
    double value = 0;
    double raw = 0;
    P4Case p4_case = P4Case::NotApplicable;
};

// Joint T2T outage term with the full case analysis of the integral
// region geometry.
inline P4Result p4(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    P4Result r;
    if (!c.i4) {
        r.value = r.raw = 1.0;
        r.p4_case = P4Case::NotApplicable;
        return r;
    }
    if (c.gamma_th >= c.rcc_threshold) {
        // no diagonal intersection: P4^1 = P2^1 + P3^1 - 1
        r.raw = p2(p) + p3(p) - 1.0;
        r.p4_case = P4Case::NoIntersection;
    } else {
        const QuarticAnalysis qa = quartic_analysis(p);
        if (!qa.three_roots) {
            r.raw = detail::p4_one_root(p, c, qa.x_in);
            r.p4_case = P4Case::OneRoot;
        } else {
            const double mid = (qa.x_in + *qa.phi1) / 2.0;
            const double gate_k1 = detail::g_curve(mid, c, p.rho);
            const double gate_k2 = detail::q_curve(mid, c, p.rho);
            if (gate_k1 > gate_k2) {
                r.raw = detail::p4_three_roots_open(p, c, qa.x_in, *qa.phi1, *qa.phi2);
                r.p4_case = P4Case::ThreeRootsGateHigh;
            } else {
                r.raw = detail::p4_one_root(p, c, qa.x_in);
                r.p4_case = P4Case::ThreeRootsGateLow;
            }
        }
    }
    if (std::isnan(r.raw)) throw std::runtime_error("p4: evaluation produced NaN");
    if (r.raw < -2e-3 || r.raw > 1.0 + 2e-3)
        throw std::runtime_error("p4: raw value " + std::to_string(r.raw) +
                                 " outside the quadrature-error window");
    r.value = std::clamp(r.raw, 0.0, 1.0);
    return r;
}

inline OutageResult system_outage(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    OutageResult out;
    out.quadrature_N = p.quadrature_N;
    out.regime = classify_regime(p);
    if (out.regime == Regime::FullOutage) {
        out.p1 = out.p2 = out.p3 = out.p4 = out.p4_raw = 1.0;
        out.p_out = 1.0;
        out.p4_case = P4Case::NotApplicable;
        return out;
    }
    out.p1 = p1(p);
    if (c.gamma_th >= c.relay_cutoff) {
        out.p2 = out.p3 = out.p4 = out.p4_raw = 1.0;
        out.p4_case = P4Case::NotApplicable;
        out.p_out = out.p1;
        return out;
    }
    out.p2 = p2(p);
    out.p3 = p3(p);
    const P4Result r4 = p4(p);
    out.p4 = r4.value;
    out.p4_raw = r4.raw;
    out.p4_case = r4.p4_case;
    if (out.regime == Regime::DirectOnly) {
        out.p_out = out.p1;  // P2 + P3 - P4 = 1 exactly on this branch
    } else {
        out.p_out = std::clamp(out.p1 * (out.p2 + out.p3 - out.p4), 0.0, 1.0);
    }
    return out;
}

// d = m_d below the OSC threshold, 0 above.
inline int diversity_gain(const SystemParams& p) {
    const DerivedConstants c = derive_constants(p);
    if (c.gamma_th >= c.osc_threshold) return 0;
    return p.ch_d.shape_int();
}

struct CeilingLevels {
    double k_rcc = 0;  // impairment level where the RCC threshold hits gamma_th
    double k_osc = 0;  // impairment level where the OSC threshold hits gamma_th
};

// Inverts the threshold formulas for the k1 = k2 = k configuration.
inline CeilingLevels hi_ceiling_levels(const SystemParams& p) {
    const double g = p.gamma_th_tdbc();
    CeilingLevels lv;
    if (!(g > 0)) {  // zero-rate requirement: no impairment level can ceiling it
        lv.k_rcc = lv.k_osc = std::numeric_limits<double>::infinity();
        return lv;
    }
    lv.k_osc = 1.0 / std::sqrt(2.0 * g);
    // gamma_th = 1 / (2u(2+u)) with u = 2k^2  =>  2g u^2 + 4g u - 1 = 0
    const double u = (-4.0 * g + std::sqrt(16.0 * g * g + 8.0 * g)) / (4.0 * g);
    lv.k_rcc = std::sqrt(u / 2.0);
    return lv;
}

}  // namespace twrn
