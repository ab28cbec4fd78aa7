#pragma once

// Scenario parameters, the derived constants I1-I4 with the ceiling
// thresholds, and the per-draw SNDR formulas for TDBC, MABC and direct
// transmission. Everything is linear-scale; dB exists only at the CLI
// boundary.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "twrn/channel.hpp"

namespace twrn {

struct SystemParams {
    double k1 = 0.1;       // transmitter impairment level
    double k2 = 0.1;       // receiver impairment level
    double eta = 0.6;      // energy conversion efficiency
    double beta = 0.8;     // power-splitting ratio
    double rho = 1e5;      // input SNR P_o / sigma^2, linear
    double sigma2 = 1.0;   // noise power
    double T = 1.0;        // block duration, s
    double R_th = 1.0;     // rate threshold, bit/Hz
    GammaChannel ch_a;     // S_a - R
    GammaChannel ch_b;     // S_b - R
    GammaChannel ch_d;     // S_a - S_b direct
    int quadrature_N = 32;

    double impairment_sum() const { return k1 * k1 + k2 * k2; }
    double tx_power() const { return rho * sigma2; }

    // three-phase protocol (TDBC): rate prelog T/3
    double gamma_th_tdbc() const { return std::exp2(3.0 * R_th / T) - 1.0; }
    // two-phase protocols (MABC, direct transmission)
    double gamma_th_two_phase() const { return std::exp2(2.0 * R_th / T) - 1.0; }

    void validate() const {
        if (!(k1 >= 0 && k2 >= 0)) throw std::domain_error("SystemParams: k1, k2 must be >= 0");
        if (!(eta > 0 && eta < 1)) throw std::domain_error("SystemParams: eta must be in (0,1)");
        if (!(beta > 0 && beta < 1)) throw std::domain_error("SystemParams: beta must be in (0,1)");
        if (!(rho > 0)) throw std::domain_error("SystemParams: rho must be > 0");
        if (!(sigma2 > 0)) throw std::domain_error("SystemParams: sigma2 must be > 0");
        if (!(T > 0)) throw std::domain_error("SystemParams: T must be > 0");
        if (!(R_th > 0)) throw std::domain_error("SystemParams: R_th must be > 0");
        if (quadrature_N < 1) throw std::domain_error("SystemParams: quadrature_N must be >= 1");
    }
};

struct FadingDraw {
    double x = 0;  // |h_ar|^2
    double y = 0;  // |h_br|^2
    double z = 0;  // |h_ab|^2
};

enum class Terminal { A, B };

struct DerivedConstants {
    double i1 = 0, i2 = 0, i3 = 0;
    std::optional<double> i4;     // defined only when gamma_th < i1/i2
    double gamma_th = 0;          // linear SNDR threshold (three-phase)
    double rcc_threshold = 0;     // i1 / (2 i2); +inf for ideal hardware
    double relay_cutoff = 0;      // i1 / i2
    double osc_threshold = 0;     // 1 / (k1^2 + k2^2)
};

inline DerivedConstants derive_constants(const SystemParams& p) {
    p.validate();
    const double kk = p.impairment_sum();
    const double inf = std::numeric_limits<double>::infinity();
    DerivedConstants d;
    d.i1 = p.eta * p.beta / (1.0 + kk);
    d.i2 = p.eta * p.beta * (kk / (1.0 + kk) + kk);
    d.i3 = 2.0 * p.eta * p.beta / ((1.0 - p.beta) * (1.0 + kk));
    d.gamma_th = p.gamma_th_tdbc();
    d.relay_cutoff = d.i2 > 0 ? d.i1 / d.i2 : inf;
    d.rcc_threshold = d.i2 > 0 ? d.i1 / (2.0 * d.i2) : inf;
    d.osc_threshold = kk > 0 ? 1.0 / kk : inf;
    if (d.gamma_th < d.relay_cutoff) {
        d.i4 = 1.0 / ((d.i1 - d.gamma_th * d.i2) * p.rho);
    }
    return d;
}

inline double sndr_direct(double z, const SystemParams& p) {
    const double kk = p.impairment_sum();
    return p.rho * z / (kk * p.rho * z + 1.0);
}

inline double sndr_relay_tdbc(const FadingDraw& d, Terminal t, const DerivedConstants& c,
                              double rho) {
    const double own = (t == Terminal::A) ? d.x : d.y;      // |h_ir|^2 at the receiving side
    const double partner = (t == Terminal::A) ? d.y : d.x;  // |h_jr|^2 carrying the data
    const double num = c.i1 * rho * own * partner;
    const double den = c.i2 * rho * own * (d.x + d.y) + c.i3 * own + 1.0;
    return num / den;
}

inline double sndr_relay_tdbc(const FadingDraw& d, Terminal t, const SystemParams& p) {
    return sndr_relay_tdbc(d, t, derive_constants(p), p.rho);
}

// MABC variant: same SNDR with the I3 term halved (two-phase harvesting).
inline double sndr_relay_mabc(const FadingDraw& d, Terminal t, const DerivedConstants& c,
                              double rho) {
    const double own = (t == Terminal::A) ? d.x : d.y;
    const double partner = (t == Terminal::A) ? d.y : d.x;
    const double num = c.i1 * rho * own * partner;
    const double den = c.i2 * rho * own * (d.x + d.y) + c.i3 * own / 2.0 + 1.0;
    return num / den;
}

inline double sndr_relay_mabc(const FadingDraw& d, Terminal t, const SystemParams& p) {
    return sndr_relay_mabc(d, t, derive_constants(p), p.rho);
}

// Selection combining at both terminals; the direct-link SNDR is shared
// (channel reciprocity).
inline std::pair<double, double> end_to_end_sndrs(const FadingDraw& d, const SystemParams& p) {
    const double gd = sndr_direct(d.z, p);
    const double ga = std::max(gd, sndr_relay_tdbc(d, Terminal::A, p));
    const double gb = std::max(gd, sndr_relay_tdbc(d, Terminal::B, p));
    return {ga, gb};
}

// P_r = eta * beta * P_o * (x + y)
inline double relay_power(const FadingDraw& d, const SystemParams& p) {
    return p.eta * p.beta * p.tx_power() * (d.x + d.y);
}

// The harvested-power and splitting factors cancel the draw dependence:
// G = sqrt(eta*beta / ((1-beta)(1+k1^2+k2^2))).
inline double amplification_gain(const FadingDraw& d, const SystemParams& p) {
    if (!(d.x + d.y > 0)) throw std::domain_error("amplification_gain: no harvested power");
    const double pr = relay_power(d, p);
    const double kk = p.impairment_sum();
    return std::sqrt(pr / ((1.0 - p.beta) * (1.0 + kk) * p.tx_power() * (d.x + d.y)));
}

}  // namespace twrn
