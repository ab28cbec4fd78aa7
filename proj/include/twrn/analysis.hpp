#pragma once

// Parameter sweeps, the PS-ratio optimizer, diversity-slope fitting and
// energy efficiency, layered on the analytic and Monte Carlo engines.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twrn/analytic.hpp"
#include "twrn/montecarlo.hpp"

namespace twrn {

enum class SweepAxis { Rho, Beta, KAve, GammaTh, DAr, RTh };

enum class Engine { Analytic, Mc, Both };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Rho: return "rho";
        case SweepAxis::Beta: return "beta";
        case SweepAxis::KAve: return "k_ave";
        case SweepAxis::GammaTh: return "gamma_th";
        case SweepAxis::DAr: return "d_ar";
        default: return "R_th";
    }
}

struct SweepRow {
    std::string axis_name;
    double axis_value = 0;
    std::optional<double> p_out_analytic;
    std::optional<double> p_out_mc;
    std::optional<double> mc_stderr;
    std::string regime;
    std::map<std::string, double> extras;
    std::optional<std::string> error;
};

struct SweepOptions {
    Engine engine = Engine::Analytic;
    std::uint64_t mc_n = 1000000;
    std::uint64_t seed = 1;
    double alpha1 = 2.7;          // relay-link path loss exponent for the d_ar axis
    double total_distance = 10.0;  // d_ar + d_br held fixed on the d_ar axis
};

namespace detail {

inline SystemParams apply_axis(SystemParams p, SweepAxis axis, double v, const SweepOptions& o) {
    switch (axis) {
        case SweepAxis::Rho:
            p.rho = v;
            break;
        case SweepAxis::Beta:
            p.beta = v;
            break;
        case SweepAxis::KAve:
            p.k1 = p.k2 = v;
            break;
        case SweepAxis::GammaTh:
            // back out R_th so the three-phase threshold equals v
            if (!(v > 0)) throw std::domain_error("gamma_th grid value must be > 0");
            p.R_th = p.T / 3.0 * std::log2(1.0 + v);
            break;
        case SweepAxis::DAr: {
            if (!(v > 0 && v < o.total_distance))
                throw std::domain_error("d_ar grid value must lie in (0, total_distance)");
            p.ch_a = channel_from_geometry(v, o.alpha1, p.ch_a.shape);
            p.ch_b = channel_from_geometry(o.total_distance - v, o.alpha1, p.ch_b.shape);
            break;
        }
        case SweepAxis::RTh:
            p.R_th = v;
            break;
    }
    return p;
}

}  // namespace detail

inline std::vector<SweepRow> sweep(const SystemParams& p, SweepAxis axis,
                                   const std::vector<double>& grid, const SweepOptions& opts) {
    if (grid.empty()) throw std::domain_error("sweep: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row;
        row.axis_name = to_string(axis);
        row.axis_value = grid[i];
        try {
            const SystemParams q = detail::apply_axis(p, axis, grid[i], opts);
            q.validate();
            row.regime = to_string(classify_regime(q));
            if (opts.engine != Engine::Mc) {
                const OutageResult r = system_outage(q);
                row.p_out_analytic = r.p_out;
                row.extras["p1"] = r.p1;
                row.extras["p2"] = r.p2;
                row.extras["p3"] = r.p3;
                row.extras["p4"] = r.p4;
            }
            if (opts.engine != Engine::Analytic) {
                const mc::McEstimate e =
                    mc::estimate_outage_tdbc(q, opts.mc_n, opts.seed + i);
                row.p_out_mc = e.p_hat;
                row.mc_stderr = e.stderr_;
            }
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct BetaOptimum {
    double beta_opt = 0;
    double p_out_min = 1;
    bool degenerate = false;  // p_out has no beta dependence in this regime
    double coarse_beta = 0;
    double coarse_p_out = 1;
};

inline BetaOptimum optimal_beta(const SystemParams& p, int resolution) {
    if (resolution < 16) throw std::domain_error("optimal_beta: resolution must be >= 16");
    BetaOptimum out;
    if (classify_regime(p) != Regime::Cooperative) {
        out.degenerate = true;
        out.p_out_min = out.coarse_p_out = system_outage(p).p_out;
        return out;
    }
    auto f = [&](double b) {
        SystemParams q = p;
        q.beta = b;
        return system_outage(q).p_out;
    };
    const double lo = 0.01, hi = 0.99;
    int best = 0;
    std::vector<double> bs(resolution), vals(resolution);
    for (int i = 0; i < resolution; ++i) {
        bs[i] = lo + (hi - lo) * i / (resolution - 1);
        vals[i] = f(bs[i]);
        if (vals[i] < vals[best]) best = i;
    }
    out.coarse_beta = bs[best];
    out.coarse_p_out = vals[best];

    double a = bs[std::max(0, best - 1)];
    double b = bs[std::min(resolution - 1, best + 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    out.beta_opt = (a + b) / 2.0;
    out.p_out_min = std::min(f(out.beta_opt), out.coarse_p_out);
    if (out.coarse_p_out < out.p_out_min) out.beta_opt = out.coarse_beta;
    return out;
}

struct SlopeResult {
    double d_hat = 0;
    bool full_outage = false;
};

namespace detail {

inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

// Least-squares slope of log10(p_out) against log10(rho), negated.
inline SlopeResult diversity_slope(const SystemParams& p, double rho_lo, double rho_hi,
                                   int points) {
    if (!(rho_lo < rho_hi)) throw std::domain_error("diversity_slope: need lo < hi");
    if (points < 4) throw std::domain_error("diversity_slope: need >= 4 points");
    std::vector<double> lx, ly;
    bool all_one = true;
    for (int i = 0; i < points; ++i) {
        SystemParams q = p;
        const double t = static_cast<double>(i) / (points - 1);
        q.rho = std::pow(10.0, std::log10(rho_lo) + t * (std::log10(rho_hi) - std::log10(rho_lo)));
        const double po = system_outage(q).p_out;
        if (po < 1.0) all_one = false;
        if (!(po > 0)) throw std::domain_error("diversity_slope: p_out is zero in the window");
        lx.push_back(std::log10(q.rho));
        ly.push_back(std::log10(po));
    }
    SlopeResult r;
    if (all_one) {
        r.full_outage = true;
        return r;
    }
    r.d_hat = -detail::least_squares_slope(lx, ly);
    return r;
}

// EE = 3 (1 - P_out) R_th / (2 P_o)
inline double energy_efficiency(const SystemParams& p) {
    const double p_out = system_outage(p).p_out;
    return 3.0 * (1.0 - p_out) * p.R_th / (2.0 * p.tx_power());
}

}  // namespace twrn
