#pragma once

// Figure presets: each id pins the scenario parameters of one published
// curve family and emits the corresponding data table. Run controls
// (seed, mc_n, quadrature_N) come from the caller's config.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "twrn/analysis.hpp"
#include "twrn/config.hpp"

namespace twrn {

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig4a", "fig4b", "fig5", "fig6",  "fig7",
                                              "fig8",  "fig9",  "fig10", "fig11", "fig12"};
    return ids;
}

namespace detail {

inline std::vector<double> db_grid(double lo_db, double hi_db, double step_db) {
    std::vector<double> g;
    for (double d = lo_db; d <= hi_db + 1e-9; d += step_db) g.push_back(d);
    return g;
}

inline std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

}  // namespace detail

inline CsvTable run_figure(const std::string& id, ScenarioConfig cfg) {
    CsvTable t;
    cfg.m_a = 2;
    cfg.m_b = 2;
    cfg.m_d = 1;

    if (id == "fig4a") {
        // outage vs input SNR across the three regimes, analytic and MC
        t.header = {"R_th", "rho_db", "p_out_analytic", "p_out_mc", "mc_stderr", "regime"};
        for (double rth : {1.0, 1.5, 1.75, 2.0}) {
            for (double db : detail::db_grid(0, 50, 5)) {
                ScenarioConfig c = cfg;
                c.R_th = rth;
                c.rho = std::pow(10.0, db / 10.0);
                const SystemParams p = c.to_system_params();
                const OutageResult r = system_outage(p);
                const mc::McEstimate e = mc::estimate_outage_tdbc(p, c.mc_n, c.seed);
                t.rows.push_back({csv_num(rth), csv_num(db), csv_num(r.p_out), csv_num(e.p_hat),
                                  csv_num(e.stderr_), to_string(r.regime)});
            }
        }
    } else if (id == "fig4b") {
        // quadrature error vs node count
        t.header = {"N", "R_th", "delta"};
        cfg.rho = 1e4;
        for (double rth : {0.5, 0.75, 1.0}) {
            ScenarioConfig c = cfg;
            c.R_th = rth;
            const SystemParams base = c.to_system_params();
            const mc::McEstimate e = mc::estimate_outage_tdbc(base, c.mc_n, c.seed);
            for (int N = 1; N <= 10; ++N) {
                SystemParams p = base;
                p.quadrature_N = N;
                const double d = mc::relative_error(system_outage(p).p_out, e);
                t.rows.push_back({csv_num(N), csv_num(rth), csv_num(d)});
            }
        }
    } else if (id == "fig5") {
        // protocol comparison at matched energy
        t.header = {"k_ave", "rho_db", "p_out_tdbc_analytic", "p_out_tdbc_mc", "p_out_mabc_mc",
                    "p_out_direct_mc"};
        cfg.R_th = 0.5;
        for (double k : {0.0, 0.1}) {
            for (double db : detail::db_grid(0, 50, 5)) {
                ScenarioConfig c = cfg;
                c.k1 = c.k2 = k;
                c.rho = std::pow(10.0, db / 10.0);
                const SystemParams p = c.to_system_params();
                const double pa = system_outage(p).p_out;
                const mc::McEstimate et = mc::estimate_outage_tdbc(p, c.mc_n, c.seed);
                const mc::McEstimate em = mc::estimate_outage_mabc(p, c.mc_n, c.seed);
                const mc::McEstimate ed = mc::estimate_outage_direct(p, c.mc_n, c.seed);
                t.rows.push_back({csv_num(k), csv_num(db), csv_num(pa), csv_num(et.p_hat),
                                  csv_num(em.p_hat), csv_num(ed.p_hat)});
            }
        }
    } else if (id == "fig6") {
        // diversity behaviour across rate thresholds
        t.header = {"R_th", "rho_db", "p_out", "regime"};
        for (double rth : {0.5, 1.5, 2.5}) {
            for (double db : detail::db_grid(0, 60, 5)) {
                ScenarioConfig c = cfg;
                c.R_th = rth;
                c.rho = std::pow(10.0, db / 10.0);
                const SystemParams p = c.to_system_params();
                const OutageResult r = system_outage(p);
                t.rows.push_back({csv_num(rth), csv_num(db), csv_num(r.p_out),
                                  to_string(r.regime)});
            }
        }
    } else if (id == "fig7") {
        t.header = {"k_ave", "beta", "p_out"};
        cfg.R_th = 0.5;
        cfg.rho = 1e5;
        for (double k : {0.0, 0.1}) {
            for (double b : detail::lin_grid(0.05, 0.95, 19)) {
                ScenarioConfig c = cfg;
                c.k1 = c.k2 = k;
                c.beta = b;
                t.rows.push_back(
                    {csv_num(k), csv_num(b), csv_num(system_outage(c.to_system_params()).p_out)});
            }
        }
    } else if (id == "fig8") {
        // ceiling effects vs impairment level
        t.header = {"k_ave", "p_out", "regime"};
        cfg.R_th = 1.5;
        cfg.rho = 1e5;
        for (double k : detail::lin_grid(0.0, 0.2, 41)) {
            ScenarioConfig c = cfg;
            c.k1 = c.k2 = k;
            const SystemParams p = c.to_system_params();
            const OutageResult r = system_outage(p);
            t.rows.push_back({csv_num(k), csv_num(r.p_out), to_string(r.regime)});
        }
    } else if (id == "fig9") {
        t.header = {"k_ave", "gamma_th_db", "p_out", "regime"};
        cfg.rho = 1e5;
        for (double k : {0.0, 0.15, 0.2}) {
            for (double gdb : detail::db_grid(0, 30, 1)) {
                ScenarioConfig c = cfg;
                c.k1 = c.k2 = k;
                const double g = std::pow(10.0, gdb / 10.0);
                c.R_th = c.T / 3.0 * std::log2(1.0 + g);
                const SystemParams p = c.to_system_params();
                const OutageResult r = system_outage(p);
                t.rows.push_back(
                    {csv_num(k), csv_num(gdb), csv_num(r.p_out), to_string(r.regime)});
            }
        }
    } else if (id == "fig10") {
        t.header = {"k_ave", "d_ar", "p_out"};
        cfg.R_th = 0.5;
        cfg.rho = 1e5;
        cfg.m_a = 2;
        cfg.m_b = 3;
        for (double k : {0.0, 0.1}) {
            for (double d : detail::lin_grid(0.5, 9.5, 19)) {
                ScenarioConfig c = cfg;
                c.k1 = c.k2 = k;
                c.d_ar = d;
                c.d_br = 10.0 - d;
                t.rows.push_back(
                    {csv_num(k), csv_num(d), csv_num(system_outage(c.to_system_params()).p_out)});
            }
        }
    } else if (id == "fig11") {
        t.header = {"eta", "d_ar", "beta_opt", "p_out_min"};
        cfg.R_th = 0.5;
        cfg.rho = 1e5;
        for (double eta : {0.3, 0.6, 0.9}) {
            for (double d : detail::lin_grid(1.0, 9.0, 9)) {
                ScenarioConfig c = cfg;
                c.eta = eta;
                c.d_ar = d;
                c.d_br = 10.0 - d;
                const BetaOptimum b = optimal_beta(c.to_system_params(), 33);
                t.rows.push_back(
                    {csv_num(eta), csv_num(d), csv_num(b.beta_opt), csv_num(b.p_out_min)});
            }
        }
    } else if (id == "fig12") {
        t.header = {"R_th", "k_ave", "rho_db", "ee", "p_out"};
        for (double rth : {0.5, 1.0}) {
            for (double k : {0.0, 0.1}) {
                for (double db : detail::db_grid(0, 50, 2.5)) {
                    ScenarioConfig c = cfg;
                    c.R_th = rth;
                    c.k1 = c.k2 = k;
                    c.rho = std::pow(10.0, db / 10.0);
                    const SystemParams p = c.to_system_params();
                    const double ee = energy_efficiency(p);
                    t.rows.push_back({csv_num(rth), csv_num(k), csv_num(db), csv_num(ee),
                                      csv_num(system_outage(p).p_out)});
                }
            }
        }
    } else {
        std::string msg = "unknown figure id '" + id + "'; valid ids:";
        for (const auto& v : figure_ids()) msg += " " + v;
        throw std::domain_error(msg);
    }
    return t;
}

}  // namespace twrn
