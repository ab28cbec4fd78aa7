// Command-line front end: outage evaluation, sweeps, figure presets,
// optimizers and the oracle-agreement validation suite.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twrn/analysis.hpp"
#include "twrn/analytic.hpp"
#include "twrn/config.hpp"
#include "twrn/figures.hpp"
#include "twrn/montecarlo.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> mc_n;
    std::optional<int> quadrature_n;
    std::optional<std::string> out;
    std::optional<std::string> engine;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "scenario file (key = value lines)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--mc-n", o.mc_n, "Monte Carlo draw count");
    cmd->add_option("--quadrature-n", o.quadrature_n, "Chebyshev node count");
    cmd->add_option("--out", o.out, "output CSV path");
    cmd->add_option("--engine", o.engine, "analytic | mc | both");
}

twrn::ScenarioConfig load_config(const CommonOpts& o) {
    twrn::ScenarioConfig c;
    if (!o.config_path.empty()) c = twrn::parse_scenario_file(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.mc_n) c.mc_n = *o.mc_n;
    if (o.quadrature_n) c.quadrature_N = *o.quadrature_n;
    if (o.out) c.out_path = *o.out;
    if (o.engine) c.engine = twrn::detail::parse_engine(*o.engine, 0);
    return c;
}

int run_outage(const CommonOpts& o) {
    const twrn::ScenarioConfig c = load_config(o);
    const twrn::SystemParams p = c.to_system_params();
    twrn::OutageResult r;
    try {
        r = twrn::system_outage(p);
    } catch (const std::exception& ex) {
        std::cerr << "error in component analytic: " << ex.what() << "\n";
        return 1;
    }
    std::cout << "regime      " << twrn::to_string(r.regime) << "\n"
              << "p4_case     " << twrn::to_string(r.p4_case) << "\n"
              << "p1          " << twrn::csv_num(r.p1) << "\n"
              << "p2          " << twrn::csv_num(r.p2) << "\n"
              << "p3          " << twrn::csv_num(r.p3) << "\n"
              << "p4          " << twrn::csv_num(r.p4) << "\n"
              << "p_out       " << twrn::csv_num(r.p_out) << "\n";
    twrn::CsvTable t;
    t.header = {"p1", "p2", "p3", "p4", "p_out", "regime", "p4_case"};
    std::vector<std::string> row{twrn::csv_num(r.p1),    twrn::csv_num(r.p2),
                                 twrn::csv_num(r.p3),    twrn::csv_num(r.p4),
                                 twrn::csv_num(r.p_out), twrn::to_string(r.regime),
                                 twrn::to_string(r.p4_case)};
    if (c.engine != twrn::Engine::Analytic) {
        twrn::mc::McEstimate e;
        try {
            e = twrn::mc::estimate_outage_tdbc(p, c.mc_n, c.seed);
        } catch (const std::exception& ex) {
            std::cerr << "error in component montecarlo: " << ex.what() << "\n";
            return 1;
        }
        std::cout << "p_out_mc    " << twrn::csv_num(e.p_hat) << "\n"
                  << "mc_stderr   " << twrn::csv_num(e.stderr_) << "\n";
        if (e.stderr_dominated)
            std::cerr << "warning: deep-tail estimate, stderr-dominated\n";
        t.header.insert(t.header.end(), {"p_out_mc", "mc_stderr"});
        row.insert(row.end(), {twrn::csv_num(e.p_hat), twrn::csv_num(e.stderr_)});
        if (e.p_hat > 0) {
            const double delta = twrn::mc::relative_error(r.p_out, e);
            std::cout << "delta       " << twrn::csv_num(delta) << "\n";
            t.header.push_back("delta");
            row.push_back(twrn::csv_num(delta));
        }
    }
    t.rows.push_back(std::move(row));
    if (!c.out_path.empty()) t.write_file(c.out_path);
    return 0;
}

int run_sweep(const CommonOpts& o, std::optional<std::string> axis_flag,
              std::optional<std::string> grid_flag) {
    twrn::ScenarioConfig c = load_config(o);
    if (axis_flag) c.sweep_axis = twrn::detail::parse_axis(*axis_flag, 0);
    if (grid_flag) c.sweep_grid = twrn::detail::parse_grid(*grid_flag, 0);
    if (!c.sweep_axis || c.sweep_grid.empty()) {
        std::cerr << "sweep needs an axis and a grid (config sweep_axis/sweep_grid or "
                     "--axis/--grid)\n";
        return 1;
    }
    twrn::SweepOptions so;
    so.engine = c.engine;
    so.mc_n = c.mc_n;
    so.seed = c.seed;
    so.alpha1 = c.alpha1;
    const auto rows = twrn::sweep(c.to_system_params(), *c.sweep_axis, c.sweep_grid, so);
    twrn::CsvTable t;
    t.header = {"axis",       "value",     "p_out_analytic", "p_out_mc",
                "mc_stderr",  "regime",    "error"};
    bool any_err = false;
    for (const auto& r : rows) {
        t.rows.push_back({r.axis_name, twrn::csv_num(r.axis_value),
                          r.p_out_analytic ? twrn::csv_num(*r.p_out_analytic) : "",
                          r.p_out_mc ? twrn::csv_num(*r.p_out_mc) : "",
                          r.mc_stderr ? twrn::csv_num(*r.mc_stderr) : "", r.regime,
                          r.error.value_or("")});
        if (r.error) any_err = true;
    }
    if (!c.out_path.empty())
        t.write_file(c.out_path);
    else
        t.write(std::cout);
    return any_err ? 1 : 0;
}

int run_figure_cmd(const CommonOpts& o, const std::string& id) {
    twrn::ScenarioConfig c = load_config(o);
    twrn::CsvTable t;
    try {
        t = twrn::run_figure(id, c);
    } catch (const std::domain_error& ex) {
        std::cerr << ex.what() << "\n";
        return 1;
    }
    const std::string path = c.out_path.empty() ? id + ".csv" : c.out_path;
    t.write_file(path);
    std::cout << "wrote " << path << " (" << t.rows.size() << " rows)\n";
    return 0;
}

int run_optimize_beta(const CommonOpts& o, int resolution) {
    const twrn::ScenarioConfig c = load_config(o);
    const twrn::BetaOptimum b = twrn::optimal_beta(c.to_system_params(), resolution);
    if (b.degenerate) {
        std::cout << "degenerate: p_out does not depend on beta in this regime\n"
                  << "p_out       " << twrn::csv_num(b.p_out_min) << "\n";
        return 0;
    }
    std::cout << "beta_opt    " << twrn::csv_num(b.beta_opt) << "\n"
              << "p_out_min   " << twrn::csv_num(b.p_out_min) << "\n"
              << "coarse_beta " << twrn::csv_num(b.coarse_beta) << "\n";
    return 0;
}

int run_diversity(const CommonOpts& o, double rho_lo, double rho_hi, int points) {
    const twrn::ScenarioConfig c = load_config(o);
    twrn::SystemParams p = c.to_system_params();
    if (rho_hi <= 0) {  // default window: top 1.5 decades of the configured rho
        rho_hi = p.rho;
        rho_lo = p.rho / std::pow(10.0, 1.5);
    }
    const twrn::SlopeResult r = twrn::diversity_slope(p, rho_lo, rho_hi, points);
    if (r.full_outage) {
        std::cout << "d_hat       0 (full-outage window)\n";
        return 0;
    }
    std::cout << "d_hat       " << twrn::csv_num(r.d_hat) << "\n"
              << "d_predicted " << twrn::diversity_gain(p) << "\n";
    return 0;
}

int run_ee(const CommonOpts& o) {
    const twrn::ScenarioConfig c = load_config(o);
    std::cout << "ee          " << twrn::csv_num(twrn::energy_efficiency(c.to_system_params()))
              << "\n";
    return 0;
}

int run_validate(const CommonOpts& o) {
    twrn::ScenarioConfig c = load_config(o);
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, double a, double m, double tol) {
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  analytic=" << twrn::csv_num(a)
                  << " mc=" << twrn::csv_num(m) << " tol=" << twrn::csv_num(tol) << "\n";
    };
    struct Case {
        const char* name;
        double rth, k;
    };
    for (const Case& cs : {Case{"cooperative R_th=1.0 k=0.1", 1.0, 0.1},
                           Case{"cooperative R_th=0.5 k=0.1", 0.5, 0.1},
                           Case{"direct-only R_th=1.5 k=0.1", 1.5, 0.1},
                           Case{"ideal R_th=1.0 k=0.0", 1.0, 0.0}}) {
        twrn::ScenarioConfig cc = c;
        cc.R_th = cs.rth;
        cc.k1 = cc.k2 = cs.k;
        cc.rho = 1e4;
        const twrn::SystemParams p = cc.to_system_params();
        const double a = twrn::system_outage(p).p_out;
        const auto e = twrn::mc::estimate_outage_tdbc(p, cc.mc_n, cc.seed);
        const double tol = 3.0 * e.stderr_ + 0.01 * e.p_hat + 1e-4;
        report(cs.name, std::abs(a - e.p_hat) <= tol, a, e.p_hat, tol);
    }
    {
        twrn::ScenarioConfig cc = c;
        cc.rho = 1e4;
        const twrn::SystemParams p = cc.to_system_params();
        using twrn::mc::T2TLink;
        const struct {
            const char* name;
            T2TLink link;
            double a;
        } terms[] = {
            {"term p1", T2TLink::DirectLink, twrn::p1(p)},
            {"term p2", T2TLink::RelayToA, twrn::p2(p)},
            {"term p3", T2TLink::RelayToB, twrn::p3(p)},
            {"term p4", T2TLink::JointRelay, twrn::p4(p).value},
        };
        for (const auto& tm : terms) {
            const auto e = twrn::mc::estimate_t2t(p, tm.link, cc.mc_n, cc.seed);
            const double tol = 3.0 * e.stderr_ + 0.01 * e.p_hat + 1e-4;
            report(tm.name, std::abs(tm.a - e.p_hat) <= tol, tm.a, e.p_hat, tol);
        }
    }
    std::cout << (all_ok ? "validation passed" : "validation FAILED") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PS-SWIPT two-way AF relay outage toolkit"};
    app.require_subcommand(1);

    CommonOpts o_outage, o_sweep, o_fig, o_beta, o_div, o_ee, o_val;

    auto* c_outage = app.add_subcommand("outage", "evaluate the system outage probability");
    add_common(c_outage, o_outage);

    auto* c_sweep = app.add_subcommand("sweep", "sweep one parameter axis");
    add_common(c_sweep, o_sweep);
    std::optional<std::string> axis_flag, grid_flag;
    c_sweep->add_option("--axis", axis_flag, "rho | beta | k_ave | gamma_th | d_ar | R_th");
    c_sweep->add_option("--grid", grid_flag, "comma-separated grid values");

    auto* c_fig = app.add_subcommand("figure", "emit a preset data table");
    add_common(c_fig, o_fig);
    std::string fig_id;
    c_fig->add_option("id", fig_id, "figure id (fig4a .. fig12)")->required();

    auto* c_beta = app.add_subcommand("optimize-beta", "find the outage-minimizing PS ratio");
    add_common(c_beta, o_beta);
    int resolution = 33;
    c_beta->add_option("--resolution", resolution, "coarse grid size (>= 16)");

    auto* c_div = app.add_subcommand("diversity", "fit the diversity slope");
    add_common(c_div, o_div);
    double rho_lo = 0, rho_hi = 0;
    int points = 8;
    c_div->add_option("--rho-lo", rho_lo, "window lower edge (linear)");
    c_div->add_option("--rho-hi", rho_hi, "window upper edge (linear)");
    c_div->add_option("--points", points, "fit points");

    auto* c_ee = app.add_subcommand("ee", "energy efficiency at the configured point");
    add_common(c_ee, o_ee);

    auto* c_val = app.add_subcommand("validate", "oracle-agreement suite");
    add_common(c_val, o_val);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_outage->parsed()) return run_outage(o_outage);
        if (c_sweep->parsed()) return run_sweep(o_sweep, axis_flag, grid_flag);
        if (c_fig->parsed()) return run_figure_cmd(o_fig, fig_id);
        if (c_beta->parsed()) return run_optimize_beta(o_beta, resolution);
        if (c_div->parsed()) return run_diversity(o_div, rho_lo, rho_hi, points);
        if (c_ee->parsed()) return run_ee(o_ee);
        if (c_val->parsed()) return run_validate(o_val);
    } catch (const twrn::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
