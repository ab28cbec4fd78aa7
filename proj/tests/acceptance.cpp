// Acceptance gate: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twrn/analysis.hpp"
#include "twrn/analytic.hpp"
#include "twrn/config.hpp"
#include "twrn/figures.hpp"
#include "twrn/montecarlo.hpp"

using namespace twrn;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    if (!ok) ++failures;
    std::cout << "criterion " << idx << (ok ? ": PASS" : ": FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
}

SystemParams defaults() {
    SystemParams p;
    p.ch_a = channel_from_geometry(5, 2.7, 2);
    p.ch_b = channel_from_geometry(5, 2.7, 2);
    p.ch_d = channel_from_geometry(10, 3, 1);
    return p;
}

void c1_thresholds() {
    const DerivedConstants c = derive_constants(defaults());
    const bool ok = std::abs(c.rcc_threshold - 12.376) <= 0.001 &&
                    std::abs(c.relay_cutoff - 24.752) <= 0.001 &&
                    std::abs(c.osc_threshold - 50.0) <= 1e-9;
    std::ostringstream d;
    d << "rcc=" << c.rcc_threshold << " cutoff=" << c.relay_cutoff << " osc=" << c.osc_threshold;
    report(1, "ceiling thresholds", ok, d.str());
}

void c2_ceiling_levels() {
    SystemParams p = defaults();
    p.R_th = 1.5;
    const CeilingLevels lv = hi_ceiling_levels(p);
    const bool ok = lv.k_rcc >= 0.0748 && lv.k_rcc <= 0.0768 && lv.k_osc >= 0.151 &&
                    lv.k_osc <= 0.153;
    std::ostringstream d;
    d << "k_rcc=" << lv.k_rcc << " k_osc=" << lv.k_osc;
    report(2, "HI ceiling levels", ok, d.str());
}

void c3_piecewise() {
    bool ok = true;
    std::ostringstream d;
    {
        SystemParams p = defaults();
        p.R_th = 2.0;
        ok = ok && system_outage(p).p_out == 1.0;
    }
    {
        SystemParams p = defaults();
        p.R_th = 1.5;
        const OutageResult r = system_outage(p);
        ok = ok && r.p_out == p1(p) && r.regime == Regime::DirectOnly;
        const auto e = mc::estimate_t2t(p, mc::T2TLink::DirectLink, 1000000, 101);
        const double gap = std::abs(r.p_out - e.p_hat);
        ok = ok && gap <= 3.0 * e.stderr_;
        d << "direct gap=" << gap << " (3se=" << 3.0 * e.stderr_ << ")";
    }
    {
        SystemParams p = defaults();
        const OutageResult r = system_outage(p);
        ok = ok && r.regime == Regime::Cooperative && r.p4_case == P4Case::OneRoot;
    }
    report(3, "piecewise outage law", ok, d.str());
}

void c4_oracle_grid() {
    const double shapes[][3] = {{1, 1, 1}, {2, 2, 1}, {2, 3, 2}, {3, 3, 3}};
    int points = 0, agree = 0, one_root = 0, three_roots = 0;
    double worst = 0;
    std::string worst_at;
    std::uint64_t seed = 4000;
    for (double k : {0.0, 0.05, 0.1, 0.15}) {
        for (double rho : {1e2, 1e3, 1e4, 1e5, 1e6}) {
            for (double beta : {0.3, 0.5, 0.8}) {
                for (const auto& sh : shapes) {
                    SystemParams p;
                    p.ch_a = channel_from_geometry(5, 2.7, sh[0]);
                    p.ch_b = channel_from_geometry(5, 2.7, sh[1]);
                    p.ch_d = channel_from_geometry(10, 3, sh[2]);
                    p.k1 = p.k2 = k;
                    p.rho = rho;
                    p.beta = beta;
                    ++points;
                    const OutageResult r = system_outage(p);
                    if (r.p4_case == P4Case::OneRoot) ++one_root;
                    if (r.p4_case == P4Case::ThreeRootsGateHigh ||
                        r.p4_case == P4Case::ThreeRootsGateLow)
                        ++three_roots;
                    const auto e = mc::estimate_outage_tdbc(p, 1000000, seed++);
                    const double tol =
                        std::max({3.0 * e.stderr_, 0.01 * e.p_hat, 1e-4});
                    const double gap = std::abs(r.p_out - e.p_hat);
                    if (gap <= tol) {
                        ++agree;
                    } else if (gap / tol > worst) {
                        worst = gap / tol;
                        std::ostringstream w;
                        w << "k=" << k << " rho=" << rho << " beta=" << beta << " m=(" << sh[0]
                          << "," << sh[1] << "," << sh[2] << ")";
                        worst_at = w.str();
                    }
                }
            }
        }
    }
    const bool agreement_ok = agree == points && points >= 200;
    const bool coverage_ok = one_root >= 10 && three_roots >= 10;
    std::ostringstream d;
    d << "agreement " << agree << "/" << points << "; one-root=" << one_root
      << " three-roots=" << three_roots;
    if (!worst_at.empty()) d << "; worst " << worst << "x tol at " << worst_at;
    report(4, "analytic-MC oracle equivalence with P4 case coverage",
           agreement_ok && coverage_ok, d.str());
}

void c5_components() {
    struct Pt {
        double dar, ma, mb, md, k, rho, rth;
    };
    std::vector<Pt> pts;
    // rho values chosen so every term is an interior probability; near 0 or 1
    // the binomial stderr degenerates and the comparison loses meaning
    for (double dar : {3.0, 4.0, 6.0, 7.0}) {
        for (double rho : {1e5, 1e6}) {
            pts.push_back({dar, 1, 2, 1, 0.1, rho, 0.8});
            pts.push_back({dar, 2, 3, 2, 0.05, rho, 1.0});
        }
    }
    pts.push_back({2.5, 3, 1, 1, 0.1, 5e5, 0.6});
    pts.push_back({8.0, 1, 3, 2, 0.05, 5e4, 1.2});
    pts.push_back({5.5, 2, 2, 3, 0.15, 1e5, 0.7});
    pts.push_back({4.5, 3, 2, 1, 0.0, 1e5, 1.0});

    int bad = 0;
    std::uint64_t seed = 5000;
    std::ostringstream d;
    for (const Pt& q : pts) {
        SystemParams p;
        p.ch_a = channel_from_geometry(q.dar, 2.7, q.ma);
        p.ch_b = channel_from_geometry(10.0 - q.dar, 2.7, q.mb);
        p.ch_d = channel_from_geometry(10, 3, q.md);
        p.k1 = p.k2 = q.k;
        p.rho = q.rho;
        p.R_th = q.rth;
        const double a[4] = {p1(p), p2(p), p3(p), p4(p).value};
        const mc::T2TLink links[4] = {mc::T2TLink::DirectLink, mc::T2TLink::RelayToA,
                                      mc::T2TLink::RelayToB, mc::T2TLink::JointRelay};
        for (int i = 0; i < 4; ++i) {
            const auto e = mc::estimate_t2t(p, links[i], 1000000, seed++);
            if (std::abs(a[i] - e.p_hat) > 3.0 * e.stderr_ + 1e-9) {
                ++bad;
                d << " p" << i + 1 << "@d_ar=" << q.dar << ",rho=" << q.rho;
            }
        }
    }
    std::ostringstream hdr;
    hdr << pts.size() << " points, mismatches=" << bad << d.str();
    report(5, "component-level equivalence", bad == 0, hdr.str());
}

void c6_quadrature() {
    SystemParams p = defaults();
    p.rho = 1e4;
    const auto e = mc::estimate_outage_tdbc(p, 10000000, 606);
    double delta8 = -1, prev = 1e9;
    bool monotone = true;
    for (int N : {4, 8, 16, 32, 64}) {
        SystemParams q = p;
        q.quadrature_N = N;
        const double delta = mc::relative_error(system_outage(q).p_out, e);
        if (N == 8) delta8 = delta;
        if (delta > prev + 0.003) monotone = false;  // MC-noise allowance
        prev = delta;
    }
    std::ostringstream d;
    d << "delta(N=8)=" << delta8;
    report(6, "quadrature accuracy", delta8 <= 0.01 && monotone, d.str());
}

void c7_diversity() {
    // unit-power channels keep the fit window inside the asymptotic regime
    bool ok = true;
    std::ostringstream d;
    for (double rth : {0.5, 1.5}) {
        for (int md : {1, 2}) {
            SystemParams p;
            p.ch_a = GammaChannel(2, 0.5);
            p.ch_b = GammaChannel(2, 0.5);
            p.ch_d = GammaChannel(md, 1.0 / md);
            p.R_th = rth;
            const SlopeResult r = diversity_slope(p, 1e4, 1e6, 8);
            d << " (R=" << rth << ",m_d=" << md << ")->" << r.d_hat;
            if (std::abs(r.d_hat - md) > 0.15 || r.full_outage) ok = false;
        }
    }
    {
        SystemParams p = defaults();
        p.R_th = 2.5;
        const SlopeResult r = diversity_slope(p, 1e4, 1e6, 6);
        if (!r.full_outage || r.d_hat != 0.0) ok = false;
    }
    report(7, "diversity gain slopes", ok, d.str());
}

void c8_protocols() {
    SystemParams p = defaults();
    p.rho = 1e5;
    p.R_th = 0.5;  // low-rate operating point; the 3-phase rate penalty flips the order near R=1
    const std::uint64_t n = 1000000;
    const auto t = mc::estimate_outage_tdbc(p, n, 808);
    const auto dd = mc::estimate_outage_direct(p, n, 808);
    const auto m = mc::estimate_outage_mabc(p, n, 808);
    const bool ok = (dd.p_hat - t.p_hat) > 3.0 * (dd.stderr_ + t.stderr_) &&
                    (m.p_hat - dd.p_hat) > 3.0 * (m.stderr_ + dd.stderr_);
    std::ostringstream d;
    d << "tdbc=" << t.p_hat << " direct=" << dd.p_hat << " mabc=" << m.p_hat;
    report(8, "protocol ordering", ok, d.str());
}

void c9_beta_optimizer() {
    SystemParams p = defaults();
    p.R_th = 0.5;
    p.rho = 1e5;
    const BetaOptimum base = optimal_beta(p, 33);
    SystemParams lo = p, hi = p;
    lo.eta = 0.3;
    hi.eta = 0.9;
    const double b_lo = optimal_beta(lo, 49).beta_opt;
    const double b_hi = optimal_beta(hi, 49).beta_opt;
    const bool ok = !base.degenerate && base.beta_opt > 0.01 && base.beta_opt < 0.99 &&
                    b_hi < b_lo;
    std::ostringstream d;
    d << "beta_opt=" << base.beta_opt << " eta0.3->" << b_lo << " eta0.9->" << b_hi;
    report(9, "PS-ratio optimizer behavior", ok, d.str());
}

void c10_specfun_suite() {
    bool ok = true;
    for (int m = 1; m <= 10 && ok; ++m) {
        for (double z : {0.01, 0.1, 1.0, 5.0, 20.0}) {
            const double s = specfun::lower_incomplete_gamma_int(m, z) +
                             specfun::upper_incomplete_gamma_int(m, z);
            if (std::abs(s - specfun::factorial(m - 1)) >
                1e-12 * specfun::factorial(m - 1))
                ok = false;
        }
    }
    for (int n = 0; n <= 10 && ok; ++n) {
        for (double z : {0.05, 1.0, 5.0, 30.0}) {
            const double oracle = oracles::bessel_k_oracle(n, z);
            if (std::abs(specfun::bessel_k_int(n, z) - oracle) > 1e-8 * oracle) ok = false;
        }
    }
    {
        const GammaChannel ch(2, 0.7);
        std::vector<double> s;
        const std::uint64_t n = 100000;
        for (std::uint64_t k = 0; k < n; ++k) {
            rng::DrawRng g(1010, 0, k);
            s.push_back(sample_gain(ch, g));
        }
        const double ks =
            oracles::ks_statistic(s, [&](double v) { return gain_cdf(ch, v); });
        if (ks >= 1.63 / std::sqrt(static_cast<double>(n))) ok = false;
    }
    report(10, "special-function and sampling suite", ok);
}

void c11_reproducibility() {
    ScenarioConfig c;
    c.seed = 7;
    std::ostringstream s1, s2;
    run_figure("fig8", c).write(s1);
    run_figure("fig8", c).write(s2);
    bool ok = s1.str() == s2.str();

    SystemParams p = defaults();
    p.rho = 1e4;
    const DerivedConstants dc = derive_constants(p);
    auto ind = [&](const FadingDraw& d) {
        const double gd = sndr_direct(d.z, p);
        const double ga = std::max(gd, sndr_relay_tdbc(d, Terminal::A, dc, p.rho));
        const double gb = std::max(gd, sndr_relay_tdbc(d, Terminal::B, dc, p.rho));
        return std::min(ga, gb) < dc.gamma_th;
    };
    const std::uint64_t n = 5 * (1u << 16) + 777;
    const auto one = mc::detail::run_estimator(p, n, 1111, ind, 1);
    const auto many = mc::detail::run_estimator(p, n, 1111, ind, 8);
    ok = ok && one.p_hat == many.p_hat;
    report(11, "reproducibility", ok);
}

}  // namespace

int main() {
    c1_thresholds();
    c2_ceiling_levels();
    c3_piecewise();
    c4_oracle_grid();
    c5_components();
    c6_quadrature();
    c7_diversity();
    c8_protocols();
    c9_beta_optimizer();
    c10_specfun_suite();
    c11_reproducibility();
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed: ")
              << (failures == 0 ? "" : std::to_string(failures)) << std::endl;
    return failures;
}
