#pragma once

// Empirical oracle: plain i.i.d. sampling of the fading model with
// counter-based substreams, chunked so parallel and serial runs produce
// bit-identical counts.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twrn/system.hpp"

namespace twrn::mc {

enum class Protocol { TDBC, MABC, Direct };

enum class T2TLink { RelayToA, RelayToB, DirectLink, JointRelay };

inline const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::TDBC: return "tdbc";
        case Protocol::MABC: return "mabc";
        default: return "direct";
    }
}

struct McEstimate {
    double p_hat = 0;
    double stderr_ = 0;  // sqrt(p_hat (1 - p_hat) / n)
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    Protocol protocol = Protocol::TDBC;
    bool stderr_dominated = false;  // deep-tail warning: expected count < ~0.1
};

namespace detail {

inline constexpr std::uint64_t kChunk = 1u << 16;

// Runs `indicator` over n draws split into 2^16-draw chunks; chunk c is
// substream c, draw k within it has counter k. The reduction is an exact
// integer sum, so the worker count never changes the result.
template <typename F>
inline McEstimate run_estimator(const SystemParams& p, std::uint64_t n, std::uint64_t seed,
                                F&& indicator, unsigned workers_override = 0) {
    if (n < 1) throw std::domain_error("run_estimator: n must be >= 1");
    p.validate();
    const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
    unsigned workers = workers_override ? workers_override : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

    std::vector<std::uint64_t> counts(workers, 0);
    auto work = [&](unsigned w) {
        std::uint64_t local = 0;
        for (std::uint64_t c = w; c < n_chunks; c += workers) {
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(lo + kChunk, n);
            for (std::uint64_t k = lo; k < hi; ++k) {
                // one counter per variate, so the rejection sampler for one
                // link never shifts the stream feeding another
                rng::DrawRng ga(seed, c, (k - lo) * 4 + 0);
                rng::DrawRng gb(seed, c, (k - lo) * 4 + 1);
                rng::DrawRng gd(seed, c, (k - lo) * 4 + 2);
                FadingDraw d;
                d.x = sample_gain(p.ch_a, ga);
                d.y = sample_gain(p.ch_b, gb);
                d.z = sample_gain(p.ch_d, gd);
                if (indicator(d)) ++local;
            }
        }
        counts[w] = local;
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();

    std::uint64_t total = 0;
    for (auto c : counts) total += c;

    McEstimate e;
    e.n_samples = n;
    e.seed = seed;
    e.p_hat = static_cast<double>(total) / static_cast<double>(n);
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
    e.stderr_dominated = e.p_hat < 1e-7 || total < 10;
    return e;
}

// MABC and direct transmission spend 2 of 3 phases transmitting, so the
// matched-energy comparison scales the per-phase power: rho' = 2 rho / 3.
inline SystemParams normalized_two_phase(SystemParams p) {
    p.rho = 2.0 * p.rho / 3.0;
    return p;
}

}  // namespace detail

inline McEstimate estimate_outage_tdbc(const SystemParams& p, std::uint64_t n,
                                       std::uint64_t seed) {
    const DerivedConstants c = derive_constants(p);
    const double g_th = c.gamma_th;
    McEstimate e = detail::run_estimator(p, n, seed, [&](const FadingDraw& d) {
        const double gd = sndr_direct(d.z, p);
        const double ga = std::max(gd, sndr_relay_tdbc(d, Terminal::A, c, p.rho));
        const double gb = std::max(gd, sndr_relay_tdbc(d, Terminal::B, c, p.rho));
        return std::min(ga, gb) < g_th;
    });
    e.protocol = Protocol::TDBC;
    return e;
}

// MABC has no direct link; outage of min of the two relayed SNDRs against
// the two-phase threshold at normalized power.
inline McEstimate estimate_outage_mabc(const SystemParams& p, std::uint64_t n,
                                       std::uint64_t seed) {
    const SystemParams q = detail::normalized_two_phase(p);
    const DerivedConstants c = derive_constants(q);
    const double g_th = q.gamma_th_two_phase();
    McEstimate e = detail::run_estimator(q, n, seed, [&](const FadingDraw& d) {
        const double ga = sndr_relay_mabc(d, Terminal::A, c, q.rho);
        const double gb = sndr_relay_mabc(d, Terminal::B, c, q.rho);
        return std::min(ga, gb) < g_th;
    });
    e.protocol = Protocol::MABC;
    return e;
}

inline McEstimate estimate_outage_direct(const SystemParams& p, std::uint64_t n,
                                         std::uint64_t seed) {
    const SystemParams q = detail::normalized_two_phase(p);
    const double g_th = q.gamma_th_two_phase();
    McEstimate e = detail::run_estimator(q, n, seed, [&](const FadingDraw& d) {
        return sndr_direct(d.z, q) < g_th;
    });
    e.protocol = Protocol::Direct;
    return e;
}

// Per-term estimates matching the analytic decomposition: DirectLink -> P1,
// RelayToA -> P2, RelayToB -> P3, JointRelay -> P4.
inline McEstimate estimate_t2t(const SystemParams& p, T2TLink link, std::uint64_t n,
                               std::uint64_t seed) {
    const DerivedConstants c = derive_constants(p);
    const double g_th = c.gamma_th;
    McEstimate e = detail::run_estimator(p, n, seed, [&](const FadingDraw& d) {
        switch (link) {
            case T2TLink::DirectLink:
                return sndr_direct(d.z, p) < g_th;
            case T2TLink::RelayToA:
                return sndr_relay_tdbc(d, Terminal::A, c, p.rho) < g_th;
            case T2TLink::RelayToB:
                return sndr_relay_tdbc(d, Terminal::B, c, p.rho) < g_th;
            default:
                return sndr_relay_tdbc(d, Terminal::A, c, p.rho) < g_th &&
                       sndr_relay_tdbc(d, Terminal::B, c, p.rho) < g_th;
        }
    });
    e.protocol = Protocol::TDBC;
    return e;
}

// delta = |analytic - simulated| / simulated
inline double relative_error(double analytic, const McEstimate& mc) {
    if (!(mc.p_hat > 0))
        throw std::domain_error("relative_error: simulated probability is zero");
    return std::abs(analytic - mc.p_hat) / mc.p_hat;
}

}  // namespace twrn::mc
