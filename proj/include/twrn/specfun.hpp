#pragma once

// Special-function kernel: integer-shape incomplete gamma functions,
// integer-order modified Bessel K (with exponentially scaled variants),
// binomial coefficients and Gaussian-Chebyshev nodes.
//
// Everything here is pure and reentrant.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace twrn::specfun {

inline double factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(n, k) as an exact integer; returns 0 for k > n.
// Exact for n <= 64 (every intermediate division is exact).
inline std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw std::domain_error("binomial: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;  // intermediate product can exceed 64 bits
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(r);
}

namespace detail {

// Regularized P(m, z) = e^{-z} sum_{n>=0} z^{m+n} / (m+n)!, used on the
// left branch where the complement form would cancel.
inline double reg_lower_series(int m, double z) {
    double term = std::pow(z, m) / factorial(m) * std::exp(-z);
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= z / (m + n);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

}  // namespace detail

// gamma(m, z) = (m-1)! * (1 - e^{-z} * sum_{l<m} z^l / l!); the
// complement identity cancels badly when gamma is tiny, so the left
// branch switches to the ascending series.
inline double lower_incomplete_gamma_int(int m, double z) {
    if (m < 1) throw std::domain_error("lower_incomplete_gamma_int: m must be >= 1");
    if (z < 0) throw std::domain_error("lower_incomplete_gamma_int: z must be >= 0");
    if (z < m + 1.0) return factorial(m - 1) * detail::reg_lower_series(m, z);
    double sum = 0.0, term = 1.0;
    for (int l = 0; l < m; ++l) {
        sum += term;
        term *= z / (l + 1);
    }
    return factorial(m - 1) * (1.0 - std::exp(-z) * sum);
}

// Gamma(m, z) = (m-1)! * e^{-z} * sum_{l<m} z^l / l!
inline double upper_incomplete_gamma_int(int m, double z) {
    if (m < 1) throw std::domain_error("upper_incomplete_gamma_int: m must be >= 1");
    if (z < 0) throw std::domain_error("upper_incomplete_gamma_int: z must be >= 0");
    double sum = 0.0, term = 1.0;
    for (int l = 0; l < m; ++l) {
        sum += term;
        term *= z / (l + 1);
    }
    return factorial(m - 1) * std::exp(-z) * sum;
}

// Regularized lower incomplete gamma P(m, z) = gamma(m, z) / (m-1)!.
// Evaluated directly from the finite sum so it stays accurate when
// gamma(m, z) is tiny relative to (m-1)!.
inline double reg_lower_incomplete_gamma_int(int m, double z) {
    if (m < 1) throw std::domain_error("reg_lower_incomplete_gamma_int: m must be >= 1");
    if (z < 0) throw std::domain_error("reg_lower_incomplete_gamma_int: z must be >= 0");
    if (z < m + 1.0) return detail::reg_lower_series(m, z);
    double sum = 0.0, term = 1.0;
    for (int l = 0; l < m; ++l) {
        sum += term;
        term *= z / (l + 1);
    }
    const double v = 1.0 - std::exp(-z) * sum;
    return v < 0 ? 0.0 : v;
}

namespace detail {

inline double eval_poly(const double* c, int n, double x) {
    double r = c[n - 1];
    for (int i = n - 2; i >= 0; --i) r = r * x + c[i];
    return r;
}

// Minimax rational approximations for K0, K1 after Russon & Blair,
// Chalk River Report AECL-3461 (coefficients as used in Boost.Math).
// Split at z = 1: log-series form below, e^{-z}/sqrt(z)-scaled form above.
inline double k0_scaled(double z) {  // e^z * K0(z)
    static const double P1[] = {2.4708152720399552679e+03, 5.9169059852270512312e+03,
                                4.6850901201934832188e+02, 1.1999463724910714109e+01,
                                1.3166052564989571850e-01, 5.8599221412826100000e-04};
    static const double Q1[] = {2.1312714303849120380e+04, -2.4994418972832303646e+02, 1.0};
    static const double P2[] = {-1.6128136304458193998e+06, -3.7333769444840079748e+05,
                                -1.7984434409411765813e+04, -2.9501657892958843865e+02,
                                -1.6414452837299064100e+00};
    static const double Q2[] = {-1.6128136304458193998e+06, 2.9865713163054025489e+04,
                                -2.5064972445877992730e+02, 1.0};
    static const double P3[] = {1.1600249425076035558e+02, 2.3444738764199315021e+03,
                                1.8321525870183537725e+04, 7.1557062783764037541e+04,
                                1.5097646353289914539e+05, 1.7398867902565686251e+05,
                                1.0577068948034021957e+05, 3.1075408980684392399e+04,
                                3.6832589957340267940e+03, 1.1394980557384778174e+02};
    static const double Q3[] = {9.2556599177304839811e+01, 1.8821890840982713696e+03,
                                1.4847228371802360957e+04, 5.8824616785857027752e+04,
                                1.2689839587977598727e+05, 1.5144644673520157801e+05,
                                9.7418829762268075784e+04, 3.1474655750295278825e+04,
                                4.4329628889746408858e+03, 2.0013443064949242491e+02, 1.0};
    if (z <= 1.0) {
        const double y = z * z;
        const double r1 = eval_poly(P1, 6, y) / eval_poly(Q1, 3, y);
        const double r2 = eval_poly(P2, 5, y) / eval_poly(Q2, 4, y);
        return std::exp(z) * (r1 - std::log(z) * r2);
    }
    const double y = 1.0 / z;
    return eval_poly(P3, 10, y) / eval_poly(Q3, 11, y) / std::sqrt(z);
}

inline double k1_scaled(double z) {  // e^z * K1(z)
    // Coefficients by J. Maddock (Boost.Math), after Russon & Blair as
    // revised by Holoborodko.
    static const double PA[] = {-3.62137953440350228e-03, 7.11842087490330300e-03,
                                1.00302560256614306e-05, 1.77231085381040811e-06};
    static const double QA[] = {1.0, -4.80414794429043831e-02, 9.85972641934416525e-04,
                                -8.91196859397070326e-06};
    static const double PB[] = {-3.07965757829206184e-01, -7.80929703673074907e-02,
                                -2.70619343754051620e-03, -2.49549522229072008e-05};
    static const double QB[] = {1.0, -2.36316836412163098e-02, 2.64524577525962719e-04,
                                -1.49749618004162787e-06};
    static const double PC[] = {-1.97028041029226295e-01, -2.32408961548087617e+00,
                                -7.98269784507699938e+00, -2.39968410774221632e+00,
                                3.28314043780858713e+01, 5.67713761158496058e+01,
                                3.30907788466509823e+01, 6.62582288933739787e+00,
                                3.08851840645286691e-01};
    static const double QC[] = {1.0, 1.41811409298826118e+01, 7.35979466317556420e+01,
                                1.77821793937080859e+02, 2.11014501598705982e+02,
                                1.19425262951064454e+02, 2.88448064302447607e+01,
                                2.27912927104139732e+00, 2.50358186953478678e-02};
    if (z <= 1.0) {
        const double YA = 8.69547128677368164e-02;
        double a = z * z / 4;
        a = ((eval_poly(PA, 4, a) / eval_poly(QA, 4, a) + YA) * a * a + a / 2 + 1) * z / 2;
        const double v =
            (eval_poly(PB, 4, z * z) / eval_poly(QB, 4, z * z)) * z + 1 / z + std::log(z) * a;
        return std::exp(z) * v;
    }
    const double YC = 1.45034217834472656;
    const double y = 1.0 / z;
    return (eval_poly(PC, 9, y) / eval_poly(QC, 9, y) + YC) / std::sqrt(z);
}

}  // namespace detail

// e^z * K_n(z); upward recurrence is stable for K.
inline double bessel_k_int_scaled(int n, double z) {
    if (n < 0) n = -n;  // K_{-n} = K_n
    if (!(z > 0)) throw std::domain_error("bessel_k_int: z must be > 0");
    const double k0 = detail::k0_scaled(z);
    if (n == 0) return k0;
    const double k1 = detail::k1_scaled(z);
    if (n == 1) return k1;
    double km = k0, kc = k1;
    for (int j = 1; j < n; ++j) {
        const double kn = km + (2.0 * j / z) * kc;
        km = kc;
        kc = kn;
    }
    return kc;
}

inline double bessel_k_int(int n, double z) {
    return bessel_k_int_scaled(n, z) * std::exp(-z);
}

struct ChebyshevNodes {
    int order = 0;
    std::vector<double> nodes;  // cos((2n-1)pi/(2N)), n = 1..N, strictly decreasing
};

inline ChebyshevNodes chebyshev_nodes(int N) {
    if (N < 1) throw std::domain_error("chebyshev_nodes: N must be >= 1");
    ChebyshevNodes out;
    out.order = N;
    out.nodes.reserve(N);
    for (int n = 1; n <= N; ++n) {
        out.nodes.push_back(std::cos((2.0 * n - 1.0) / (2.0 * N) * std::numbers::pi));
    }
    return out;
}

}  // namespace twrn::specfun
