#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "gatedvol/common.hpp"

namespace gatedvol {

// ---------------------------------------------------------------------------
// Elementary maps
// ---------------------------------------------------------------------------

inline double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double logit(double p) {
    return std::log(p / (1.0 - p));
}

// Digamma via upward recurrence into the asymptotic regime. Accurate to
// ~1e-13 for x > 0.
inline double digamma(double x) {
    double result = 0.0;
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    // Bernoulli-number series B_2/2 x^-2 ... through x^-12.
    result -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return result;
}

// ---------------------------------------------------------------------------
// Normal distribution
// ---------------------------------------------------------------------------

inline double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

// Wichura's PPND16 (AS 241): inverse normal CDF, |error| ~ 1e-16.
namespace detail {
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}
}  // namespace detail

inline double normal_quantile(double p) { return detail::normal_quantile(p); }

// Two-sided p-value for an asymptotically N(0,1) statistic.
inline double normal_pvalue_two_sided(double z) {
    return std::erfc(std::fabs(z) * 0.70710678118654752440);
}

// ---------------------------------------------------------------------------
// Incomplete gamma / chi-square
// ---------------------------------------------------------------------------

namespace detail {

// Regularized lower incomplete gamma P(a,x) by series expansion (x < a+1).
inline double gammp_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by Lentz continued fraction.
inline double gammq_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? detail::gammp_series(a, x) : 1.0 - detail::gammq_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - detail::gammp_series(a, x) : detail::gammq_cf(a, x);
}

inline double chi2_cdf(double x, double k) { return gamma_p(0.5 * k, 0.5 * x); }
inline double chi2_sf(double x, double k) { return gamma_q(0.5 * k, 0.5 * x); }

// ---------------------------------------------------------------------------
// Sample statistics
// ---------------------------------------------------------------------------

inline double mean(std::span<const double> x) {
    if (x.empty()) throw EmptySample("mean of empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x, int ddof = 1) {
    const std::size_t n = x.size();
    if (n <= static_cast<std::size_t>(ddof)) throw EmptySample("variance of too-short sample");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(n - ddof);
}

inline double stdev(std::span<const double> x, int ddof = 1) {
    return std::sqrt(variance(x, ddof));
}

// Linear-interpolated quantile of a sorted copy (type-7, the numpy default).
inline double quantile_type7(std::vector<double> x, double q) {
    if (x.empty()) throw EmptySample("quantile of empty sample");
    std::sort(x.begin(), x.end());
    const double pos = q * static_cast<double>(x.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return x[lo] * (1.0 - frac) + x[hi] * frac;
}

inline double median(std::vector<double> x) { return quantile_type7(std::move(x), 0.5); }

// OLS slope of y on x.
inline double ols_slope(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// Bartlett-kernel long-run variance of a series (HAC). bandwidth = number of
// lags L; weights 1 - l/(L+1).
inline double hac_long_run_variance(std::span<const double> x, int bandwidth) {
    const std::size_t n = x.size();
    const double m = mean(x);
    double gamma0 = 0.0;
    for (double v : x) gamma0 += (v - m) * (v - m);
    gamma0 /= static_cast<double>(n);
    double lrv = gamma0;
    for (int l = 1; l <= bandwidth && static_cast<std::size_t>(l) < n; ++l) {
        double g = 0.0;
        for (std::size_t t = static_cast<std::size_t>(l); t < n; ++t)
            g += (x[t] - m) * (x[t - l] - m);
        g /= static_cast<double>(n);
        lrv += 2.0 * (1.0 - static_cast<double>(l) / (bandwidth + 1.0)) * g;
    }
    return lrv;
}

inline int default_hac_bandwidth(std::size_t n) {
    return static_cast<int>(std::floor(1.2 * std::cbrt(static_cast<double>(n))));
}

// Asymptotic Kolmogorov-Smirnov p-value for statistic d with sample size n.
inline double ks_pvalue(double d, std::size_t n) {
    const double s = (std::sqrt(static_cast<double>(n)) + 0.12 +
                      0.11 / std::sqrt(static_cast<double>(n))) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * s * s);
        p += term;
        if (std::fabs(term) < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * p, 0.0, 1.0);
}

// One-sample KS statistic against the standard normal.
inline double ks_statistic_normal(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf(x[i]);
        dmax = std::max(dmax, std::fabs(f - static_cast<double>(i + 1) / n));
        dmax = std::max(dmax, std::fabs(f - static_cast<double>(i) / n));
    }
    return dmax;
}

}  // namespace gatedvol
