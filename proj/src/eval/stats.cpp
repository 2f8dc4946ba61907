#include "srsa/eval/stats.hpp"

#include <cmath>
#include <limits>

namespace srsa {

namespace {

double ln_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Lentz's continued fraction for the incomplete beta function.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

struct MeanVar {
    double mean;
    double var;  // unbiased
};

MeanVar mean_var(std::span<const double> xs) {
    const double n = double(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, ss / (n - 1.0)};
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log(1.0 - x) - ln_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;  // symmetry for faster convergence
}

double student_t_cdf(double t, double df) {
    const double x = df / (df + t * t);
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw StatsError("quantile requires p in (0,1)");
    if (p == 0.5) return 0.0;
    // bisection on the CDF; monotone and well-behaved
    double lo = -1.0, hi = 1.0;
    while (student_t_cdf(lo, df) > p) lo *= 2.0;
    while (student_t_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

TTestResult welch_t(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2)
        throw StatsError("insufficient_samples: both groups need n >= 2");

    const auto [m1, v1] = mean_var(group_a);
    const auto [m2, v2] = mean_var(group_b);
    if (v1 == 0.0 && v2 == 0.0)
        throw StatsError("zero_variance_both: both sample variances are zero");

    const double n1 = double(group_a.size());
    const double n2 = double(group_b.size());
    const double se2 = v1 / n1 + v2 / n2;

    TTestResult r;
    r.n1 = group_a.size();
    r.n2 = group_b.size();
    r.mean1 = m1;
    r.mean2 = m2;
    r.var1 = v1;
    r.var2 = v2;
    r.t_stat = (m1 - m2) / std::sqrt(se2);
    r.df = se2 * se2 /
           (v1 * v1 / (n1 * n1 * (n1 - 1.0)) + v2 * v2 / (n2 * n2 * (n2 - 1.0)));
    const double tail = student_t_cdf(-std::fabs(r.t_stat), r.df);
    r.p_value = std::min(1.0, 2.0 * tail);
    return r;
}

std::pair<double, double> mean_ci95(std::span<const double> samples) {
    if (samples.size() < 2) throw StatsError("insufficient_samples: need n >= 2");
    const auto [mean, var] = mean_var(samples);
    const double n = double(samples.size());
    const double q = student_t_quantile(0.975, n - 1.0);
    return {mean, q * std::sqrt(var / n)};
}

}  // namespace srsa
