#pragma once

#include <span>
#include <stdexcept>

namespace srsa {

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TTestResult {
    double t_stat = 0.0;
    double p_value = 1.0;  // two-tailed
    double df = 0.0;       // Welch-Satterthwaite
    std::size_t n1 = 0, n2 = 0;
    double mean1 = 0.0, mean2 = 0.0;
    double var1 = 0.0, var2 = 0.0;  // unbiased sample variances
};

/// Unequal-variance two-sample t: t = (m1 - m2) / sqrt(s1^2/n1 + s2^2/n2),
/// df by Welch-Satterthwaite, two-tailed p from Student's t.
/// Requires n1 >= 2, n2 >= 2 and not both variances zero.
TTestResult welch_t(std::span<const double> group_a, std::span<const double> group_b);

/// (mean, half-width) of the 95% CI: mean +- t_{0.975,n-1} * s/sqrt(n).
/// No clipping. Requires n >= 2.
std::pair<double, double> mean_ci95(std::span<const double> samples);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

/// Quantile (inverse CDF) of Student's t, p in (0, 1).
double student_t_quantile(double p, double df);

}  // namespace srsa
