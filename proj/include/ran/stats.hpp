#pragma once

#include <cstddef>
#include <vector>

namespace ran {
namespace stats {

// Phi(x) through the C library erfc; |error| well below 1e-7 everywhere.
double normal_cdf(double x);

// One-sample Kolmogorov-Smirnov distance against the standard normal.
// Throws std::invalid_argument on an empty sample.
double ks_statistic(std::vector<double> sample);

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // population variance
double median(std::vector<double> xs);

// Regularized incomplete gamma functions (series / continued fraction).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(X >= stat) for X ~ chi-square with dof degrees of freedom.
double chi_square_pvalue(double stat, double dof);

// Pearson statistic + p-value for observed counts vs expected probabilities;
// cells with expectation below min_expected are pooled into the last cell.
struct ChiSquare {
    double stat;
    double dof;
    double pvalue;
};
ChiSquare chi_square_gof(const std::vector<double>& observed,
                         const std::vector<double>& expected_probs, double total,
                         double min_expected = 5.0);

}  // namespace stats
}  // namespace ran
