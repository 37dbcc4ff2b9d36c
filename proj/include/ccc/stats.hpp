#pragma once

#include <cstddef>
#include <vector>

namespace ccc::stats {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);
double sample_stddev(const std::vector<double>& xs);

double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);

// p-value of one-sided Welch test for H1: mean(a) < mean(b).
double welch_one_sided_p(const std::vector<double>& a, const std::vector<double>& b);

// Spearman rank correlation with average ranks for ties.
double spearman_rho(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ccc::stats
