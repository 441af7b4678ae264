// Small statistics toolbox shared by estimators, analysis and tests.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pbsim::stats {

double normal_cdf(double x);
double normal_tail(double x);      // P(N(0,1) >= x)
double normal_quantile(double p);  // inverse CDF

// P(chi^2_k >= x); used for the ball-exit reflection bound
// P(sup_{s<=t} |W(s)| >= a) <= 2 P(chi^2_d >= a^2/t).
double chi2_tail(double x, double k);
// x with P(chi^2_k >= x) = p.
double chi2_tail_inv(double p, double k);

// Regularized incomplete beta I_x(a,b) and its inverse in x.
double inc_beta(double a, double b, double x);
double inc_beta_inv(double a, double b, double p);

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double d1 = x - mean;
    mean += d1 / static_cast<double>(n);
    m2 += d1 * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_mean() const;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
};

// Weighted least squares of y against x (weights ~ inverse variance).
// r_squared is the weighted coefficient of determination.
LineFit wls_fit(std::span<const double> x, std::span<const double> y,
                std::span<const double> w);

// Pool-adjacent-violators projection onto nonincreasing sequences,
// weighted by w.
std::vector<double> isotonic_nonincreasing(std::span<const double> y,
                                           std::span<const double> w);

// Two-sample Kolmogorov-Smirnov statistic (sorts copies of its inputs).
double ks_statistic(std::span<const double> a, std::span<const double> b);
// Asymptotic critical value for the two-sample KS statistic at level alpha.
double ks_critical(std::size_t n, std::size_t m, double alpha);

}  // namespace pbsim::stats
