#include "pbsim/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbsim::stats {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);
}

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double normal_tail(double x) {
  return boost::math::cdf(boost::math::complement(kStdNormal, x));
}

double normal_quantile(double p) { return boost::math::quantile(kStdNormal, p); }

double chi2_tail(double x, double k) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(k / 2.0, x / 2.0);
}

double chi2_tail_inv(double p, double k) {
  return 2.0 * boost::math::gamma_q_inv(k / 2.0, p);
}

double inc_beta(double a, double b, double x) {
  return boost::math::ibeta(a, b, x);
}

double inc_beta_inv(double a, double b, double p) {
  return boost::math::ibeta_inv(a, b, p);
}

double Welford::stderr_mean() const {
  return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

LineFit wls_fit(std::span<const double> x, std::span<const double> y,
                std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) {
    throw std::invalid_argument("wls_fit: need >= 2 points of equal length");
  }
  double sw = 0, swx = 0, swy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
  }
  if (sxx <= 0.0) throw std::invalid_argument("wls_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0, ss_tot = 0;
  fit.residuals.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.residuals[i] = r;
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

std::vector<double> isotonic_nonincreasing(std::span<const double> y,
                                           std::span<const double> w) {
  // PAVA on the negated sequence (nondecreasing), then negate back.
  struct Block {
    double sum, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({-y[i] * w[i], w[i], 1});
    while (blocks.size() >= 2) {
      const auto& b = blocks.back();
      const auto& a = blocks[blocks.size() - 2];
      if (a.sum / a.weight <= b.sum / b.weight) break;
      Block merged{a.sum + b.sum, a.weight + b.weight, a.count + b.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) {
    const double v = -(b.sum / b.weight);
    for (std::size_t i = 0; i < b.count; ++i) out.push_back(v);
  }
  return out;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] <= sb[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / static_cast<double>(sa.size());
    const double fb = static_cast<double>(j) / static_cast<double>(sb.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace pbsim::stats
