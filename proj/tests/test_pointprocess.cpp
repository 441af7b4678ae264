#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbsim/events.hpp"
#include "pbsim/paths.hpp"
#include "pbsim/pointprocess.hpp"
#include "pbsim/rng.hpp"
#include "pbsim/stats.hpp"

using namespace pbsim;
using pointprocess::sample_poisson;
using pointprocess::truncation_radius;

namespace {
// Clopper-Pearson bounds, built directly on the incomplete beta inverse so
// this file does not depend on the estimators module.
std::pair<double, double> cp_bounds(std::uint64_t k, std::uint64_t n,
                                    double level) {
  const double alpha = 1.0 - level;
  const double lo =
      k == 0 ? 0.0 : stats::inc_beta_inv(double(k), double(n - k + 1), alpha / 2);
  const double hi = k == n ? 1.0
                           : stats::inc_beta_inv(double(k + 1), double(n - k),
                                                 1.0 - alpha / 2);
  return {lo, hi};
}
}  // namespace

TEST_CASE("poisson cloud count moments: intensity 2 on an interval of length 5") {
  const auto region = geom::Shape::make_interval(-2.5, 2.5);
  stats::Welford w;
  const int n = 100000;
  auto s = rng::seed_schedule(101, "pp-mean", 0);
  for (int i = 0; i < n; ++i) w.add(double(sample_poisson(2.0, region, s).size()));
  CHECK(std::fabs(w.mean - 10.0) < 3.0 * std::sqrt(10.0 / n));
  CHECK(std::fabs(w.variance() - 10.0) < 5.0 * 10.0 / std::sqrt(double(n)));
}

TEST_CASE("poisson cloud positions are uniform and deterministic") {
  const auto region = geom::Shape::make_ball({0.0, 0.0}, 3.0);
  auto s1 = rng::seed_schedule(102, "pp-det", 0);
  auto s2 = rng::seed_schedule(102, "pp-det", 0);
  const auto c1 = sample_poisson(1.5, region, s1);
  const auto c2 = sample_poisson(1.5, region, s2);
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.pts.size(); ++i) CHECK(c1.pts[i] == c2.pts[i]);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(region.signed_dist(c1.point(i)) <= 0.0);
  }
}

TEST_CASE("void probability within Clopper-Pearson 99% bounds") {
  const auto region = geom::Shape::make_ball({0.0, 0.0}, 0.8);
  const double lambda = 0.7;
  const double p_void = std::exp(-lambda * region.volume());
  const int n = 100000;
  std::uint64_t voids = 0;
  auto s = rng::seed_schedule(103, "pp-void", 0);
  for (int i = 0; i < n; ++i) {
    voids += sample_poisson(lambda, region, s).size() == 0 ? 1 : 0;
  }
  const auto [lo, hi] = cp_bounds(voids, n, 0.99);
  CHECK(lo <= p_void);
  CHECK(p_void <= hi);
}

TEST_CASE("superposition: two independent clouds merge to the summed intensity") {
  const auto region = geom::Shape::make_interval(0.0, 4.0);
  const double l1 = 0.9, l2 = 2.3;
  const int n = 50000;
  auto s = rng::seed_schedule(104, "pp-super", 0);
  stats::Welford w;
  std::vector<std::uint64_t> counts(n);
  for (int i = 0; i < n; ++i) {
    const auto a = sample_poisson(l1, region, s);
    const auto b = sample_poisson(l2, region, s);
    counts[i] = a.size() + b.size();
    w.add(double(counts[i]));
  }
  const double mean = (l1 + l2) * 4.0;
  CHECK(std::fabs(w.mean - mean) < 3.0 * std::sqrt(mean / n));
  // chi-square GOF of the merged counts against Poisson(mean)
  double stat = 0.0;
  const int kmax = int(mean + 6 * std::sqrt(mean));
  std::vector<double> obs(kmax + 2, 0.0);
  for (auto k : counts) obs[std::min<std::uint64_t>(k, kmax + 1)] += 1.0;
  double ptail = 1.0;
  int df = 0;
  for (int k = 0; k <= kmax; ++k) {
    const double p =
        std::exp(-mean + k * std::log(mean) - std::lgamma(double(k + 1)));
    ptail -= p;
    const double e = n * p;
    if (e > 5.0) {
      stat += (obs[k] - e) * (obs[k] - e) / e;
      ++df;
    }
  }
  CHECK(stat < stats::chi2_tail_inv(1e-4, double(std::max(df - 1, 1))));
}

TEST_CASE("truncation radius: deterministic reach suffices for loose budgets") {
  // tiny horizon: almost no motion, so eps close to 1 needs no exclusion zone
  const double R = truncation_radius(1, 1.0, 1.0, 0.01, 0.0, 0.9);
  CHECK(R == doctest::Approx(1.0));
  const double R2 = truncation_radius(2, 1.0, 0.5, 0.01, 1.5, 0.95);
  CHECK(R2 == doctest::Approx(2.0));
}

TEST_CASE("truncation radius monotone in eps, t, lambda") {
  const double base = truncation_radius(2, 1.0, 1.0, 10.0, 0.0, 1e-3);
  CHECK(truncation_radius(2, 1.0, 1.0, 10.0, 0.0, 1e-4) >= base);
  CHECK(truncation_radius(2, 1.0, 1.0, 20.0, 0.0, 1e-3) >= base);
  CHECK(truncation_radius(2, 2.0, 1.0, 10.0, 0.0, 1e-3) >= base);
  CHECK(truncation_radius(2, 1.0, 1.0, 10.0, 0.0, 1e-2) <= base);
}

TEST_CASE("truncation radius agrees with an independent quadrature oracle") {
  // d=1, lambda=1, r=1, t=100, L_t=0, eps=1e-3
  const std::size_t d = 1;
  const double lambda = 1.0, r = 1.0, t = 100.0, eps = 1e-3;
  const double R = truncation_radius(d, lambda, r, t, 0.0, eps);

  // oracle: trapezoid quadrature of lambda * Int_R^inf 2*(1 - F_chi2_1) with
  // the Gaussian-tail reflection bound written directly in terms of Phi-bar
  auto tail = [&](double a) {
    return std::min(1.0, 4.0 * stats::normal_tail((a - r) / std::sqrt(t)));
  };
  auto mass_outside = [&](double R0) {
    const double hi = r + 12.0 * std::sqrt(t);
    const int steps = 20000;
    const double h = (hi - R0) / steps;
    double sum = 0.5 * (tail(R0) + tail(hi));
    for (int k = 1; k < steps; ++k) sum += tail(R0 + k * h);
    return lambda * 2.0 * sum * h;  // surface of S^0 in 1-d is 2
  };
  double lo = r, hi = r + 12.0 * std::sqrt(t);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass_outside(mid) > eps ? lo : hi) = mid;
  }
  const double oracle = hi;
  const double grid_step = 0.07 * (R - r) + 0.1;
  CHECK(R >= oracle - 1e-6);
  CHECK(R <= oracle + grid_step);
}

TEST_CASE("thin_by_reach keeps exactly the entering nodes") {
  const auto family =
      events::SetFamily::static_shape(geom::Shape::make_ball({0.0}, 1.0));
  const auto region = geom::Shape::make_interval(-8.0, 8.0);
  auto s = rng::seed_schedule(105, "thin", 0);
  const auto cloud = sample_poisson(1.0, region, s);

  // all nodes start inside the target: identity thinning
  std::vector<paths::NodePath> inside;
  pointprocess::PointCloud inside_cloud = cloud;
  inside_cloud.pts.assign(cloud.size(), 0.1);
  for (std::size_t i = 0; i < inside_cloud.size(); ++i) {
    inside.push_back(paths::NodePath::lazy(i, inside_cloud.point(i), 1.0,
                                           s.child(i)));
  }
  const auto kept =
      pointprocess::thin_by_reach(inside_cloud, inside, family, 1.0);
  CHECK(kept.size() == inside_cloud.size());

  // nodes pinned far away never enter by a tiny horizon
  pointprocess::PointCloud far_cloud = cloud;
  far_cloud.pts.assign(cloud.size(), 7.5);
  std::vector<paths::NodePath> far;
  for (std::size_t i = 0; i < far_cloud.size(); ++i) {
    far.push_back(
        paths::NodePath::lazy(i, far_cloud.point(i), 0.25, s.child(1000 + i)));
  }
  const auto none =
      pointprocess::thin_by_reach(far_cloud, far, family, 0.25);
  CHECK(none.size() == 0);
}
