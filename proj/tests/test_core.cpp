// rng, stats, model, geometry
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pbsim/geometry.hpp"
#include "pbsim/model.hpp"
#include "pbsim/pointprocess.hpp"
#include "pbsim/rng.hpp"
#include "pbsim/stats.hpp"

using namespace pbsim;

TEST_CASE("stream determinism and uniform range") {
  auto a = rng::seed_schedule(42, "exp", 7);
  auto b = rng::seed_schedule(42, "exp", 7);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u == b.uniform01());
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
  auto c = rng::seed_schedule(42, "exp", 8);
  CHECK(a.next_word() != c.next_word());
}

TEST_CASE("normal moments") {
  auto s = rng::seed_schedule(1, "normal", 0);
  stats::Welford w;
  const int n = 200000;
  for (int i = 0; i < n; ++i) w.add(s.normal());
  CHECK(std::fabs(w.mean) < 3.0 / std::sqrt(double(n)));
  CHECK(std::fabs(w.variance() - 1.0) < 3.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("keyed normals are reproducible and independent of call order") {
  auto s = rng::seed_schedule(5, "keyed", 0);
  const double a = s.normal_at(1234567);
  const double b = s.normal_at(7654321);
  CHECK(s.normal_at(7654321) == b);
  CHECK(s.normal_at(1234567) == a);
  CHECK(a != b);
}

namespace {
// chi-square GOF of sampled counts against the Poisson pmf
double poisson_gof_stat(double mean, const std::vector<std::uint64_t>& draws,
                        int kmax) {
  std::vector<double> obs(kmax + 2, 0.0);
  for (auto k : draws) obs[std::min<std::uint64_t>(k, kmax + 1)] += 1.0;
  const double n = double(draws.size());
  double stat = 0.0;
  double ptail = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    const double p =
        std::exp(-mean + k * std::log(mean) - std::lgamma(double(k) + 1.0));
    ptail -= p;
    const double e = n * p;
    if (e > 5.0) stat += (obs[k] - e) * (obs[k] - e) / e;
  }
  const double etail = n * std::max(ptail, 1e-12);
  if (etail > 5.0) {
    stat += (obs[kmax + 1] - etail) * (obs[kmax + 1] - etail) / etail;
  }
  return stat;
}
}  // namespace

TEST_CASE("poisson sampler matches pmf for small and large means") {
  for (double mean : {3.7, 42.0, 300.0}) {
    auto s = rng::seed_schedule(9, "poisson", std::uint64_t(mean * 10));
    std::vector<std::uint64_t> draws(100000);
    stats::Welford w;
    for (auto& k : draws) {
      k = s.poisson(mean);
      w.add(double(k));
    }
    CHECK(std::fabs(w.mean - mean) <
          3.0 * std::sqrt(mean / double(draws.size())));
    CHECK(std::fabs(w.variance() - mean) < 5.0 * mean / std::sqrt(100000.0));
    const int kmax = int(mean + 6.0 * std::sqrt(mean));
    const double stat = poisson_gof_stat(mean, draws, kmax);
    // generous df bound; flags only gross distributional errors
    CHECK(stat < 2.0 * kmax + 60.0);
  }
}

TEST_CASE("seed schedule: sample streams uncorrelated") {
  auto a = rng::seed_schedule(123, "corr", 0);
  auto b = rng::seed_schedule(123, "corr", 1);
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform01();
    const double y = b.uniform01();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double rho = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) *
                                     (syy / n - (sy / n) * (sy / n)));
  CHECK(std::fabs(rho) < 0.05);
}

TEST_CASE("uniform ball radial law") {
  for (std::size_t d : {1u, 2u, 3u}) {
    auto s = rng::seed_schedule(3, "ball", d);
    std::vector<double> c(d, 0.0), x(d);
    stats::Welford w;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
      s.uniform_in_ball(c, 2.0, x);
      w.add(std::pow(std::sqrt(geom::norm2(x)) / 2.0, double(d)));
    }
    // (|x|/R)^d is uniform on (0,1)
    CHECK(std::fabs(w.mean - 0.5) < 3.0 / std::sqrt(12.0 * n));
  }
}

TEST_CASE("psi matches the scaling function") {
  CHECK(model::psi(1, 16.0) == doctest::Approx(4.0));
  CHECK(model::psi(3, 1000.0) == doctest::Approx(1.0));
  CHECK(model::psi(2, std::exp(2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(model::psi(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(model::psi(2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(model::psi(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(model::psi(1, -3.0), std::invalid_argument);
}

TEST_CASE("psi monotone in t for d<=2, constant for d>=3") {
  auto s = rng::seed_schedule(11, "psi", 0);
  for (int i = 0; i < 200; ++i) {
    const double t1 = 1.0 + s.uniform01() * 50.0;
    const double t2 = t1 + 0.1 + s.uniform01() * 10.0;
    CHECK(model::psi(1, t2) > model::psi(1, t1));
    CHECK(model::psi(2, 1.0 + t2) > model::psi(2, 1.0 + t1));
    CHECK(model::psi(5, t2) == model::psi(5, t1));
  }
}

TEST_CASE("validate_config fills auto radius and is idempotent") {
  model::SimConfig c;
  c.d = 1;
  c.lambda = 1.0;
  c.r = 1.0;
  c.horizon = 100.0;
  c.trunc_eps = 1e-3;
  c.step = 0.5;
  const auto v = model::validate_config(c);
  REQUIRE(v.trunc_radius.has_value());
  CHECK(*v.trunc_radius ==
        doctest::Approx(pointprocess::truncation_radius(1, 1.0, 1.0, 100.0,
                                                        0.0, 1e-3)));
  const auto v2 = model::validate_config(v);
  CHECK(v2.trunc_radius == v.trunc_radius);
  CHECK(v2.d == v.d);
  CHECK(v2.lambda == v.lambda);
  CHECK(v2.step == v.step);
  CHECK(v2.n_samples == v.n_samples);
}

TEST_CASE("validate_config rejects invariant violations") {
  model::SimConfig c;
  c.lambda = 0.0;
  CHECK_THROWS_AS(model::validate_config(c), std::invalid_argument);
  c.lambda = 1.0;
  c.step = 2.0;
  c.horizon = 1.0;
  CHECK_THROWS_AS(model::validate_config(c), std::invalid_argument);
  c.step = 0.5;
  c.trunc_eps = 1.5;
  CHECK_THROWS_AS(model::validate_config(c), std::invalid_argument);
  c.trunc_eps = 1e-3;
  c.trunc_radius = 0.5;  // below set_bound + r
  CHECK_THROWS_AS(model::validate_config(c), std::invalid_argument);
}

TEST_CASE("shape volumes") {
  CHECK(geom::unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(geom::unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(geom::unit_ball_volume(3) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0));
  CHECK(geom::Shape::make_ball({0, 0}, 2.0).volume() ==
        doctest::Approx(4.0 * std::numbers::pi));
  CHECK(geom::Shape::make_box({0, 0, 0}, {1, 2, 3}).volume() ==
        doctest::Approx(6.0));
  CHECK(geom::Shape::make_annulus({0, 0}, 1.0, 2.0).volume() ==
        doctest::Approx(3.0 * std::numbers::pi));
  CHECK(geom::Shape::make_interval(-1.5, 2.5).volume() == doctest::Approx(4.0));
}

TEST_CASE("signed distance basics") {
  const auto ball = geom::Shape::make_ball({1.0, 0.0}, 2.0);
  const std::vector<double> in{1.0, 0.5}, out{4.5, 0.0}, bd{3.0, 0.0};
  CHECK(ball.signed_dist(in) == doctest::Approx(-1.5));
  CHECK(ball.signed_dist(out) == doctest::Approx(1.5));
  CHECK(ball.signed_dist(bd) == doctest::Approx(0.0));

  const auto box = geom::Shape::make_box({0.0, 0.0}, {2.0, 1.0});
  const std::vector<double> bin{1.0, 0.5}, bout{3.0, 2.0};
  CHECK(box.signed_dist(bin) == doctest::Approx(-0.5));
  CHECK(box.signed_dist(bout) == doctest::Approx(std::sqrt(2.0)));

  const auto ann = geom::Shape::make_annulus({0.0, 0.0}, 1.0, 2.0);
  const std::vector<double> hole{0.2, 0.0}, shell{1.5, 0.0}, far{3.0, 0.0};
  CHECK(ann.signed_dist(hole) == doctest::Approx(0.8));
  CHECK(ann.signed_dist(shell) == doctest::Approx(-0.5));
  CHECK(ann.signed_dist(far) == doctest::Approx(1.0));
}

TEST_CASE("signed distance is 1-Lipschitz") {
  auto s = rng::seed_schedule(17, "lipschitz", 0);
  std::vector<geom::Shape> shapes;
  shapes.push_back(geom::Shape::make_ball({0.3, -0.8}, 1.2));
  shapes.push_back(geom::Shape::make_box({-1.0, -0.5}, {0.5, 2.0}));
  shapes.push_back(geom::Shape::make_annulus({0.1, 0.2}, 0.7, 1.9));
  std::vector<double> x(2), y(2);
  for (int i = 0; i < 2000; ++i) {
    for (auto& v : x) v = s.uniform(-4, 4);
    for (auto& v : y) v = s.uniform(-4, 4);
    const double dxy = std::sqrt(geom::dist2(x, y));
    for (const auto& sh : shapes) {
      CHECK(std::fabs(sh.signed_dist(x) - sh.signed_dist(y)) <=
            dxy + 1e-12);
    }
  }
}

TEST_CASE("chord signed distance bounds match dense evaluation") {
  auto s = rng::seed_schedule(23, "chord", 0);
  std::vector<geom::Shape> shapes;
  shapes.push_back(geom::Shape::make_ball({0.0, 0.0}, 1.0));
  shapes.push_back(geom::Shape::make_box({-0.7, -0.2}, {0.4, 1.3}));
  shapes.push_back(geom::Shape::make_annulus({0.0, 0.0}, 0.5, 1.5));
  std::vector<double> a(2), b(2), p(2);
  for (int trial = 0; trial < 500; ++trial) {
    for (auto& v : a) v = s.uniform(-3, 3);
    for (auto& v : b) v = s.uniform(-3, 3);
    for (const auto& sh : shapes) {
      double lo, hi;
      sh.chord_signed_dist(a, b, lo, hi);
      double dmin = 1e300, dmax = -1e300;
      for (int k = 0; k <= 400; ++k) {
        const double w = k / 400.0;
        for (int c = 0; c < 2; ++c) p[c] = a[c] + w * (b[c] - a[c]);
        const double sd = sh.signed_dist(p);
        dmin = std::min(dmin, sd);
        dmax = std::max(dmax, sd);
      }
      CHECK(lo <= dmin + 1e-9);
      CHECK(hi >= dmax - 1e-9);
      CHECK(lo >= dmin - 0.01);  // bounds are tight, not just valid
      CHECK(hi <= dmax + 0.01);
    }
  }
}

TEST_CASE("offset grows and shrinks shapes") {
  const auto ball = geom::Shape::make_ball({0.0}, 1.0);
  CHECK(ball.offset(0.5).volume() == doctest::Approx(3.0));
  CHECK(ball.offset(-0.25).volume() == doctest::Approx(1.5));
  CHECK(ball.offset(-2.0).empty());
  const auto ann = geom::Shape::make_annulus({0.0, 0.0}, 1.0, 1.2);
  CHECK(ann.offset(-0.2).empty());
  CHECK(ann.offset(0.1).volume() > ann.volume());
}

TEST_CASE("wls fit recovers exact lines and weights residuals") {
  std::vector<double> x{1, 2, 3, 4, 5}, y, w(5, 1.0);
  for (double v : x) y.push_back(3.0 * v - 1.0);
  const auto fit = stats::wls_fit(x, y, w);
  CHECK(fit.slope == doctest::Approx(3.0));
  CHECK(fit.intercept == doctest::Approx(-1.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("isotonic projection is nonincreasing and respects order") {
  std::vector<double> y{0.9, 0.95, 0.7, 0.75, 0.2};
  std::vector<double> w(5, 1.0);
  const auto proj = stats::isotonic_nonincreasing(y, w);
  for (std::size_t i = 1; i < proj.size(); ++i) CHECK(proj[i] <= proj[i - 1]);
  CHECK(proj[0] == doctest::Approx(0.9));
  CHECK(proj[1] == doctest::Approx(0.825));
  CHECK(proj[2] == doctest::Approx(0.825));
}

TEST_CASE("chi2 tail and inverse agree") {
  const double x = stats::chi2_tail_inv(0.05, 1.0);
  CHECK(x == doctest::Approx(3.841).epsilon(1e-3));
  CHECK(stats::chi2_tail(x, 1.0) == doctest::Approx(0.05));
}

TEST_CASE("ks statistic of identical samples is zero") {
  std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4};
  CHECK(stats::ks_statistic(a, b) == doctest::Approx(0.0));
  std::vector<double> c{10, 11, 12, 13};
  CHECK(stats::ks_statistic(a, c) == doctest::Approx(1.0));
}
