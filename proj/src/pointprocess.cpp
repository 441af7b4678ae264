#include "pbsim/pointprocess.hpp"

#include <cmath>
#include <stdexcept>

#include "pbsim/events.hpp"
#include "pbsim/paths.hpp"
#include "pbsim/stats.hpp"

namespace pbsim::pointprocess {

PointCloud sample_poisson(double lambda, const Region& region,
                          rng::Stream& stream) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const double vol = region.volume();
  if (!(vol > 0.0) || !std::isfinite(vol)) {
    throw std::invalid_argument("region must have positive finite volume");
  }
  PointCloud cloud;
  cloud.d = region.dim();
  cloud.intensity = lambda;
  cloud.region = region;
  const std::uint64_t n = stream.poisson(lambda * vol);
  cloud.pts.resize(n * cloud.d);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::span<double> out(cloud.pts.data() + i * cloud.d, cloud.d);
    if (region.kind == geom::Shape::Kind::ball) {
      stream.uniform_in_ball(region.center, region.r_outer, out);
    } else if (region.kind == geom::Shape::Kind::box) {
      stream.uniform_in_box(region.center, region.hi, out);
    } else {
      throw std::invalid_argument("sampling supports balls and boxes");
    }
  }
  return cloud;
}

double ball_exit_tail(std::size_t d, double a, double t) {
  if (a <= 0.0) return 1.0;
  return std::min(1.0, 2.0 * stats::chi2_tail(a * a / t,
                                              static_cast<double>(d)));
}

namespace {

// Integrand of the expected number of reaching nodes outside radius R:
// surface(a) * P(exit ball of radius a - set_bound - r before horizon).
struct ReachIntegrand {
  std::size_t d;
  double lambda, r, horizon, set_bound;

  double operator()(double a) const {
    const double surface = static_cast<double>(d) *
                           geom::unit_ball_volume(d) *
                           std::pow(a, static_cast<double>(d) - 1.0);
    return lambda * surface * ball_exit_tail(d, a - set_bound - r, horizon);
  }
};

double simpson(const ReachIntegrand& f, double a, double b, int depth,
               double fa, double fm, double fb, double whole, double tol) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, depth - 1, fa, flm, fm, left, tol / 2.0) +
         simpson(f, m, b, depth - 1, fm, frm, fb, right, tol / 2.0);
}

double integrate_reach(const ReachIntegrand& f, double from, double to,
                       double tol) {
  if (to <= from) return 0.0;
  const double fa = f(from);
  const double fb = f(to);
  const double fm = f(0.5 * (from + to));
  const double whole = (to - from) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, from, to, 40, fa, fm, fb, whole, tol);
}

}  // namespace

double truncation_radius(std::size_t d, double lambda, double r,
                         double horizon, double set_bound, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("truncation eps must lie in (0,1)");
  }
  if (set_bound < 0.0) throw std::invalid_argument("set bound must be >= 0");
  const ReachIntegrand f{d, lambda, r, horizon, set_bound};
  const double base = set_bound + r;

  // Upper cutoff where the remaining mass is provably negligible.
  double hi = base + std::sqrt(horizon) *
                         (6.0 + std::sqrt(2.0 * std::log(1.0 / eps) +
                                          6.0 * static_cast<double>(d) *
                                              std::log(base + 10.0 +
                                                       std::sqrt(horizon))));
  while (f(hi) > eps * 1e-6 / std::sqrt(horizon)) hi *= 1.25;

  const double tol = eps * 1e-4;
  // Geometric grid of candidate radii above the deterministic reach.
  if (integrate_reach(f, base, hi, tol) <= eps) return base;
  const double e0 = std::max(1e-3, std::sqrt(horizon) / 64.0);
  double excess = e0;
  double prev = base;
  for (int k = 0; k < 4096; ++k) {
    const double R = base + excess;
    if (R >= hi) return hi;
    if (integrate_reach(f, R, hi, tol) <= eps) {
      // first grid point satisfying the bound
      (void)prev;
      return R;
    }
    prev = R;
    excess *= 1.07;
  }
  throw std::runtime_error("truncation_radius: did not converge");
}

double truncation_radius(const model::SimConfig& config, double set_bound,
                         double eps) {
  return truncation_radius(config.d, config.lambda, config.r, config.horizon,
                           set_bound, eps);
}

PointCloud thin_by_reach(const PointCloud& cloud,
                         std::span<const paths::NodePath> node_paths,
                         const events::SetFamily& sets, double horizon) {
  if (node_paths.size() != cloud.size()) {
    throw std::invalid_argument("thin_by_reach: one path per cloud point");
  }
  PointCloud kept;
  kept.d = cloud.d;
  kept.intensity = cloud.intensity;
  kept.region = cloud.region;
  events::EventPolicy policy;
  for (std::size_t i = 0; i < node_paths.size(); ++i) {
    paths::NodePath p = node_paths[i];  // evaluate on a private refinement
    std::span<paths::NodePath> one(&p, 1);
    const events::CensoredTime T =
        events::detection_time(one, sets, horizon, policy);
    if (!T.censored) {
      kept.pts.insert(kept.pts.end(), cloud.point(i).begin(),
                      cloud.point(i).end());
    }
  }
  return kept;
}

}  // namespace pbsim::pointprocess
