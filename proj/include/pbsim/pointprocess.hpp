// Poisson point processes in bounded regions, thinning by reach, and the
// truncation of the infinite process to a finite ball.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbsim/geometry.hpp"
#include "pbsim/model.hpp"
#include "pbsim/rng.hpp"

namespace pbsim::paths {
class NodePath;
}
namespace pbsim::events {
class SetFamily;
}

namespace pbsim::pointprocess {

using Region = geom::Shape;  // ball | box; 1-d interval is a ball

struct PointCloud {
  std::size_t d = 1;
  double intensity = 0.0;
  Region region;
  std::vector<double> pts;  // flat, row i = pts[i*d .. i*d+d)

  std::size_t size() const { return d == 0 ? 0 : pts.size() / d; }
  std::span<const double> point(std::size_t i) const {
    return {pts.data() + i * d, d};
  }
};

// Count ~ Poisson(lambda * vol(region)), positions i.i.d. uniform.
PointCloud sample_poisson(double lambda, const Region& region,
                          rng::Stream& stream);

// Tail bound used throughout for the probability that a standard Brownian
// motion exits the ball of radius `a` before time t:
//   P(sup_{s<=t} |W(s)| >= a) <= 2 P(|W(t)| >= a) = 2 P(chi^2_d >= a^2/t),
// by the strong Markov property and symmetry at the first sphere hit.
double ball_exit_tail(std::size_t d, double a, double t);

// Smallest grid radius R such that the expected number of nodes born outside
// B(0,R) whose motion can reach within r of a target family bounded by
// B(0,set_bound) before `horizon` is at most eps:
//   lambda * Int_{|x|>R} ball_exit_tail(d, |x|-set_bound-r, horizon) dx <= eps.
double truncation_radius(const model::SimConfig& config, double set_bound,
                         double eps);

// Convenience overload with explicit parameters.
double truncation_radius(std::size_t d, double lambda, double r, double horizon,
                         double set_bound, double eps);

// Retains exactly the nodes whose path enters some target set before horizon
// (the thinned process Phi').
PointCloud thin_by_reach(const PointCloud& cloud,
                         std::span<const paths::NodePath> node_paths,
                         const events::SetFamily& sets, double horizon);

}  // namespace pbsim::pointprocess
