// Brownian trajectories with lazy dyadic refinement and per-segment
// crossing verdicts.
//
// A NodePath stores knots (time, absolute position).  New knots are inserted
// by Brownian-bridge sampling; existing knots are never altered.  Values at
// dyadic refinement points are drawn from a counter-based stream keyed by the
// bit pattern of the knot time, so a path realization does not depend on the
// order in which different consumers refine it.  That keeps common-random-
// number comparisons and re-runs with changed parameters on literally the
// same trajectory.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbsim/geometry.hpp"
#include "pbsim/rng.hpp"

namespace pbsim::paths {

class NodePath {
 public:
  NodePath() = default;

  // Lazy path over [0, span] (span rounded up to a power of two >= horizon):
  // knots {0, span} only, everything else on demand.
  static NodePath lazy(std::uint64_t node_id, std::span<const double> origin,
                       double horizon, rng::Stream stream);

  // Explicit grid construction with sequential independent Gaussian
  // increments; grid must start at 0 and be strictly increasing.
  static NodePath from_grid(std::uint64_t node_id,
                            std::span<const double> origin,
                            std::span<const double> grid, rng::Stream stream);

  std::uint64_t node_id() const { return node_id_; }
  std::size_t dim() const { return d_; }
  double span() const { return times_.back(); }
  std::size_t knot_count() const { return times_.size(); }
  double knot_time(std::size_t i) const { return times_[i]; }
  std::span<const double> knot_pos(std::size_t i) const {
    return {pos_.data() + i * d_, d_};
  }
  std::span<const double> origin() const { return knot_pos(0); }
  // Displacement of knot i from the origin (spec view of a knot).
  void displacement(std::size_t i, std::span<double> out) const;

  // Index of the knot at exactly time t, inserting dyadic midpoints as
  // needed.  t must be reachable by midpoint bisection from the current
  // knot set (all experiment times are); throws std::invalid_argument if
  // not, or if t lies outside [0, span].
  std::size_t ensure_time(double t);

  // Span valid until the next knot insertion.
  std::span<const double> position_at(double t) {
    return knot_pos(ensure_time(t));
  }

  // Insert the bridge midpoint of the cell [knot i, knot i+1]; returns the
  // new knot index (== i+1). Values come from the keyed stream.
  std::size_t refine_cell(std::size_t i);

  // Insert the midpoint of cell i with a caller-supplied position (used by
  // refine_bridge, which draws from an explicit stream).
  std::size_t insert_midpoint(std::size_t i, std::span<const double> value);

  // Largest knot index with time <= t.
  std::size_t cell_before(double t) const;

 private:
  std::size_t insert_knot(std::size_t cell, double t,
                          std::span<const double> value);
  void bridge_sample(std::size_t cell, double t, std::span<double> out) const;

  std::uint64_t node_id_ = 0;
  std::size_t d_ = 0;
  rng::Stream stream_;
  std::vector<double> times_;
  std::vector<double> pos_;  // n x d, absolute coordinates
};

// Standalone bridge refinement (the midpoint is drawn from `stream`, not from
// the path's keyed stream).  interval must span two consecutive knots.
void refine_bridge(NodePath& path, std::pair<double, double> interval,
                   rng::Stream& stream);

enum class SegmentStatus { definitely_inside, definitely_outside, uncertain };

struct CrossingVerdict {
  SegmentStatus status = SegmentStatus::uncertain;
  double bound = 0.0;  // deviation bound used for the call
};

struct VerdictPolicy {
  // Per-segment probability that the true path escapes the deviation
  // envelope used by a definite verdict.
  double eps_segment = 1e-12;

  // Euclidean high-probability envelope for the bridge deviation from its
  // chord over a gap of length h in dimension d:
  //   per coordinate  P(sup |dev| >= a) <= 2 exp(-2 a^2 / h),
  // union over d coordinates and |.|_2 <= sqrt(d) |.|_inf.
  double envelope(double h, std::size_t d) const;
};

// Does the path meet `shape` at some time in cell [knot i, knot i+1]?
//   definitely_inside : an endpoint lies in the shape (exact), or the chord
//                       stays deeper inside than the envelope;
//   definitely_outside: the chord clears the shape by more than
//                       envelope + slack (d=1 instead uses the exact bridge
//                       level-crossing probability against eps_segment);
//   uncertain         : otherwise.
CrossingVerdict segment_verdict(const NodePath& path, std::size_t cell,
                                const geom::Shape& shape, double slack,
                                const VerdictPolicy& policy);

// Does the path stay inside `shape` throughout the cell?
CrossingVerdict segment_stay_verdict(const NodePath& path, std::size_t cell,
                                     const geom::Shape& shape, double slack,
                                     const VerdictPolicy& policy);

// Exact 1-d helpers (reflection principle for the Brownian bridge).
// Probability that a bridge from x0 to x1 over gap h touches a closed set it
// starts and ends outside of; the set may have one or two interval
// components (annulus).  Returns 1 when an endpoint straddles a component.
double bridge_touch_prob_1d(const geom::Shape& shape, double x0, double x1,
                            double h);
// Probability that a bridge strictly inside [lo, hi] at both ends exits it.
double bridge_exit_prob_1d(double lo, double hi, double x0, double x1,
                           double h);

}  // namespace pbsim::paths
