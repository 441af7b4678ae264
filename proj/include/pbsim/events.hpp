// Event extraction: detection, isolation, occupation and discrete coverage.
//
// All event functions are pure in their inputs up to lazy path refinement;
// sets are closed and boundary ties count as detection/coverage.
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "pbsim/geometry.hpp"
#include "pbsim/paths.hpp"

namespace pbsim::events {

// Piecewise-linear target trajectory g(s).
class TargetTrajectory {
 public:
  TargetTrajectory() = default;
  TargetTrajectory(std::vector<double> times, std::vector<double> waypoints,
                   std::size_t d);

  static TargetTrajectory stay_put(std::size_t d);

  std::size_t dim() const { return d_; }
  bool is_constant() const { return times_.size() <= 1; }
  void eval(double s, std::span<double> out) const;
  // sup_{u in [a,b]} |g(u) - g(a)|
  double max_drift(double a, double b) const;
  double bound(double horizon) const;  // sup_{s<=horizon} |g(s)|
  // min over s of |x - g(s)| (distance to the waypoint polyline)
  double dist_to_path(std::span<const double> x) const;

 private:
  std::size_t d_ = 1;
  std::vector<double> times_;
  std::vector<double> pts_;  // n x d
};

// Time-indexed family of target sets D_s.
class SetFamily {
 public:
  static SetFamily static_shape(geom::Shape shape);
  static SetFamily moving_ball(TargetTrajectory traj, double radius);
  // Piecewise-constant-in-time: shape k applies on [t_k, t_{k+1}).
  static SetFamily piecewise(std::vector<std::pair<double, geom::Shape>> seq);

  std::size_t dim() const;
  geom::Shape shape_at(double s) const;
  // Shape valid over the whole window [a,b] together with an additive slack
  // bounding the set's motion across the window; for piecewise families the
  // window must not straddle a change time (see next_change_after).
  geom::Shape window_shape(double a, double b, double& motion_slack) const;
  double next_change_after(double a) const;
  double bound(double horizon) const;  // L_t
  double volume_at(double s) const;
  // Lower bound on inf_s dist(x, D_s); 0 when x may already lie in some set.
  double reach_dist(std::span<const double> x) const;

 private:
  enum class Kind { static_shape, moving_ball, piecewise };
  Kind kind_ = Kind::static_shape;
  geom::Shape base_;
  TargetTrajectory traj_;
  double radius_ = 0.0;
  std::vector<double> change_times_;
  std::vector<geom::Shape> seq_;
};

struct CensoredTime {
  double value = 0.0;   // event time, or the horizon when censored
  double upper = 0.0;   // upper end of the uncertainty interval
  bool censored = false;
  bool definite = true;

  double width() const { return upper - value; }

  static CensoredTime at(double t) { return {t, t, false, true}; }
  static CensoredTime censored_at(double h) { return {h, h, true, true}; }
  static CensoredTime between(double lo, double hi) {
    return {lo, hi, false, false};
  }
};

// Direction used to resolve survival indicators whose uncertainty interval
// straddles the queried time.
enum class Resolve { toward_event, toward_survival };

struct EventStats {
  std::uint64_t verdicts = 0;
  std::uint64_t pessimistic = 0;
  double budget_spent = 0.0;  // verdicts * eps_segment
};

// Indicator {T > t} with uncertainty resolved per `dir`.
bool survives_past(const CensoredTime& T, double t, Resolve dir,
                   EventStats* stats = nullptr);

struct EventPolicy {
  paths::VerdictPolicy verdict;
  // Bisection floor: cells are never split below this width (a power of two
  // so probe times stay on the dyadic lattice).
  double min_gap = 0x1.0p-26;
  // Occupation measurement stops splitting boundary-hugging cells at this
  // width; their total length is reported as the measurement error.  Much
  // coarser than min_gap because near-boundary dwell time makes full
  // resolution geometrically expensive.
  double occ_resolution = 0x1.0p-12;
  Resolve resolve = Resolve::toward_event;
  // Expected number of sleeping far nodes that slip past the wake schedule,
  // per world (same Markov-bound construction as the truncation radius).
  double wake_eps = 1e-4;
};

// Node sets are handed to the engines through a grow callback so estimators
// can keep distant Poisson shells unsampled until the simulation frontier
// actually needs them.  ensure(frontier) returns all node paths relevant up
// to that time.
using NodeSource = std::function<std::span<paths::NodePath>(double frontier)>;

inline NodeSource fixed_nodes(std::span<paths::NodePath> nodes) {
  return [nodes](double) { return nodes; };
}

// First time some node lies in the (moving) set; censored at horizon.
CensoredTime detection_time(std::span<paths::NodePath> node_paths,
                            const SetFamily& family, double horizon,
                            const EventPolicy& policy = {},
                            EventStats* stats = nullptr);
CensoredTime detection_time(const NodeSource& nodes, const SetFamily& family,
                            double horizon, const EventPolicy& policy = {},
                            EventStats* stats = nullptr);

// First time no node lies in the set; censored at horizon.
CensoredTime isolation_time(std::span<paths::NodePath> node_paths,
                            const SetFamily& family, double horizon,
                            const EventPolicy& policy = {},
                            EventStats* stats = nullptr);
CensoredTime isolation_time(const NodeSource& nodes, const SetFamily& family,
                            double horizon, const EventPolicy& policy = {},
                            EventStats* stats = nullptr);

// Common-random-number variant: one pass evaluating several families on the
// same node set.
std::vector<CensoredTime> isolation_times(
    const NodeSource& nodes, std::span<const SetFamily* const> families,
    double horizon, const EventPolicy& policy = {}, EventStats* stats = nullptr);

struct Occupation {
  double lower = 0.0;  // certified in-set time
  double upper = 0.0;  // lower + unresolved time
  double value() const { return 0.5 * (lower + upper); }
  double error() const { return 0.5 * (upper - lower); }
};

// Lebesgue time the path spends in `ball` within the window.
Occupation occupation_time(paths::NodePath& path, const geom::Shape& ball,
                           std::pair<double, double> window,
                           const EventPolicy& policy = {},
                           EventStats* stats = nullptr);

// True iff at every listed time some node lies in its set.  sets_per_node
// has one shape per (node, time); times must be sorted.
bool discrete_coverage(std::span<paths::NodePath> node_paths,
                       std::span<const std::vector<geom::Shape>> sets_per_node,
                       std::span<const double> times);
bool discrete_coverage(std::span<paths::NodePath> node_paths,
                       const SetFamily& family, std::span<const double> times);

}  // namespace pbsim::events
