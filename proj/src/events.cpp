#include "pbsim/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "pbsim/stats.hpp"

namespace pbsim::events {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------- trajectory

TargetTrajectory::TargetTrajectory(std::vector<double> times,
                                   std::vector<double> waypoints,
                                   std::size_t d)
    : d_(d), times_(std::move(times)), pts_(std::move(waypoints)) {
  if (times_.empty() || pts_.size() != times_.size() * d_) {
    throw std::invalid_argument("trajectory: waypoint/time size mismatch");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("trajectory: times must increase");
    }
  }
  for (double v : pts_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("trajectory: waypoints must be finite");
    }
  }
}

TargetTrajectory TargetTrajectory::stay_put(std::size_t d) {
  return TargetTrajectory({0.0}, std::vector<double>(d, 0.0), d);
}

void TargetTrajectory::eval(double s, std::span<double> out) const {
  if (times_.size() == 1 || s <= times_.front()) {
    std::copy(pts_.begin(), pts_.begin() + static_cast<long>(d_), out.begin());
    return;
  }
  if (s >= times_.back()) {
    const std::size_t k = times_.size() - 1;
    std::copy(pts_.begin() + static_cast<long>(k * d_),
              pts_.begin() + static_cast<long>((k + 1) * d_), out.begin());
    return;
  }
  const auto it = std::upper_bound(times_.begin(), times_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double w = (s - times_[k]) / (times_[k + 1] - times_[k]);
  for (std::size_t c = 0; c < d_; ++c) {
    out[c] = (1.0 - w) * pts_[k * d_ + c] + w * pts_[(k + 1) * d_ + c];
  }
}

double TargetTrajectory::max_drift(double a, double b) const {
  if (is_constant()) return 0.0;
  std::vector<double> ga(d_), gs(d_);
  eval(a, ga);
  double m = 0.0;
  auto consider = [&](double s) {
    eval(s, gs);
    m = std::max(m, std::sqrt(geom::dist2(gs, ga)));
  };
  consider(b);
  for (double t : times_) {
    if (t > a && t < b) consider(t);
  }
  return m;
}

double TargetTrajectory::bound(double horizon) const {
  std::vector<double> g(d_);
  double m = 0.0;
  auto consider = [&](double s) {
    eval(s, g);
    m = std::max(m, std::sqrt(geom::norm2(g)));
  };
  consider(0.0);
  consider(horizon);
  for (double t : times_) {
    if (t > 0.0 && t < horizon) consider(t);
  }
  return m;
}

double TargetTrajectory::dist_to_path(std::span<const double> x) const {
  const std::size_t n = times_.size();
  auto seg_dist2 = [&](std::size_t k) {
    // distance from x to segment [p_k, p_{k+1}]
    double aa = 0.0, bb = 0.0;
    for (std::size_t c = 0; c < d_; ++c) {
      const double u = pts_[(k + 1) * d_ + c] - pts_[k * d_ + c];
      const double v = x[c] - pts_[k * d_ + c];
      aa += u * u;
      bb += u * v;
    }
    const double s = aa > 0.0 ? std::clamp(bb / aa, 0.0, 1.0) : 0.0;
    double dd = 0.0;
    for (std::size_t c = 0; c < d_; ++c) {
      const double p = pts_[k * d_ + c] +
                       s * (pts_[(k + 1) * d_ + c] - pts_[k * d_ + c]);
      const double t = x[c] - p;
      dd += t * t;
    }
    return dd;
  };
  double best = geom::dist2(x, std::span<const double>(pts_.data(), d_));
  for (std::size_t k = 0; k + 1 < n; ++k) best = std::min(best, seg_dist2(k));
  return std::sqrt(best);
}

// ---------------------------------------------------------------- set family

SetFamily SetFamily::static_shape(geom::Shape shape) {
  SetFamily f;
  f.kind_ = Kind::static_shape;
  f.base_ = std::move(shape);
  return f;
}

SetFamily SetFamily::moving_ball(TargetTrajectory traj, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("moving ball radius");
  SetFamily f;
  f.kind_ = Kind::moving_ball;
  f.traj_ = std::move(traj);
  f.radius_ = radius;
  f.base_ =
      geom::Shape::make_ball(std::vector<double>(f.traj_.dim(), 0.0), radius);
  return f;
}

SetFamily SetFamily::piecewise(
    std::vector<std::pair<double, geom::Shape>> seq) {
  if (seq.empty()) throw std::invalid_argument("piecewise family empty");
  SetFamily f;
  f.kind_ = Kind::piecewise;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0 && !(seq[i].first > seq[i - 1].first)) {
      throw std::invalid_argument("piecewise family times must increase");
    }
    f.change_times_.push_back(seq[i].first);
    f.seq_.push_back(std::move(seq[i].second));
  }
  f.base_ = f.seq_.front();
  return f;
}

std::size_t SetFamily::dim() const {
  return kind_ == Kind::moving_ball ? traj_.dim() : base_.dim();
}

geom::Shape SetFamily::shape_at(double s) const {
  switch (kind_) {
    case Kind::static_shape:
      return base_;
    case Kind::moving_ball: {
      std::vector<double> c(traj_.dim());
      traj_.eval(s, c);
      return geom::Shape::make_ball(std::move(c), radius_);
    }
    case Kind::piecewise: {
      const auto it =
          std::upper_bound(change_times_.begin(), change_times_.end(), s);
      const std::size_t k =
          it == change_times_.begin()
              ? 0
              : static_cast<std::size_t>(it - change_times_.begin()) - 1;
      return seq_[k];
    }
  }
  return base_;
}

geom::Shape SetFamily::window_shape(double a, double b,
                                    double& motion_slack) const {
  motion_slack = kind_ == Kind::moving_ball ? traj_.max_drift(a, b) : 0.0;
  return shape_at(a);
}

double SetFamily::next_change_after(double a) const {
  if (kind_ != Kind::piecewise) return kInf;
  const auto it =
      std::upper_bound(change_times_.begin(), change_times_.end(), a);
  return it == change_times_.end() ? kInf : *it;
}

double SetFamily::bound(double horizon) const {
  switch (kind_) {
    case Kind::static_shape:
      return base_.bound_radius();
    case Kind::moving_ball:
      return traj_.bound(horizon) + radius_;
    case Kind::piecewise: {
      double m = 0.0;
      for (const auto& s : seq_) m = std::max(m, s.bound_radius());
      return m;
    }
  }
  return 0.0;
}

double SetFamily::volume_at(double s) const { return shape_at(s).volume(); }

double SetFamily::reach_dist(std::span<const double> x) const {
  switch (kind_) {
    case Kind::static_shape:
      return std::max(0.0, base_.signed_dist(x));
    case Kind::moving_ball:
      return std::max(0.0, traj_.dist_to_path(x) - radius_);
    case Kind::piecewise: {
      double m = kInf;
      for (const auto& s : seq_) m = std::min(m, s.signed_dist(x));
      return std::max(0.0, m);
    }
  }
  return 0.0;
}

// ----------------------------------------------------------------- censoring

bool survives_past(const CensoredTime& T, double t, Resolve dir,
                   EventStats* stats) {
  if (T.censored || T.definite) return T.value > t;
  if (T.value > t) return true;
  if (T.upper <= t) return false;
  if (stats) ++stats->pessimistic;
  return dir == Resolve::toward_survival;
}

// ------------------------------------------------------------ cell verdicts

namespace {

enum class MeetVerdict { at_start, by_end, no_meet, unknown };
enum class StayVerdict { stays, exits, unknown };

// Does the node meet the family's set at some time in the knot cell?
// Endpoint membership is checked exactly against the set at the endpoint's
// own time; interior claims use the set frozen at the window start plus an
// additive motion slack (signed distance is 1-Lipschitz, and the family
// centre moves by at most `motion` across the window).
MeetVerdict cell_meet(paths::NodePath& path, std::size_t cell,
                      const SetFamily& family, const EventPolicy& policy,
                      EventStats* stats) {
  if (stats) {
    ++stats->verdicts;
    stats->budget_spent += policy.verdict.eps_segment;
  }
  const double a = path.knot_time(cell);
  const double b = path.knot_time(cell + 1);
  const auto xa = path.knot_pos(cell);
  const auto xb = path.knot_pos(cell + 1);
  if (family.shape_at(a).signed_dist(xa) <= 0.0) return MeetVerdict::at_start;
  if (family.shape_at(b).signed_dist(xb) <= 0.0) return MeetVerdict::by_end;
  if (family.next_change_after(a) < b) return MeetVerdict::unknown;

  double motion = 0.0;
  const geom::Shape sw = family.window_shape(a, b, motion);
  const double h = b - a;
  const double env = policy.verdict.envelope(h, path.dim());

  double lo, hi;
  sw.chord_signed_dist(xa, xb, lo, hi);

  if (path.dim() == 1) {
    if (motion == 0.0 && lo <= 0.0) {
      // A continuous 1-d path covers its endpoint range, which meets the set.
      return MeetVerdict::by_end;
    }
    if (lo - motion > 0.0) {
      const geom::Shape swm = motion > 0.0 ? sw.offset(motion) : sw;
      const double p = paths::bridge_touch_prob_1d(swm, xa[0], xb[0], h);
      if (p < policy.verdict.eps_segment) return MeetVerdict::no_meet;
      return MeetVerdict::unknown;
    }
    if (hi < -(env + motion)) return MeetVerdict::by_end;
    return MeetVerdict::unknown;
  }

  if (lo > env + motion) return MeetVerdict::no_meet;
  if (hi < -(env + motion)) return MeetVerdict::by_end;  // stays deep inside
  return MeetVerdict::unknown;
}

// Is the node inside the family's set throughout the knot cell?
StayVerdict cell_stay(paths::NodePath& path, std::size_t cell,
                      const SetFamily& family, const EventPolicy& policy,
                      EventStats* stats) {
  if (stats) {
    ++stats->verdicts;
    stats->budget_spent += policy.verdict.eps_segment;
  }
  const double a = path.knot_time(cell);
  const double b = path.knot_time(cell + 1);
  const auto xa = path.knot_pos(cell);
  const auto xb = path.knot_pos(cell + 1);
  if (family.shape_at(a).signed_dist(xa) > 0.0) return StayVerdict::exits;
  if (family.shape_at(b).signed_dist(xb) > 0.0) return StayVerdict::exits;
  if (family.next_change_after(a) < b) return StayVerdict::unknown;

  double motion = 0.0;
  const geom::Shape sw = family.window_shape(a, b, motion);
  const double h = b - a;

  if (path.dim() == 1 && sw.kind != geom::Shape::Kind::annulus) {
    const double lo = (sw.kind == geom::Shape::Kind::box
                           ? sw.center[0]
                           : sw.center[0] - sw.r_outer) +
                      motion;
    const double hi = (sw.kind == geom::Shape::Kind::box
                           ? sw.hi[0]
                           : sw.center[0] + sw.r_outer) -
                      motion;
    if (xa[0] > lo && xa[0] < hi && xb[0] > lo && xb[0] < hi &&
        paths::bridge_exit_prob_1d(lo, hi, xa[0], xb[0], h) <
            policy.verdict.eps_segment) {
      return StayVerdict::stays;
    }
    return StayVerdict::unknown;
  }

  const double env = policy.verdict.envelope(h, path.dim());
  double lo, hi;
  sw.chord_signed_dist(xa, xb, lo, hi);
  if (hi < -(env + motion)) return StayVerdict::stays;
  return StayVerdict::unknown;
}

}  // namespace

// ------------------------------------------------------------- detection

namespace {

struct Cand {
  double t0, t1;
  std::uint32_t node;
  bool operator>(const Cand& o) const { return t0 > o.t0; }
};

}  // namespace

CensoredTime detection_time(const NodeSource& nodes, const SetFamily& family,
                            double horizon, const EventPolicy& policy,
                            EventStats* stats) {
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;

  double best_def = kInf;  // earliest definite entry knot
  double unc_lo = kInf;    // earliest unresolved possible entry
  double unc_hi = kInf;

  auto cap = [&] { return std::min({horizon, best_def, unc_hi}); };

  std::size_t seen = 0;

  auto push_initial = [&](std::span<paths::NodePath> ps) {
    for (; seen < ps.size(); ++seen) {
      heap.push({0.0, ps[seen].span(), static_cast<std::uint32_t>(seen)});
    }
  };

  auto drain_until = [&](std::span<paths::NodePath> ps, double tmax) {
    while (!heap.empty() && heap.top().t0 < std::min(tmax, cap())) {
      const Cand c = heap.top();
      heap.pop();
      paths::NodePath& path = ps[c.node];
      std::size_t i = path.ensure_time(c.t0);
      // The knot set may have been refined since this cell was pushed; walk
      // the sub-cells it now spans, refining in place as needed.
      while (i < path.knot_count() - 1 && path.knot_time(i) < c.t1) {
        const double a = path.knot_time(i);
        const double b = path.knot_time(i + 1);
        if (a >= cap()) break;
        const MeetVerdict v = cell_meet(path, i, family, policy, stats);
        if (v == MeetVerdict::at_start) {
          if (a <= horizon) best_def = std::min(best_def, a);
          break;
        }
        if (v == MeetVerdict::no_meet) {
          ++i;
          continue;
        }
        if (b - a <= policy.min_gap) {
          // Entry inside (a, b] that we cannot (or need not) localize
          // further.
          if (v == MeetVerdict::by_end) {
            if (a < unc_lo) {
              unc_lo = a;
              unc_hi = std::min(b, horizon);
            }
          } else {
            if (stats) ++stats->pessimistic;
            if (policy.resolve == Resolve::toward_event && a < unc_lo) {
              unc_lo = a;
              unc_hi = std::min(b, horizon);
            }
          }
          ++i;
          continue;
        }
        path.refine_cell(i);
      }
    }
  };

  double frontier = std::min(horizon, 1.0);
  for (;;) {
    auto ps = nodes(frontier);
    push_initial(ps);
    drain_until(ps, frontier);
    if (frontier >= horizon || cap() <= frontier) break;
    frontier = std::min(2.0 * frontier, horizon);
  }
  {
    auto ps = nodes(std::min(horizon, cap()));
    push_initial(ps);
    drain_until(ps, horizon);
  }

  if (best_def <= unc_lo) {
    if (best_def <= horizon) return CensoredTime::at(best_def);
    return CensoredTime::censored_at(horizon);
  }
  if (unc_lo < kInf) {
    return CensoredTime::between(unc_lo, std::min(unc_hi, best_def));
  }
  return CensoredTime::censored_at(horizon);
}

CensoredTime detection_time(std::span<paths::NodePath> node_paths,
                            const SetFamily& family, double horizon,
                            const EventPolicy& policy, EventStats* stats) {
  return detection_time(fixed_nodes(node_paths), family, horizon, policy,
                        stats);
}

// ------------------------------------------------------------- isolation

namespace {

struct WakeEntry {
  double when;
  std::uint32_t node;
  bool operator>(const WakeEntry& o) const { return when > o.when; }
};

// Frontier-advancing coverage tracker.  Far nodes sleep on a wake heap keyed
// by the earliest time their Brownian displacement could reach the target
// family (the same reflection bound as the truncation radius); active nodes
// are queried exactly.
class CoverageTracker {
 public:
  CoverageTracker(const NodeSource& nodes, const SetFamily& family,
                  double horizon, const EventPolicy& policy, EventStats* stats)
      : nodes_(nodes),
        family_(family),
        horizon_(horizon),
        policy_(policy),
        stats_(stats) {
    ps_ = nodes_(std::min(horizon, 1.0));
    frontier_ = std::min(horizon, 1.0);
    const std::size_t n = std::max<std::size_t>(ps_.size(), 1);
    const double eps_n = policy.wake_eps / static_cast<double>(n);
    q2_ = stats::chi2_tail_inv(std::min(0.5, eps_n / 2.0),
                               static_cast<double>(family.dim()));
    admit_new(0.0);
  }

  // First uncovered time in (s, b], given exact coverage at s; or none.
  // `holder` carries the node certifying the previous stretch.
  struct Probe {
    bool failed = false;
    double lo = 0.0, hi = 0.0;
  };

  // First uncovered time in (s, b], given exact coverage at s; the right
  // half iterates in place so stack depth stays logarithmic in (b-s)/min_gap.
  Probe first_uncovered(double s, double b, long& holder) {
    for (;;) {
      wake_until(b);
      // Try to certify the whole window with one staying node.
      if (holder >= 0 && !node_inside(static_cast<std::uint32_t>(holder), s)) {
        holder = -1;
      }
      if (holder < 0) {
        double depth;
        holder = deepest_at(s, depth);
      }
      if (holder >= 0 && cert_stays(static_cast<std::uint32_t>(holder), s, b)) {
        return {};
      }
      if (b - s <= policy_.min_gap) {
        double depth;
        const long cov = deepest_at(b, depth);
        if (cov < 0) return {true, s, b};
        if (stats_) ++stats_->pessimistic;
        if (policy_.resolve == Resolve::toward_event) return {true, s, b};
        holder = cov;
        return {};
      }
      double mid = 0.5 * (s + b);
      const double nc = family_.next_change_after(s);
      if (nc > s && nc < b) mid = nc;  // align windows with set changes
      const Probe left = first_uncovered(s, mid, holder);
      if (left.failed) return left;
      if (holder < 0 ||
          !node_inside(static_cast<std::uint32_t>(holder), mid)) {
        double depth;
        holder = deepest_at(mid, depth);
        if (holder < 0) return {true, s, mid};
      }
      s = mid;
    }
  }

  bool covered_at_zero(long& holder) {
    double depth;
    holder = deepest_at(0.0, depth);
    return holder >= 0;
  }

 private:
  void grow(double need) {
    if (need <= frontier_) return;
    frontier_ = need;
    ps_ = nodes_(need);
    admit_new(0.0);
  }

  void admit_new(double now) {
    for (; seen_ < ps_.size(); ++seen_) {
      admit(static_cast<std::uint32_t>(seen_), now);
    }
  }

  // `now` must lie on the dyadic probe lattice (0, window endpoints, probe
  // times); wake deadlines themselves are arbitrary reals and are only used
  // as heap keys.
  void admit(std::uint32_t i, double now) {
    const auto x = now == 0.0 ? ps_[i].origin() : ps_[i].position_at(now);
    const double delta = family_.reach_dist(x);
    const double wake_at = now + delta * delta / q2_;
    if (wake_at <= now + policy_.min_gap) {
      active_.push_back(i);
    } else if (wake_at < horizon_) {
      wake_.push({wake_at, i});
    }
  }

  void wake_until(double t) {
    while (!wake_.empty() && wake_.top().when <= t) {
      const auto e = wake_.top();
      wake_.pop();
      admit(e.node, t);
    }
  }

  bool node_inside(std::uint32_t i, double tau) {
    return family_.shape_at(tau).signed_dist(ps_[i].position_at(tau)) <= 0.0;
  }

  // Deepest covering node at tau, re-sleeping strays; -1 when uncovered.
  long deepest_at(double tau, double& depth_out) {
    grow(tau);
    wake_until(tau);
    const geom::Shape sh = family_.shape_at(tau);
    long best = -1;
    double best_sd = 0.0;
    const double resleep_dist = std::sqrt(resleep_gain_ * q2_);
    for (std::size_t k = 0; k < active_.size();) {
      const std::uint32_t i = active_[k];
      const auto x = ps_[i].position_at(tau);
      const double sd = sh.signed_dist(x);
      if (sd <= 0.0) {
        if (best < 0 || sd < best_sd) {
          best = i;
          best_sd = sd;
        }
      } else if (family_.reach_dist(x) > resleep_dist) {
        active_[k] = active_.back();
        active_.pop_back();
        admit(i, tau);
        continue;
      }
      ++k;
    }
    depth_out = -best_sd;
    return best;
  }

  bool cert_stays(std::uint32_t i, double a, double b) {
    paths::NodePath& p = ps_[i];
    p.ensure_time(b);
    std::size_t cell = p.ensure_time(a);
    // Cell budget: give up on windows spanning heavy refinement and let the
    // caller split instead of walking long knot runs repeatedly.
    int budget = 128;
    while (p.knot_time(cell) < b) {
      if (--budget < 0) return false;
      if (cell_stay(p, cell, family_, policy_, stats_) != StayVerdict::stays) {
        return false;
      }
      ++cell;
    }
    return true;
  }

  const NodeSource& nodes_;
  const SetFamily& family_;
  double horizon_;
  const EventPolicy& policy_;
  EventStats* stats_;
  double q2_ = 1.0;
  double resleep_gain_ = 0.25;
  std::span<paths::NodePath> ps_;
  std::size_t seen_ = 0;
  double frontier_ = 0.0;
  std::vector<std::uint32_t> active_;
  std::priority_queue<WakeEntry, std::vector<WakeEntry>,
                      std::greater<WakeEntry>>
      wake_;
};

}  // namespace

CensoredTime isolation_time(const NodeSource& nodes, const SetFamily& family,
                            double horizon, const EventPolicy& policy,
                            EventStats* stats) {
  CoverageTracker tracker(nodes, family, horizon, policy, stats);
  long holder = -1;
  if (!tracker.covered_at_zero(holder)) return CensoredTime::at(0.0);
  const auto probe = tracker.first_uncovered(0.0, horizon, holder);
  if (!probe.failed) return CensoredTime::censored_at(horizon);
  return CensoredTime::between(probe.lo, probe.hi);
}

CensoredTime isolation_time(std::span<paths::NodePath> node_paths,
                            const SetFamily& family, double horizon,
                            const EventPolicy& policy, EventStats* stats) {
  return isolation_time(fixed_nodes(node_paths), family, horizon, policy,
                        stats);
}

std::vector<CensoredTime> isolation_times(
    const NodeSource& nodes, std::span<const SetFamily* const> families,
    double horizon, const EventPolicy& policy, EventStats* stats) {
  std::vector<CensoredTime> out;
  out.reserve(families.size());
  for (const SetFamily* fam : families) {
    out.push_back(isolation_time(nodes, *fam, horizon, policy, stats));
  }
  return out;
}

// ------------------------------------------------------------- occupation

Occupation occupation_time(paths::NodePath& path, const geom::Shape& ball,
                           std::pair<double, double> window,
                           const EventPolicy& policy, EventStats* stats) {
  if (window.first > window.second) {
    throw std::invalid_argument("occupation window out of order");
  }
  Occupation occ;
  if (window.first == window.second) return occ;
  const SetFamily fam = SetFamily::static_shape(ball);

  path.ensure_time(window.second);
  const std::size_t begin = path.ensure_time(window.first);

  std::vector<std::pair<double, double>> todo;
  for (std::size_t i = begin; path.knot_time(i) < window.second; ++i) {
    todo.emplace_back(path.knot_time(i), path.knot_time(i + 1));
  }
  while (!todo.empty()) {
    const auto [a, b] = todo.back();
    todo.pop_back();
    const std::size_t cell = path.ensure_time(a);
    const double width = b - a;
    if (cell_stay(path, cell, fam, policy, stats) == StayVerdict::stays) {
      occ.lower += width;
      occ.upper += width;
      continue;
    }
    if (cell_meet(path, cell, fam, policy, stats) == MeetVerdict::no_meet) {
      continue;
    }
    if (width <= policy.occ_resolution) {
      occ.upper += width;  // unresolved sliver
      continue;
    }
    path.refine_cell(cell);
    const double mid = path.knot_time(cell + 1);
    todo.emplace_back(a, mid);
    todo.emplace_back(mid, b);
  }
  return occ;
}

// -------------------------------------------------------- discrete coverage

bool discrete_coverage(std::span<paths::NodePath> node_paths,
                       std::span<const std::vector<geom::Shape>> sets_per_node,
                       std::span<const double> times) {
  if (sets_per_node.size() != node_paths.size()) {
    throw std::invalid_argument("discrete_coverage: one set list per node");
  }
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (m > 0 && !(times[m] >= times[m - 1])) {
      throw std::invalid_argument("discrete_coverage: times must be sorted");
    }
    bool any = false;
    for (std::size_t i = 0; i < node_paths.size() && !any; ++i) {
      const auto x = node_paths[i].position_at(times[m]);
      any = sets_per_node[i][m].signed_dist(x) <= 0.0;
    }
    if (!any) return false;
  }
  return true;
}

bool discrete_coverage(std::span<paths::NodePath> node_paths,
                       const SetFamily& family,
                       std::span<const double> times) {
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (m > 0 && !(times[m] >= times[m - 1])) {
      throw std::invalid_argument("discrete_coverage: times must be sorted");
    }
    const geom::Shape sh = family.shape_at(times[m]);
    bool any = false;
    for (auto& p : node_paths) {
      if (sh.signed_dist(p.position_at(times[m])) <= 0.0) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

}  // namespace pbsim::events
