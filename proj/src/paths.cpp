#include "pbsim/paths.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace pbsim::paths {

namespace {

std::uint64_t time_key(double t) {
  std::uint64_t bits;
  std::memcpy(&bits, &t, sizeof(bits));
  return rng::rotl64(bits, 3);
}

double next_pow2_at_least(double x) {
  double p = 1.0;
  while (p < x) p *= 2.0;
  return p;
}

}  // namespace

NodePath NodePath::lazy(std::uint64_t node_id, std::span<const double> origin,
                        double horizon, rng::Stream stream) {
  if (!(horizon > 0.0)) throw std::invalid_argument("path horizon must be > 0");
  NodePath p;
  p.node_id_ = node_id;
  p.d_ = origin.size();
  p.stream_ = stream;
  const double span = next_pow2_at_least(horizon);
  p.times_ = {0.0, span};
  p.pos_.resize(2 * p.d_);
  std::copy(origin.begin(), origin.end(), p.pos_.begin());
  const double sd = std::sqrt(span);
  const std::uint64_t key = time_key(span);
  for (std::size_t c = 0; c < p.d_; ++c) {
    p.pos_[p.d_ + c] = origin[c] + sd * stream.normal_at(key ^ c);
  }
  return p;
}

NodePath NodePath::from_grid(std::uint64_t node_id,
                             std::span<const double> origin,
                             std::span<const double> grid,
                             rng::Stream stream) {
  if (grid.empty() || grid.front() != 0.0) {
    throw std::invalid_argument("grid must start at 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
  NodePath p;
  p.node_id_ = node_id;
  p.d_ = origin.size();
  p.stream_ = stream;
  p.times_.assign(grid.begin(), grid.end());
  p.pos_.resize(grid.size() * p.d_);
  std::copy(origin.begin(), origin.end(), p.pos_.begin());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double sd = std::sqrt(grid[i] - grid[i - 1]);
    for (std::size_t c = 0; c < p.d_; ++c) {
      p.pos_[i * p.d_ + c] = p.pos_[(i - 1) * p.d_ + c] + sd * stream.normal();
    }
  }
  return p;
}

void NodePath::displacement(std::size_t i, std::span<double> out) const {
  for (std::size_t c = 0; c < d_; ++c) out[c] = pos_[i * d_ + c] - pos_[c];
}

std::size_t NodePath::cell_before(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

void NodePath::bridge_sample(std::size_t cell, double t,
                             std::span<double> out) const {
  const double ta = times_[cell];
  const double tb = times_[cell + 1];
  const double w = (t - ta) / (tb - ta);
  const double var = (t - ta) * (tb - t) / (tb - ta);
  const double sd = std::sqrt(var);
  const std::uint64_t key = time_key(t);
  for (std::size_t c = 0; c < d_; ++c) {
    const double mean =
        pos_[cell * d_ + c] + w * (pos_[(cell + 1) * d_ + c] - pos_[cell * d_ + c]);
    out[c] = mean + sd * stream_.normal_at(key ^ c);
  }
}

std::size_t NodePath::insert_knot(std::size_t cell, double t,
                                  std::span<const double> value) {
  times_.insert(times_.begin() + static_cast<std::ptrdiff_t>(cell) + 1, t);
  pos_.insert(pos_.begin() + static_cast<std::ptrdiff_t>((cell + 1) * d_),
              value.begin(), value.end());
  return cell + 1;
}

std::size_t NodePath::refine_cell(std::size_t i) {
  if (i + 1 >= times_.size()) throw std::invalid_argument("refine_cell: range");
  const double tm = 0.5 * (times_[i] + times_[i + 1]);
  if (!(tm > times_[i] && tm < times_[i + 1])) {
    throw std::invalid_argument("refine_cell: cell too narrow to bisect");
  }
  double buf[8];
  std::vector<double> big;
  std::span<double> v = d_ <= 8 ? std::span<double>(buf, d_)
                                : (big.resize(d_), std::span<double>(big));
  bridge_sample(i, tm, v);
  return insert_knot(i, tm, v);
}

std::size_t NodePath::insert_midpoint(std::size_t i,
                                      std::span<const double> value) {
  if (i + 1 >= times_.size() || value.size() != d_) {
    throw std::invalid_argument("insert_midpoint: bad cell or value size");
  }
  const double tm = 0.5 * (times_[i] + times_[i + 1]);
  if (!(tm > times_[i] && tm < times_[i + 1])) {
    throw std::invalid_argument("insert_midpoint: cell too narrow to bisect");
  }
  return insert_knot(i, tm, value);
}

std::size_t NodePath::ensure_time(double t) {
  if (t < 0.0 || t > times_.back()) {
    throw std::invalid_argument("ensure_time: t outside [0, span]");
  }
  for (int guard = 0; guard < 128; ++guard) {
    std::size_t cell = cell_before(t);
    if (times_[cell] == t) return cell;
    const double mid = 0.5 * (times_[cell] + times_[cell + 1]);
    if (!(mid > times_[cell] && mid < times_[cell + 1])) break;
    refine_cell(cell);
  }
  throw std::invalid_argument("ensure_time: t not reachable by bisection");
}

void refine_bridge(NodePath& path, std::pair<double, double> interval,
                   rng::Stream& stream) {
  const std::size_t n = path.knot_count();
  std::size_t i = 0;
  for (; i < n; ++i) {
    if (path.knot_time(i) == interval.first) break;
  }
  if (i >= n || i + 1 >= n || path.knot_time(i + 1) != interval.second) {
    throw std::invalid_argument(
        "refine_bridge: interval must span consecutive knots");
  }
  // Bridge midpoint: mean is the endpoint average, per-coordinate variance
  // is (t_b - t_a)/4.
  const double h = interval.second - interval.first;
  const std::size_t d = path.dim();
  std::vector<double> v(d);
  const auto a = path.knot_pos(i);
  const auto b = path.knot_pos(i + 1);
  const double sd = std::sqrt(h / 4.0);
  for (std::size_t c = 0; c < d; ++c) {
    v[c] = 0.5 * (a[c] + b[c]) + sd * stream.normal();
  }
  path.insert_midpoint(i, v);
}

double VerdictPolicy::envelope(double h, std::size_t d) const {
  const double dd = static_cast<double>(d);
  return std::sqrt(dd * 0.5 * h * std::log(2.0 * dd / eps_segment));
}

// Exact 1-d bridge level-crossing bound: probability that a bridge from x0 to
// x1 over gap h touches a closed set it starts and ends strictly outside of.
// The set decomposes into at most two intervals; for each, if both endpoints
// sit on the same side, P(touch) = exp(-2 d0 d1 / h) by reflection.
double bridge_touch_prob_1d(const geom::Shape& shape, double x0, double x1,
                            double h) {
  double lo1, hi1, lo2 = 1.0, hi2 = 0.0;
  bool two = false;
  const double c = shape.center[0];
  switch (shape.kind) {
    case geom::Shape::Kind::ball:
      lo1 = c - shape.r_outer;
      hi1 = c + shape.r_outer;
      break;
    case geom::Shape::Kind::box:
      lo1 = shape.center[0];
      hi1 = shape.hi[0];
      break;
    case geom::Shape::Kind::annulus:
      lo1 = c - shape.r_outer;
      hi1 = c - shape.r_inner;
      lo2 = c + shape.r_inner;
      hi2 = c + shape.r_outer;
      two = true;
      break;
    default:
      return 1.0;
  }
  auto component = [&](double lo, double hi) {
    if (x0 > hi && x1 > hi) return std::exp(-2.0 * (x0 - hi) * (x1 - hi) / h);
    if (x0 < lo && x1 < lo) return std::exp(-2.0 * (lo - x0) * (lo - x1) / h);
    return 1.0;  // straddles the component: caller handles via chord test
  };
  double p = component(lo1, hi1);
  if (two) p += component(lo2, hi2);
  return std::min(1.0, p);
}

// Exit probability of a 1-d bridge from an interval it starts and ends
// strictly inside of.
double bridge_exit_prob_1d(double lo, double hi, double x0, double x1,
                           double h) {
  const double up = std::exp(-2.0 * (hi - x0) * (hi - x1) / h);
  const double dn = std::exp(-2.0 * (x0 - lo) * (x1 - lo) / h);
  return std::min(1.0, up + dn);
}

CrossingVerdict segment_verdict(const NodePath& path, std::size_t cell,
                                const geom::Shape& shape, double slack,
                                const VerdictPolicy& policy) {
  const auto a = path.knot_pos(cell);
  const auto b = path.knot_pos(cell + 1);
  const double h = path.knot_time(cell + 1) - path.knot_time(cell);
  const double env = policy.envelope(h, path.dim());

  const double sda = shape.signed_dist(a);
  const double sdb = shape.signed_dist(b);
  if (sda <= 0.0 || sdb <= 0.0) {
    return {SegmentStatus::definitely_inside, 0.0};
  }

  double chord_lo, chord_hi;
  shape.chord_signed_dist(a, b, chord_lo, chord_hi);

  if (path.dim() == 1) {
    if (chord_lo <= 0.0) {
      // The chord (= the path's endpoint range) passes through the set, and
      // a continuous 1-d path covers its endpoint range.
      return {SegmentStatus::definitely_inside, 0.0};
    }
    const double p = bridge_touch_prob_1d(shape, a[0], b[0], h);
    if (p < policy.eps_segment) return {SegmentStatus::definitely_outside, env};
    return {SegmentStatus::uncertain, env};
  }

  if (chord_hi < -env) {
    // Signed distance is 1-Lipschitz, so a deviation below env keeps the
    // path strictly inside whenever the chord is env-deep.
    return {SegmentStatus::definitely_inside, env};
  }
  if (chord_lo > env + slack) {
    return {SegmentStatus::definitely_outside, env};
  }
  return {SegmentStatus::uncertain, env};
}

CrossingVerdict segment_stay_verdict(const NodePath& path, std::size_t cell,
                                     const geom::Shape& shape, double slack,
                                     const VerdictPolicy& policy) {
  const auto a = path.knot_pos(cell);
  const auto b = path.knot_pos(cell + 1);
  const double h = path.knot_time(cell + 1) - path.knot_time(cell);
  const double env = policy.envelope(h, path.dim());

  const double sda = shape.signed_dist(a);
  const double sdb = shape.signed_dist(b);
  if (sda > 0.0 || sdb > 0.0) {
    // An endpoint is strictly outside: certainly not inside throughout.
    return {SegmentStatus::definitely_outside, 0.0};
  }

  if (path.dim() == 1 && shape.kind != geom::Shape::Kind::annulus) {
    double lo = shape.kind == geom::Shape::Kind::box
                    ? shape.center[0]
                    : shape.center[0] - shape.r_outer;
    double hi = shape.kind == geom::Shape::Kind::box
                    ? shape.hi[0]
                    : shape.center[0] + shape.r_outer;
    const double p = bridge_exit_prob_1d(lo, hi, a[0], b[0], h);
    if (p < policy.eps_segment) return {SegmentStatus::definitely_inside, env};
    return {SegmentStatus::uncertain, env};
  }

  double chord_lo, chord_hi;
  shape.chord_signed_dist(a, b, chord_lo, chord_hi);
  if (chord_hi < -(env + slack)) {
    return {SegmentStatus::definitely_inside, env};
  }
  return {SegmentStatus::uncertain, env};
}

}  // namespace pbsim::paths
