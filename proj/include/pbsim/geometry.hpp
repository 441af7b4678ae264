// Target-set primitives: balls, axis boxes and annuli with exact volumes and
// signed distances.  Verdicts in paths/events only ever need signed distances
// of points and segment chords, so that is the whole interface.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pbsim::geom {

double unit_ball_volume(std::size_t d);  // omega_d

double dist2(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

struct Shape {
  enum class Kind { ball, box, annulus };

  Kind kind = Kind::ball;
  std::vector<double> center;  // ball/annulus center, or box lower corner
  std::vector<double> hi;      // box upper corner (box only)
  double r_outer = 0.0;        // ball radius / annulus outer radius
  double r_inner = 0.0;        // annulus inner radius

  static Shape make_ball(std::vector<double> c, double r);
  static Shape make_box(std::vector<double> lo, std::vector<double> hi);
  static Shape make_annulus(std::vector<double> c, double r_in, double r_out);
  // 1-d interval [a,b] as a ball.
  static Shape make_interval(double a, double b);

  std::size_t dim() const {
    return kind == Kind::box ? center.size() : center.size();
  }

  double volume() const;
  // Radius of the smallest origin-centered ball containing the shape.
  double bound_radius() const;

  // Negative inside, positive outside, zero on the boundary.
  double signed_dist(std::span<const double> x) const;

  // Range of signed_dist over the segment [a,b] (exact for ball/annulus,
  // exact min and endpoint max for boxes; box max over a segment is attained
  // at an endpoint by convexity).
  void chord_signed_dist(std::span<const double> a, std::span<const double> b,
                         double& lo, double& hi) const;

  // Minkowski grow (delta > 0) or shrink (delta < 0).  Shrinking an annulus
  // or ball past empty yields an empty shape (volume 0, signed_dist +inf).
  Shape offset(double delta) const;

  bool empty() const;
};

}  // namespace pbsim::geom
