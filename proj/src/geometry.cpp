#include "pbsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pbsim::geom {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Range of |p(s) - c| over the segment p(s) = a + s (b - a), s in [0,1].
void radial_range(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, double& rho_lo, double& rho_hi) {
  // |p(s) - c|^2 is a quadratic q(s) = A s^2 + B s + C with A >= 0.
  double A = 0, B = 0, C = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u = b[i] - a[i];
    const double v = a[i] - c[i];
    A += u * u;
    B += 2.0 * u * v;
    C += v * v;
  }
  const double q0 = C;
  const double q1 = A + B + C;
  double qmin = std::min(q0, q1);
  if (A > 0.0) {
    const double s = -B / (2.0 * A);
    if (s > 0.0 && s < 1.0) qmin = std::min(qmin, A * s * s + B * s + C);
  }
  rho_lo = std::sqrt(std::max(0.0, qmin));
  rho_hi = std::sqrt(std::max(q0, q1));
}

double box_signed_dist(std::span<const double> lo, std::span<const double> hi,
                       std::span<const double> x) {
  double out2 = 0.0;
  double inside = -kInf;  // max over coordinates of distance past a face
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double below = lo[i] - x[i];
    const double above = x[i] - hi[i];
    const double excess = std::max(below, above);
    if (excess > 0.0) out2 += excess * excess;
    inside = std::max(inside, excess);
  }
  return out2 > 0.0 ? std::sqrt(out2) : inside;
}

}  // namespace

double unit_ball_volume(std::size_t d) {
  // omega_d = pi^{d/2} / Gamma(d/2 + 1)
  const double dd = static_cast<double>(d);
  return std::pow(std::numbers::pi, dd / 2.0) / std::tgamma(dd / 2.0 + 1.0);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

Shape Shape::make_ball(std::vector<double> c, double r) {
  if (r < 0.0) throw std::invalid_argument("ball radius must be >= 0");
  Shape s;
  s.kind = Kind::ball;
  s.center = std::move(c);
  s.r_outer = r;
  return s;
}

Shape Shape::make_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box corner dims");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box corners out of order");
  }
  Shape s;
  s.kind = Kind::box;
  s.center = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

Shape Shape::make_annulus(std::vector<double> c, double r_in, double r_out) {
  if (r_in < 0.0 || r_out < r_in) {
    throw std::invalid_argument("annulus radii must satisfy 0 <= r_in <= r_out");
  }
  Shape s;
  s.kind = Kind::annulus;
  s.center = std::move(c);
  s.r_inner = r_in;
  s.r_outer = r_out;
  return s;
}

Shape Shape::make_interval(double a, double b) {
  if (a > b) throw std::invalid_argument("interval out of order");
  return make_ball({(a + b) / 2.0}, (b - a) / 2.0);
}

bool Shape::empty() const {
  if (kind == Kind::ball) return r_outer < 0.0;
  if (kind == Kind::annulus) return r_outer < r_inner;
  for (std::size_t i = 0; i < center.size(); ++i) {
    if (center[i] > hi[i]) return true;
  }
  return false;
}

double Shape::volume() const {
  if (empty()) return 0.0;
  const std::size_t d = dim();
  switch (kind) {
    case Kind::ball:
      return unit_ball_volume(d) * std::pow(r_outer, static_cast<double>(d));
    case Kind::annulus:
      return unit_ball_volume(d) * (std::pow(r_outer, static_cast<double>(d)) -
                                    std::pow(r_inner, static_cast<double>(d)));
    case Kind::box: {
      double v = 1.0;
      for (std::size_t i = 0; i < d; ++i) v *= hi[i] - center[i];
      return v;
    }
  }
  return 0.0;
}

double Shape::bound_radius() const {
  if (empty()) return 0.0;
  switch (kind) {
    case Kind::ball:
    case Kind::annulus: {
      return std::sqrt(norm2(center)) + r_outer;
    }
    case Kind::box: {
      double far2 = 0.0;
      for (std::size_t i = 0; i < center.size(); ++i) {
        const double m = std::max(std::fabs(center[i]), std::fabs(hi[i]));
        far2 += m * m;
      }
      return std::sqrt(far2);
    }
  }
  return 0.0;
}

double Shape::signed_dist(std::span<const double> x) const {
  if (empty()) return kInf;
  switch (kind) {
    case Kind::ball:
      return std::sqrt(dist2(x, center)) - r_outer;
    case Kind::annulus: {
      const double rho = std::sqrt(dist2(x, center));
      return std::max(r_inner - rho, rho - r_outer);
    }
    case Kind::box:
      return box_signed_dist(center, hi, x);
  }
  return kInf;
}

void Shape::chord_signed_dist(std::span<const double> a,
                              std::span<const double> b, double& lo,
                              double& hi_out) const {
  if (empty()) {
    lo = hi_out = kInf;
    return;
  }
  switch (kind) {
    case Kind::ball: {
      double rlo, rhi;
      radial_range(a, b, center, rlo, rhi);
      lo = rlo - r_outer;
      hi_out = rhi - r_outer;
      return;
    }
    case Kind::annulus: {
      double rlo, rhi;
      radial_range(a, b, center, rlo, rhi);
      // sd(rho) = max(r_in - rho, rho - r_out) is V-shaped in rho with its
      // minimum at (r_in + r_out)/2, so extremes over [rlo, rhi] are at the
      // clamped vertex and at the interval endpoints.
      auto sd = [&](double rho) {
        return std::max(r_inner - rho, rho - r_outer);
      };
      const double vertex =
          std::clamp((r_inner + r_outer) / 2.0, rlo, rhi);
      lo = sd(vertex);
      hi_out = std::max(sd(rlo), sd(rhi));
      return;
    }
    case Kind::box: {
      // signed distance to a convex set is convex along the segment:
      // max at an endpoint, min located by ternary search.
      const double sa = box_signed_dist(center, hi, a);
      const double sb = box_signed_dist(center, hi, b);
      hi_out = std::max(sa, sb);
      double l = 0.0, r = 1.0;
      std::vector<double> p(a.size());
      auto eval = [&](double s) {
        for (std::size_t i = 0; i < a.size(); ++i) {
          p[i] = a[i] + s * (b[i] - a[i]);
        }
        return box_signed_dist(center, hi, p);
      };
      for (int it = 0; it < 60; ++it) {
        const double m1 = l + (r - l) / 3.0;
        const double m2 = r - (r - l) / 3.0;
        if (eval(m1) <= eval(m2)) {
          r = m2;
        } else {
          l = m1;
        }
      }
      lo = std::min({sa, sb, eval((l + r) / 2.0)});
      return;
    }
  }
}

Shape Shape::offset(double delta) const {
  Shape s = *this;
  switch (kind) {
    case Kind::ball:
      s.r_outer = r_outer + delta;
      break;
    case Kind::annulus:
      s.r_inner = std::max(0.0, r_inner - delta);
      s.r_outer = r_outer + delta;
      if (r_inner - delta > s.r_outer) s.r_inner = s.r_outer + 1.0;  // empty
      break;
    case Kind::box:
      for (std::size_t i = 0; i < center.size(); ++i) {
        s.center[i] -= delta;
        s.hi[i] += delta;
      }
      break;
  }
  return s;
}

}  // namespace pbsim::geom
