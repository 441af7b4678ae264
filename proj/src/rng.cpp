#include "pbsim/rng.hpp"

#include <stdexcept>

namespace pbsim::rng {

namespace {

// Inversion by sequential search, fine for small means.
std::uint64_t poisson_small(Stream& s, double mean) {
  const double g = std::exp(-mean);
  std::uint64_t k = 0;
  double t = s.uniform01();
  while (t > g) {
    ++k;
    t *= s.uniform01();
  }
  return k;
}

// Hoermann's PTRS transformed-rejection sampler, exact for mean >= 10.
std::uint64_t poisson_ptrs(Stream& s, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = s.uniform01() - 0.5;
    const double v = s.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t Stream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_small(*this, mean);
  return poisson_ptrs(*this, mean);
}

void Stream::uniform_in_ball(std::span<const double> center, double radius,
                             std::span<double> out) {
  const std::size_t d = center.size();
  if (d == 1) {
    out[0] = center[0] + radius * (2.0 * uniform01() - 1.0);
    return;
  }
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = normal();
    norm2 += out[i] * out[i];
  }
  const double norm = std::sqrt(norm2);
  const double rr =
      radius * std::pow(uniform01(), 1.0 / static_cast<double>(d));
  const double scale = norm > 0.0 ? rr / norm : 0.0;
  for (std::size_t i = 0; i < d; ++i) out[i] = center[i] + out[i] * scale;
}

void Stream::uniform_in_box(std::span<const double> lo,
                            std::span<const double> hi,
                            std::span<double> out) {
  for (std::size_t i = 0; i < lo.size(); ++i) out[i] = uniform(lo[i], hi[i]);
}

}  // namespace pbsim::rng
