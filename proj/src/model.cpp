#include "pbsim/model.hpp"

#include <cmath>
#include <stdexcept>

#include "pbsim/pointprocess.hpp"

namespace pbsim::model {

double psi(std::size_t d, double t) {
  if (d < 1) throw std::invalid_argument("psi: dimension must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("psi: t must be > 0");
  if (d == 1) return std::sqrt(t);
  if (d == 2) {
    if (!(t > 1.0)) throw std::invalid_argument("psi: d=2 requires t > 1");
    return std::log(t);
  }
  return 1.0;
}

SimConfig validate_config(const SimConfig& raw, double set_bound) {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (raw.d < 1) fail("config: d must be >= 1");
  if (!(raw.lambda > 0.0) || !std::isfinite(raw.lambda)) {
    fail("config: lambda must be > 0");
  }
  if (!(raw.r > 0.0) || !std::isfinite(raw.r)) fail("config: r must be > 0");
  if (!(raw.horizon > 0.0) || !std::isfinite(raw.horizon)) {
    fail("config: horizon must be > 0");
  }
  if (!(raw.trunc_eps > 0.0 && raw.trunc_eps < 1.0)) {
    fail("config: trunc_eps must lie in (0,1)");
  }
  if (!(raw.step > 0.0)) fail("config: step must be > 0");
  if (raw.step > raw.horizon) fail("config: step must be <= horizon");
  if (!(raw.verdict_eps > 0.0 && raw.verdict_eps < 1.0)) {
    fail("config: verdict_eps must lie in (0,1)");
  }
  if (raw.n_samples < 1) fail("config: n_samples must be >= 1");

  SimConfig out = raw;
  if (!out.trunc_radius) {
    out.trunc_radius =
        pointprocess::truncation_radius(out, set_bound, out.trunc_eps);
  } else if (*out.trunc_radius < set_bound + out.r) {
    fail("config: trunc_radius must be >= set bound + r");
  }
  return out;
}

}  // namespace pbsim::model
