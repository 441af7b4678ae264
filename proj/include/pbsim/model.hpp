// Core domain types and the Psi_d scaling function.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace pbsim::model {

// Dimension-dependent scaling: sqrt(t) for d=1, log t for d=2, 1 for d>=3.
// Psi_2 uses the natural logarithm, so d=2 requires t > 1.
double psi(std::size_t d, double t);

struct ScalingKind {
  std::size_t d = 1;
  double operator()(double t) const { return psi(d, t); }
};

struct SimConfig {
  std::size_t d = 1;             // dimension, >= 1
  double lambda = 1.0;           // intensity per unit volume, > 0
  double r = 1.0;                // detection radius, > 0
  double horizon = 1.0;          // t, > 0
  std::optional<double> trunc_radius;  // R; empty means auto
  double trunc_eps = 1e-3;       // truncation probability budget, in (0,1)
  double step = 0.5;             // base time step h, 0 < step <= horizon
  std::size_t refine_depth = 28;  // max bisection depth per base segment
  std::uint64_t master_seed = 1;
  std::size_t n_samples = 10000;

  // Per-segment verdict escape probability; see paths::VerdictPolicy.
  double verdict_eps = 1e-12;
};

// Fills auto fields (trunc_radius via pointprocess::truncation_radius with
// the given target-set bound L_t) and rejects invariant violations with a
// descriptive std::invalid_argument.  Idempotent.
SimConfig validate_config(const SimConfig& raw, double set_bound = 0.0);

}  // namespace pbsim::model
