#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace gdiscord {

// Search box for one coordinate. Periodic coordinates are angles: the
// objective must have period (hi - lo) in them, and the optimizer treats them
// as unbounded, wrapping only the reported minimizer back into [lo, hi).
struct Bound {
  double lo;
  double hi;
  bool periodic = false;
};

struct OptimOptions {
  int starts = 0;  // 0 picks 16 below five dimensions, 32 from five up
  int max_iter = 4000;
  double diam_tol = 1e-10;
  double val_tol = 1e-12;
  std::uint64_t seed = 0;
};

struct OptResult {
  Eigen::VectorXd argmin;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Multi-start Nelder-Mead over a box. Runs go in a fixed order: the
// caller-supplied extra starts first, then low-discrepancy Halton points
// randomised by the seed. Runs tying within 1e-13 keep the earliest result,
// so a canonical extra start wins when the objective is flat across ties.
OptResult minimize(const Objective& f, const std::vector<Bound>& bounds,
                   const std::vector<Eigen::VectorXd>& extra_starts = {},
                   const OptimOptions& opts = {});

// Exhaustive tensor-grid evaluation, for cross-checking the optimizer in
// tests. Returns the best grid point.
OptResult grid_oracle(const Objective& f, const std::vector<Bound>& bounds, int points_per_dim);

// One-dimensional golden-section minimization of a unimodal function.
// Returns (argmin, min value).
std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double xtol = 1e-12);

}  // namespace gdiscord
