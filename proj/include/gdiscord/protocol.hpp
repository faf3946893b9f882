#pragma once

#include <utility>
#include <vector>

#include "gdiscord/discord.hpp"
#include "gdiscord/measurement.hpp"
#include "gdiscord/optimize.hpp"
#include "gdiscord/symplectic.hpp"

namespace gdiscord {

// Classical signal of variance vs displacing both quadratures of mode A:
// the encoded covariance is base plus vs on the A block only.
struct EncodedState {
  TwoModeCov base;
  double vs;
  TwoModeCov cov() const;
};

EncodedState encode(const TwoModeCov& state, double vs);

// information carried through one mode alone when its marginal is a * I
double mutual_info_single_mode(double a, double l_a, double vs);

struct MutualInfoReport {
  double i_local = 0.0;
  double i_joint = 0.0;
  double gap = 0.0;  // i_joint - i_local
  std::pair<double, double> eig_local{0.0, 0.0};
  std::pair<double, double> eig_joint{0.0, 0.0};
  LocalMeasurement opt_local_a{0.0, 1.0}, opt_local_b{0.0, 1.0};
  JointMeasurement opt_joint{0.0, 0.0, 1.0, {0.0, 1.0}, {0.0, 1.0}};
};

// Best retrievable information about the encoded signal under the two
// measurement strategies, maximized over the same search spaces the discord
// computation minimizes over.
MutualInfoReport mutual_info_report(const TwoModeCov& state, double vs,
                                    const OptimOptions& opts = {});

struct ConvergencePoint {
  double vs = 0.0;
  double gap = 0.0;
  double dist = 0.0;  // |gap - ogd|
};

std::vector<double> default_vs_schedule();

std::vector<ConvergencePoint> ogd_convergence(const TwoModeCov& state,
                                              const std::vector<double>& vs_schedule,
                                              const OptimOptions& opts = {});

}  // namespace gdiscord
