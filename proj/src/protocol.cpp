#include "gdiscord/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdiscord {

namespace {

double clamp_l(double l) { return std::clamp(l, kHomodyneFloor, 1.0); }

}  // namespace

TwoModeCov EncodedState::cov() const {
  Mat4 m = base.mat();
  m(0, 0) += vs;
  m(1, 1) += vs;
  return TwoModeCov::from_matrix(m);
}

EncodedState encode(const TwoModeCov& state, double vs) {
  if (!(vs > 0.0)) throw std::domain_error("signal variance must be positive");
  return {state, vs};
}

double mutual_info_single_mode(double a, double l_a, double vs) {
  if (!(a >= 1.0) || !(l_a > 0.0 && l_a <= 1.0) || !(vs > 0.0))
    throw std::domain_error("mutual_info_single_mode needs a >= 1, l_a in (0, 1], vs > 0");
  return 0.5 * (std::log1p(vs / (a + l_a)) + std::log1p(vs / (a + 1.0 / l_a)));
}

MutualInfoReport mutual_info_report(const TwoModeCov& state, double vs,
                                    const OptimOptions& opts) {
  if (!(vs > 0.0)) throw std::domain_error("signal variance must be positive");

  // the signal adds vs to both eigenvalues of the conditional covariance, so
  // the information is the entropy gap between the encoded and the base
  // conditionals; evaluating it as a difference of the two stable half log
  // determinants keeps local and joint strategies bit-comparable on product
  // measurements
  const TwoModeCov enc = encode(state, vs).cov();
  Objective neg_local = [&state, &enc](const Eigen::VectorXd& x) {
    const LocalMeasurement ma(x[0], clamp_l(x[2]));
    const LocalMeasurement mb(x[1], clamp_l(x[3]));
    return conditional_half_log_det(state, ma, mb) - conditional_half_log_det(enc, ma, mb);
  };
  const OptResult rl = minimize(neg_local, local_space(), {}, opts);

  Eigen::VectorXd embed(7);
  embed << 0.0, 0.0, 1.0, rl.argmin[0], rl.argmin[1], clamp_l(rl.argmin[2]),
      clamp_l(rl.argmin[3]);
  Objective neg_joint = [&state, &enc](const Eigen::VectorXd& x) {
    const JointMeasurement m(x[0], x[1], std::clamp(x[2], 0.0, 1.0), {x[3], clamp_l(x[5])},
                             {x[4], clamp_l(x[6])});
    return conditional_half_log_det(state, m) - conditional_half_log_det(enc, m);
  };
  const OptResult rj = minimize(neg_joint, joint_space(), {embed}, opts);

  MutualInfoReport rep;
  rep.opt_local_a = LocalMeasurement(rl.argmin[0], clamp_l(rl.argmin[2]));
  rep.opt_local_b = LocalMeasurement(rl.argmin[1], clamp_l(rl.argmin[3]));
  rep.opt_joint = JointMeasurement(rj.argmin[0], rj.argmin[1], std::clamp(rj.argmin[2], 0.0, 1.0),
                                   {rj.argmin[3], clamp_l(rj.argmin[5])},
                                   {rj.argmin[4], clamp_l(rj.argmin[6])});
  rep.eig_local = conditional_cov_local(state, rep.opt_local_a, rep.opt_local_b).eigenvalues();
  rep.eig_joint = conditional_cov_joint(state, rep.opt_joint).eigenvalues();
  rep.i_local = -rl.value;
  rep.i_joint = -rj.value;
  rep.gap = rep.i_joint - rep.i_local;
  if (rep.gap < -1e-9)
    throw std::runtime_error("joint information fell below the local bound beyond tolerance");
  return rep;
}

std::vector<double> default_vs_schedule() { return {1e0, 1e2, 1e4, 1e6, 1e8}; }

std::vector<ConvergencePoint> ogd_convergence(const TwoModeCov& state,
                                              const std::vector<double>& vs_schedule,
                                              const OptimOptions& opts) {
  for (std::size_t i = 0; i < vs_schedule.size(); ++i) {
    if (!(vs_schedule[i] > 0.0)) throw std::domain_error("vs schedule must be positive");
    if (i > 0 && !(vs_schedule[i] > vs_schedule[i - 1]))
      throw std::domain_error("vs schedule must be increasing");
  }
  const DiscordReport rep = ogd(state, opts);
  std::vector<ConvergencePoint> out;
  out.reserve(vs_schedule.size());
  for (double vs : vs_schedule) {
    const MutualInfoReport mi = mutual_info_report(state, vs, opts);
    out.push_back({vs, mi.gap, std::abs(mi.gap - rep.ogd)});
  }
  return out;
}

}  // namespace gdiscord
