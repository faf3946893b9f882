#include "gdiscord/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gdiscord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchGuard = 1e-12;
// window within which a structured measurement counts as tying the
// unrestricted minimum. Wide enough to absorb rounding noise along exactly
// flat valleys (observed ~3e-13 on strongly correlated states), narrow
// enough that the substituted value stays inside every downstream tolerance.
constexpr double kStructuredTieEps = 1e-12;

double sq(double x) { return x * x; }

double clamp_l(double l) { return std::clamp(l, kHomodyneFloor, 1.0); }

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::vector<Eigen::VectorXd> local_starts() {
  const double f = kHomodyneFloor;
  return {vec({0, 0, 1, 1}),          vec({0, 0, f, f}), vec({kPi / 2, kPi / 2, f, f}),
          vec({0, kPi / 2, f, f}),    vec({kPi / 2, 0, f, f}),
          vec({0, 0, 1, f}),          vec({0, 0, f, 1})};
}

std::vector<Eigen::VectorXd> joint_starts() {
  const double f = kHomodyneFloor;
  return {vec({0, 0, 1, 0, 0, 1, 1}),
          vec({0, 0, 0.5, 0, kPi / 2, f, f}),
          vec({0, 0, 0.5, 0, 0, f, f}),
          vec({0, 0, 0.5, 0, kPi / 2, 0.3, 0.3}),
          vec({0, 0, 0.5, 0, 0, 1, 1}),
          vec({0, kPi / 2, 0.5, 0, 0, f, f})};
}

std::vector<Eigen::VectorXd> single_mode_starts() {
  const double f = kHomodyneFloor;
  return {vec({0, 1}), vec({0, f}), vec({kPi / 2, f})};
}

// two-mode squeezed measurement submanifold: local phases (phi_a, phi_b) and
// one strength L, with theta_a = 0, theta_b = pi/2, balanced splitter
std::vector<Bound> tms_space() {
  return {{0.0, kPi, true}, {0.0, kPi, true}, {kHomodyneFloor, 1.0, false}};
}

std::vector<Eigen::VectorXd> tms_starts() {
  const double f = kHomodyneFloor;
  return {vec({0, 0, 1}), vec({0, 0, 0.3}), vec({0, 0, f}), vec({kPi / 2, kPi / 2, 0.3})};
}

Eigen::VectorXd tms_expand(const Eigen::VectorXd& x) {
  return vec({x[0], x[1], 0.5, 0.0, kPi / 2, x[2], x[2]});
}

// coarse grid to bracket the global minimum, then golden-section refinement
std::pair<double, double> bracketed_min(const std::function<double(double)>& f, double lo,
                                        double hi) {
  const int n = 200;
  int best = 0;
  double fbest = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const double v = f(lo + (hi - lo) * k / n);
    if (v < fbest) {
      fbest = v;
      best = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / n;
  const double b = lo + (hi - lo) * std::min(n, best + 1) / n;
  const auto refined = golden_section_min(f, a, b, 1e-13);
  if (fbest < refined.second) return {lo + (hi - lo) * best / n, fbest};
  return refined;
}

void validate_family(const FamilyParams& fp) {
  switch (fp.variant) {
    case Family::symmetric_t:
      if (!(fp.p1 >= 1.0) || !(fp.p2 >= -kBranchGuard && fp.p2 <= 1.0 + kBranchGuard))
        throw std::domain_error("symmetric_t family needs a >= 1 and t in [0, 1]");
      return;
    case Family::cc_ca:
      if (!(fp.p1 > 0.0) || !(std::abs(fp.p2) <= 1.0 + kBranchGuard))
        throw std::domain_error("cc_ca family needs c > 0 and q in [-1, 1]");
      return;
    case Family::asymmetric:
      if (!(fp.p1 >= 1.0) || !(fp.p2 >= 0.0) || !(std::abs(fp.p3) <= fp.p1 - 1.0 + kBranchGuard))
        throw std::domain_error("asymmetric family needs b >= 1, v >= 0, |s| <= b - 1");
      return;
  }
  throw std::domain_error("unknown family variant");
}

}  // namespace

double entropy_F(double x) {
  if (x < 1.0) {
    if (x < 1.0 - 1e-9) throw std::domain_error("entropy_F needs x >= 1");
    x = 1.0;
  }
  const double p = 0.5 * (x + 1.0);
  const double m = 0.5 * (x - 1.0);
  return p * std::log(p) - (m > 0.0 ? m * std::log(m) : 0.0);
}

double quantum_conditional_entropy(const TwoModeCov& state) {
  const auto [nu1, nu2] = symplectic_eigenvalues(state);
  const double b = std::sqrt(state.block_b().determinant());
  return entropy_F(nu1) + entropy_F(nu2) - entropy_F(b);
}

std::vector<Bound> local_space() {
  return {{0.0, kPi, true}, {0.0, kPi, true}, {kHomodyneFloor, 1.0, false},
          {kHomodyneFloor, 1.0, false}};
}

std::vector<Bound> joint_space() {
  return {{0.0, kPi, true},  {0.0, kPi, true},          {0.0, 1.0, false},
          {0.0, kPi, true},  {0.0, kPi, true},          {kHomodyneFloor, 1.0, false},
          {kHomodyneFloor, 1.0, false}};
}

std::vector<Bound> single_mode_space() {
  return {{0.0, kPi, true}, {kHomodyneFloor, 1.0, false}};
}

Objective local_objective(const TwoModeCov& state) {
  return [state](const Eigen::VectorXd& x) {
    const LocalMeasurement ma(x[0], clamp_l(x[2]));
    const LocalMeasurement mb(x[1], clamp_l(x[3]));
    return conditional_half_log_det(state, ma, mb);
  };
}

Objective joint_objective(const TwoModeCov& state) {
  return [state](const Eigen::VectorXd& x) {
    const JointMeasurement m(x[0], x[1], std::clamp(x[2], 0.0, 1.0), {x[3], clamp_l(x[5])},
                             {x[4], clamp_l(x[6])});
    return conditional_half_log_det(state, m);
  };
}

Objective gqd_objective(const TwoModeCov& state) {
  return [state](const Eigen::VectorXd& x) {
    const LocalMeasurement mb(x[0], clamp_l(x[1]));
    return entropy_F(std::sqrt(conditional_state_cov(state, mb).det()));
  };
}

Objective renyi2_objective(const TwoModeCov& state) {
  return [state](const Eigen::VectorXd& x) {
    const LocalMeasurement mb(x[0], clamp_l(x[1]));
    return 0.5 * std::log(conditional_state_cov(state, mb).det());
  };
}

LocalOptimum minimize_local(const TwoModeCov& state, const OptimOptions& opts) {
  const Objective f = local_objective(state);
  const OptResult r = minimize(f, local_space(), local_starts(), opts);

  // flat valleys through the heterodyne point are common (any symmetric
  // state at full correlation has one), so report plain heterodyne whenever
  // it ties the searched minimum
  Eigen::VectorXd het = vec({0.0, 0.0, 1.0, 1.0});
  const double v_het = f(het);
  const bool take_het = v_het <= r.value + kStructuredTieEps;

  LocalOptimum out;
  const Eigen::VectorXd& x = take_het ? het : r.argmin;
  out.m_a = LocalMeasurement(x[0], clamp_l(x[2]));
  out.m_b = LocalMeasurement(x[1], clamp_l(x[3]));
  out.half_log_det = take_het ? v_het : r.value;
  out.det = std::exp(2.0 * out.half_log_det);
  out.evaluations = r.evaluations + 1;
  out.converged = r.converged;
  return out;
}

JointOptimum minimize_joint(const TwoModeCov& state, const OptimOptions& opts,
                            const std::vector<Eigen::VectorXd>& extra_starts) {
  const Objective f = joint_objective(state);

  std::vector<Eigen::VectorXd> starts = extra_starts;
  for (const Eigen::VectorXd& s : joint_starts()) starts.push_back(s);
  const OptResult full = minimize(f, joint_space(), starts, opts);

  // the minimum is often attained on a whole manifold of measurements, so the
  // unrestricted search lands at an arbitrary point of it. Prefer structured
  // representations when they tie: the caller-provided points (typically the
  // embedded product optimum), then the two-mode squeezed submanifold.
  const Objective f_tms = [&f](const Eigen::VectorXd& x) { return f(tms_expand(x)); };
  const OptResult tms = minimize(f_tms, tms_space(), tms_starts(), opts);

  struct Candidate {
    Eigen::VectorXd argmin;
    double value;
    bool converged;
  };
  std::vector<Candidate> cands;
  for (const Eigen::VectorXd& s : extra_starts) cands.push_back({s, f(s), true});
  cands.push_back({tms_expand(tms.argmin), tms.value, tms.converged});
  cands.push_back({full.argmin, full.value, full.converged});

  double lowest = cands.front().value;
  for (const Candidate& c : cands) lowest = std::min(lowest, c.value);
  const Candidate* pick = &cands.back();
  for (const Candidate& c : cands)
    if (c.value <= lowest + kStructuredTieEps) {
      pick = &c;
      break;
    }

  JointOptimum out;
  out.m = JointMeasurement(pick->argmin[0], pick->argmin[1], std::clamp(pick->argmin[2], 0.0, 1.0),
                           {pick->argmin[3], clamp_l(pick->argmin[5])},
                           {pick->argmin[4], clamp_l(pick->argmin[6])});
  out.det = std::exp(2.0 * pick->value);
  out.half_log_det = pick->value;
  out.evaluations = full.evaluations + tms.evaluations + static_cast<long>(extra_starts.size());
  out.converged = (full.converged || tms.converged) && pick->converged;
  return out;
}

DiscordReport ogd(const TwoModeCov& state, const OptimOptions& opts) {
  const LocalOptimum lo = minimize_local(state, opts);
  // the local argmin embedded as a joint measurement (eta = 1 keeps the two
  // arms separate), so the joint search can never end up above the local one
  const Eigen::VectorXd embed =
      vec({0.0, 0.0, 1.0, lo.m_a.theta, lo.m_b.theta, lo.m_a.l, lo.m_b.l});
  const JointOptimum jo = minimize_joint(state, opts, {embed});

  const double raw = lo.half_log_det - jo.half_log_det;
  if (raw < -1e-9)
    throw std::runtime_error("joint minimum fell below the local bound beyond tolerance");

  DiscordReport rep;
  rep.ogd = raw < 0.0 ? 0.0 : raw;
  rep.clamped = raw < 0.0;
  rep.hmin_local = lo.half_log_det + entropy_offset();
  rep.hmin_joint = jo.half_log_det + entropy_offset();
  rep.opt_local_a = lo.m_a;
  rep.opt_local_b = lo.m_b;
  rep.opt_joint = jo.m;
  rep.det_local = lo.det;
  rep.det_joint = jo.det;
  rep.gqd = gqd(state, opts).value;
  rep.renyi2 = renyi2_discord(state, opts).value;
  return rep;
}

GqdResult gqd(const TwoModeCov& state, const OptimOptions& opts) {
  const OptResult r =
      minimize(gqd_objective(state), single_mode_space(), single_mode_starts(), opts);
  GqdResult out;
  out.hmin = r.value;
  out.m_b = LocalMeasurement(r.argmin[0], clamp_l(r.argmin[1]));
  out.value = r.value - quantum_conditional_entropy(state);
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

Renyi2Result renyi2_discord(const TwoModeCov& state, const OptimOptions& opts) {
  const OptResult r =
      minimize(renyi2_objective(state), single_mode_space(), single_mode_starts(), opts);
  Renyi2Result out;
  out.m_b = LocalMeasurement(r.argmin[0], clamp_l(r.argmin[1]));
  out.value = r.value - 0.5 * std::log(state.det() / state.block_b().determinant());
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

TwoModeCov family_cov(const FamilyParams& fp) {
  validate_family(fp);
  switch (fp.variant) {
    case Family::symmetric_t: {
      const double a = fp.p1;
      const double t = std::clamp(fp.p2, 0.0, 1.0);
      const double k = t * std::sqrt(a * a - 1.0);
      return make_standard_cov(a, a, k, -k);
    }
    case Family::cc_ca: {
      const double c = fp.p1;
      const double q = std::clamp(fp.p2, -1.0, 1.0);
      return make_standard_cov(1.0 + c, 1.0 + c, c, q * c);
    }
    case Family::asymmetric: {
      const double b = fp.p1, v = fp.p2;
      const double s = std::clamp(fp.p3, -(b - 1.0), b - 1.0);
      return make_standard_cov(b + v, b, std::abs(s), s);
    }
  }
  throw std::domain_error("unknown family variant");
}

double cc_ca_det_local(double c, double q, double l_a, double l_b) {
  const double p = c * (1.0 + l_b) / (1.0 + c + l_b);
  const double w = c * c * q * q * l_b / ((1.0 + c) * l_b + 1.0);
  return (1.0 + l_a + p) * (1.0 + c + 1.0 / l_a - w);
}

double cc_ca_det_joint(double c, double q, double l) {
  const double den = 1.0 + 2.0 * l + 2.0 * c * l + l * l;
  return 4.0 * (1.0 + l) * (1.0 + l + 2.0 * c * l) * (1.0 + l + c * l - c * q * l) *
         (1.0 + c + l + c * q) / (den * den);
}

double cc_ca_optimal_la(double c, double q, double l_b) {
  const double x = 1.0 + c * (1.0 + l_b) / (1.0 + c + l_b);
  const double y = 1.0 + c - c * c * q * q * l_b / ((1.0 + c) * l_b + 1.0);
  return std::min(1.0, std::sqrt(x / y));
}

double cc_ca_candidate_local_la(double c, double q) {
  return std::sqrt(2.0 / (2.0 + c - c * q * q));
}

double cc_ca_candidate_local_lb(double c, double q) {
  const double aq = std::abs(q);
  if (aq <= 1.0 / std::sqrt(1.0 + 2.0 * c)) return 0.0;
  return ((1.0 + c) * (q * q - 1.0) + c * aq * std::sqrt(4.0 + 2.0 * c - 2.0 * c * q * q)) /
         ((1.0 + c) * (1.0 + c) - (1.0 + c * c) * q * q);
}

double cc_ca_candidate_joint_l(double c, double q) {
  return (q - 1.0 + std::sqrt(4.0 + 4.0 * c - 4.0 * c * q * q)) /
         (3.0 + 2.0 * c * (1.0 - q) - q);
}

ClosedFormOgd closed_form_ogd(const FamilyParams& fp) {
  validate_family(fp);
  ClosedFormOgd out;
  switch (fp.variant) {
    case Family::symmetric_t: {
      const double a = fp.p1;
      const double t = std::clamp(fp.p2, 0.0, 1.0);
      out.det_local = sq(1.0 + a - (a - 1.0) * t * t);
      const double tstar2 = (a - 1.0) / (a + 1.0);
      if (t * t >= tstar2 - kBranchGuard) {
        out.det_joint = sq(2.0 * (a - t * std::sqrt(a * a - 1.0)));
        out.branch = "homodyne";
      } else {
        out.det_joint = sq((1.0 + a) * (1.0 - t * t));
        out.branch = "squeezed";
      }
      out.value = 0.5 * (std::log(out.det_local) - std::log(out.det_joint));
      return out;
    }
    case Family::cc_ca: {
      const double c = fp.p1;
      const double q = std::clamp(fp.p2, -1.0, 1.0);
      out.det_local =
          bracketed_min([c, q](double lb) { return cc_ca_det_local(c, q, cc_ca_optimal_la(c, q, lb), lb); },
                        0.0, 1.0)
              .second;
      if (q >= 1.0 / std::sqrt(1.0 + 2.0 * c) - kBranchGuard) {
        out.det_joint = out.det_local;
        out.value = 0.0;
        out.branch = "zero";
      } else {
        out.det_joint =
            bracketed_min([c, q](double l) { return cc_ca_det_joint(c, q, l); }, 0.0, 1.0).second;
        out.value = 0.5 * (std::log(out.det_local) - std::log(out.det_joint));
        out.branch = "positive";
      }
      return out;
    }
    case Family::asymmetric: {
      const double b = fp.p1, v = fp.p2;
      const double s = std::clamp(fp.p3, -(b - 1.0), b - 1.0);
      out.det_local = sq(1.0 + b + v - s * s / (1.0 + b));
      if (s >= -kBranchGuard) {
        out.det_joint = out.det_local;
        out.value = 0.0;
        out.branch = "zero";
      } else {
        out.det_joint = sq(1.0 + b + v - s * s / (b - 1.0));
        out.value =
            std::log1p(2.0 * s * s / ((1.0 + b) * ((b - 1.0) * (1.0 + b + v) - s * s)));
        out.branch = "positive";
      }
      return out;
    }
  }
  throw std::domain_error("unknown family variant");
}

}  // namespace gdiscord
