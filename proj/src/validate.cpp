#include "gdiscord/validate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include "gdiscord/discord.hpp"
#include "gdiscord/measurement.hpp"
#include "gdiscord/protocol.hpp"
#include "gdiscord/random_states.hpp"
#include "gdiscord/symplectic.hpp"

namespace gdiscord {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// tracks the worst (largest) value of some error metric plus a label
struct Worst {
  double value = -1.0;
  std::string where;
  void update(double v, const std::string& w) {
    if (v > value) {
      value = v;
      where = w;
    }
  }
};

CheckResult check_tmsv(const OptimOptions& opts) {
  Worst worst;
  for (double r : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    FamilyParams fp{Family::symmetric_t, std::cosh(2.0 * r), 1.0};
    DiscordReport rep = ogd(family_cov(fp), opts);
    worst.update(std::abs(rep.ogd - 2.0 * r), "r=" + fmt(r));
  }
  return {1, "two-mode squeezed vacuum: ogd = 2r", worst.value <= 1e-5,
          "max |ogd - 2r| = " + fmt(worst.value) + " at " + worst.where + " (tol 1e-5)"};
}

CheckResult check_symmetric_family(const OptimOptions& opts) {
  Worst werr, wl;
  for (double a : {2.0, 5.0, 10.0, 50.0}) {
    for (int i = 0; i <= 10; ++i) {
      const double t = i / 10.0;
      FamilyParams fp{Family::symmetric_t, a, t};
      ClosedFormOgd cf = closed_form_ogd(fp);
      DiscordReport rep = ogd(family_cov(fp), opts);
      const std::string where = "a=" + fmt(a) + ",t=" + fmt(t);
      werr.update(std::abs(rep.ogd - cf.value), where);
      wl.update(std::abs(rep.opt_local_a.l - 1.0), where);
      wl.update(std::abs(rep.opt_local_b.l - 1.0), where);
    }
  }
  const bool pass = werr.value <= 1e-6 && wl.value <= 1e-4;
  return {2, "symmetric family: closed form + heterodyne local argmin", pass,
          "max |numeric - closed| = " + fmt(werr.value) + " at " + werr.where +
              " (tol 1e-6); max |L - 1| = " + fmt(wl.value) + " at " + wl.where + " (tol 1e-4)"};
}

CheckResult check_cc_ca_curve(const OptimOptions& opts) {
  const double c = 9.0;
  auto ogd_at = [&](double q) { return ogd(family_cov({Family::cc_ca, c, q}), opts).ogd; };

  Worst wzero;
  for (double q : {0.23, 0.5, 1.0}) wzero.update(std::abs(ogd_at(q)), "q=" + fmt(q));

  const double qs[] = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.2};
  double prev = 0.0, max_diff = -1.0;
  double at_minus_one = 0.0;
  for (std::size_t i = 0; i < std::size(qs); ++i) {
    const double v = ogd_at(qs[i]);
    if (i == 0)
      at_minus_one = v;
    else
      max_diff = std::max(max_diff, v - prev);
    prev = v;
  }
  const double end_err = std::abs(at_minus_one - std::log(20.0 / 11.0));

  const bool pass = wzero.value <= 1e-9 && max_diff < -1e-6 && end_err <= 1e-6;
  return {3, "cc/ca family: zeros past threshold, monotone drop, q=-1 value", pass,
          "max ogd past threshold = " + fmt(wzero.value) + " (tol 1e-9); max successive diff = " +
              fmt(max_diff) + " (need < -1e-6); |ogd(-1) - ln(20/11)| = " + fmt(end_err) +
              " (tol 1e-6)"};
}

CheckResult check_asymmetric_family(const OptimOptions& opts) {
  Worst werr, wzero, wl;
  for (double b : {2.0, 3.0, 10.0}) {
    for (double v : {0.0, 1.0, 10.0}) {
      for (double s : {-(b - 1.0), -(b - 1.0) / 2.0, (b - 1.0) / 2.0, b - 1.0}) {
        FamilyParams fp{Family::asymmetric, b, v, s};
        ClosedFormOgd cf = closed_form_ogd(fp);
        DiscordReport rep = ogd(family_cov(fp), opts);
        const std::string where = "b=" + fmt(b) + ",v=" + fmt(v) + ",s=" + fmt(s);
        werr.update(std::abs(rep.ogd - cf.value), where);
        if (s > 0.0) wzero.update(rep.ogd, where);
        if (s < 0.0) {
          const double target = (b - 1.0 + s) / (b - 1.0 - s);
          wl.update(std::abs(rep.opt_joint.m_a.l - target), where);
        }
      }
    }
  }
  const bool pass = werr.value <= 1e-6 && wzero.value <= 1e-9 && wl.value <= 1e-3;
  return {4, "asymmetric family: closed form + joint argmin", pass,
          "max |numeric - closed| = " + fmt(werr.value) + " at " + werr.where +
              " (tol 1e-6); max ogd for s>0 = " + fmt(wzero.value) +
              " (tol 1e-9); max |L_A - target| = " + fmt(wl.value) + " at " + wl.where +
              " (tol 1e-3)"};
}

CheckResult check_protocol(const OptimOptions& opts) {
  const std::vector<double> schedule = default_vs_schedule();

  Worst wend, wmono;
  for (const auto& [label, cov] :
       {std::pair<std::string, TwoModeCov>{
            "tmsv r=0.5", family_cov({Family::symmetric_t, std::cosh(1.0), 1.0})},
        {"asymmetric(3,1,-1)", family_cov({Family::asymmetric, 3.0, 1.0, -1.0})}}) {
    auto conv = ogd_convergence(cov, schedule, opts);
    wend.update(conv.back().dist, label);
    for (std::size_t i = 1; i < conv.size(); ++i)
      wmono.update(conv[i].dist - conv[i - 1].dist, label + " step " + fmt(double(i)));
  }

  Worst wgap;
  for (const auto& [label, cov] :
       {std::pair<std::string, TwoModeCov>{"cc(9,1)", family_cov({Family::cc_ca, 9.0, 1.0})},
        {"product", make_standard_cov(2.0, 3.0, 0.0, 0.0)}}) {
    for (const ConvergencePoint& p : ogd_convergence(cov, schedule, opts))
      wgap.update(std::abs(p.gap), label + " vs=" + fmt(p.vs));
  }

  const bool pass = wend.value <= 1e-4 && wmono.value <= 1e-12 && wgap.value <= 1e-9;
  return {5, "signal protocol: gap converges to ogd; zero-gap states", pass,
          "final |gap - ogd| = " + fmt(wend.value) + " at " + wend.where +
              " (tol 1e-4); max dist increase = " + fmt(wmono.value) +
              " (tol 1e-12); max zero-state |gap| = " + fmt(wgap.value) + " at " + wgap.where +
              " (tol 1e-9)"};
}

CheckResult check_random_properties(const OptimOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 0x600);
  Worst wneg, wdet, wrot;
  for (int i = 0; i < 500; ++i) {
    const TwoModeCov st = random_physical_state(rng);
    DiscordReport rep = ogd(st, opts);
    const std::string where = "state " + std::to_string(i);
    wneg.update(rep.hmin_joint - rep.hmin_local, where);
    wdet.update(rep.det_joint - rep.det_local, where);
    DiscordReport rot = ogd(random_local_rotation(st, rng), opts);
    wrot.update(std::abs(rot.ogd - rep.ogd), where);
  }

  std::mt19937_64 prng(seed + 0x601);
  Worst wprod;
  for (int i = 0; i < 40; ++i) {
    const TwoModeCov st = random_product_state(prng);
    const std::string where = "product state " + std::to_string(i);
    wprod.update(ogd(st, opts).ogd, where);
    wprod.update(std::abs(gqd(st, opts).value), where);
    wprod.update(std::abs(renyi2_discord(st, opts).value), where);
  }

  const bool pass =
      wneg.value <= 1e-9 && wdet.value <= 1e-9 && wrot.value <= 1e-5 && wprod.value <= 1e-9;
  return {6, "random states: bounds, rotation invariance, product states", pass,
          "max -(ogd raw) = " + fmt(wneg.value) + " (tol 1e-9); max det_joint - det_local = " +
              fmt(wdet.value) + " (tol 1e-9); max rotation |drift| = " + fmt(wrot.value) +
              " at " + wrot.where + " (tol 1e-5); max product-state measure = " +
              fmt(wprod.value) + " (tol 1e-9)"};
}

CheckResult check_cross_measures(const OptimOptions& opts) {
  const TwoModeCov cc = family_cov({Family::cc_ca, 9.0, 1.0});
  const TwoModeCov ca = family_cov({Family::cc_ca, 9.0, -1.0});

  const double gqd_margin = gqd(cc, opts).value - gqd(ca, opts).value;
  const double hmin_diff =
      std::abs(minimize_local(cc, opts).half_log_det - minimize_local(ca, opts).half_log_det);
  const double renyi_diff =
      std::abs(renyi2_discord(cc, opts).value - renyi2_discord(ca, opts).value);
  const double renyi_d0 = std::abs(renyi2_discord(make_standard_cov(2.0, 2.0, 1.0, 0.0), opts).value);

  const bool pass =
      gqd_margin > 1e-6 && hmin_diff <= 1e-6 && renyi_diff <= 1e-6 && renyi_d0 <= 1e-9;
  return {7, "gqd/renyi2 cross-measure checks at c=9", pass,
          "gqd(cc) - gqd(ca) = " + fmt(gqd_margin) + " (need > 1e-6); |hmin_L diff| = " +
              fmt(hmin_diff) + " (tol 1e-6); |renyi2 diff| = " + fmt(renyi_diff) +
              " (tol 1e-6); renyi2 at d=0 = " + fmt(renyi_d0) + " (tol 1e-9)"};
}

CheckResult check_against_oracle(const OptimOptions& opts, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 0x800);
  Worst wlocal, wgqd;
  for (int i = 0; i < 20; ++i) {
    const TwoModeCov st = random_physical_state(rng);
    const std::string where = "state " + std::to_string(i);

    LocalOptimum lo = minimize_local(st, opts);
    OptResult grid = grid_oracle(local_objective(st), local_space(), 31);
    wlocal.update(lo.half_log_det - grid.value, where);

    GqdResult g = gqd(st, opts);
    OptResult ggrid = grid_oracle(gqd_objective(st), single_mode_space(), 201);
    wgqd.update(g.hmin - ggrid.value, where);
  }
  const bool pass = wlocal.value <= 1e-12 && wgqd.value <= 1e-12;
  return {8, "optimizer never above grid oracle", pass,
          "max local excess = " + fmt(wlocal.value) + " at " + wlocal.where +
              "; max gqd excess = " + fmt(wgqd.value) + " at " + wgqd.where + " (tol 1e-12)"};
}

CheckResult check_conditional_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 0x900);
  Worst wdet, went;
  for (int i = 0; i < 100; ++i) {
    const TwoModeCov st = random_physical_state(rng);
    const Mat4 mu = joint_povm_cov(random_joint_measurement(rng));
    const TwoModeCov w = outcome_cov(st, mu);
    const CovMat2 cond = conditional_cov_from_mu(st, mu);
    const std::string where = "state " + std::to_string(i);

    const double det_b = w.block_b().determinant();
    wdet.update(std::abs(w.det() / det_b - cond.det()) / cond.det(), where);

    const double lhs = gaussian_entropy(cond);
    const double rhs = gaussian_entropy(w) - gaussian_entropy(CovMat2(w.block_b()));
    went.update(std::abs(lhs - rhs), where);
  }
  const bool pass = wdet.value <= 1e-10 && went.value <= 1e-10;
  return {9, "outcome-covariance determinant and entropy identities", pass,
          "max det identity rel err = " + fmt(wdet.value) + " at " + wdet.where +
              "; max entropy identity err = " + fmt(went.value) + " at " + went.where +
              " (tol 1e-10)"};
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

ValidationReport run_validation(std::uint64_t seed, bool inject_failure) {
  OptimOptions opts;
  opts.seed = seed;

  ValidationReport report;
  const std::function<CheckResult()> checks[] = {
      [&] { return check_tmsv(opts); },
      [&] { return check_symmetric_family(opts); },
      [&] { return check_cc_ca_curve(opts); },
      [&] { return check_asymmetric_family(opts); },
      [&] { return check_protocol(opts); },
      [&] { return check_random_properties(opts, seed); },
      [&] { return check_cross_measures(opts); },
      [&] { return check_against_oracle(opts, seed); },
      [&] { return check_conditional_identities(seed); },
  };
  int idx = 0;
  for (const auto& run : checks) {
    ++idx;
    try {
      report.checks.push_back(run());
    } catch (const std::exception& e) {
      report.checks.push_back({idx, "check " + std::to_string(idx) + " aborted", false, e.what()});
    }
  }
  if (inject_failure)
    report.checks.push_back({0, "injected failure", false, "requested by caller"});
  return report;
}

}  // namespace gdiscord
