#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gdiscord/optimize.hpp"
#include "gdiscord/protocol.hpp"
#include "gdiscord/symplectic.hpp"

using namespace gdiscord;

TEST_CASE("single-mode information formula hits a closed value") {
  // marginal 3I, heterodyne, signal variance 100: both quadratures give ln 26
  CHECK(mutual_info_single_mode(3.0, 1.0, 100.0) ==
        doctest::Approx(std::log(26.0)).epsilon(1e-13));
  CHECK(mutual_info_single_mode(3.0, 1.0, 1.0) > 0.0);
  CHECK_THROWS_AS(mutual_info_single_mode(3.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("encoding adds signal variance to the first mode only") {
  const TwoModeCov base = make_standard_cov(3.0, 2.0, 1.0, -0.5);
  const TwoModeCov enc = encode(base, 7.5).cov();
  Mat4 want = base.mat();
  want(0, 0) += 7.5;
  want(1, 1) += 7.5;
  CHECK((enc.mat() - want).norm() == 0.0);
}

TEST_CASE("classical correlations leave no joint readout advantage") {
  const TwoModeCov cc = make_standard_cov(10, 10, 9, 9);
  const MutualInfoReport mi = mutual_info_report(cc, 10.0);
  CHECK(mi.i_local > 0.5);
  CHECK(std::abs(mi.gap) <= 1e-9);
}

TEST_CASE("product-state information matches the single-mode optimum") {
  const TwoModeCov prod = make_standard_cov(3.0, 2.0, 0.0, 0.0);
  const double vs = 50.0;
  const MutualInfoReport mi = mutual_info_report(prod, vs);
  const auto [l_best, neg_best] = golden_section_min(
      [vs](double l) { return -mutual_info_single_mode(3.0, l, vs); }, 1e-9, 1.0);
  CHECK(mi.i_local == doctest::Approx(-neg_best).epsilon(1e-6));
  CHECK(std::abs(mi.gap) <= 1e-9);
}

TEST_CASE("information gap rises toward the discord") {
  const double r = 0.5;
  const double a = std::cosh(2 * r), c = std::sinh(2 * r);
  const TwoModeCov state = make_standard_cov(a, a, c, -c);
  const std::vector<ConvergencePoint> conv = ogd_convergence(state, {1.0, 100.0, 10000.0});
  REQUIRE(conv.size() == 3);
  CHECK(conv[0].dist > conv[1].dist);
  CHECK(conv[1].dist > conv[2].dist);
  CHECK(conv[2].dist <= 1e-3);
  for (const ConvergencePoint& p : conv) CHECK(p.gap <= 2 * r + 1e-9);
}

TEST_CASE("schedules must rise and stay positive") {
  const TwoModeCov state = make_standard_cov(2.0, 2.0, 1.0, -1.0);
  CHECK_THROWS_AS(ogd_convergence(state, {100.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(ogd_convergence(state, {-1.0, 1.0}), std::domain_error);
  CHECK(ogd_convergence(state, {}).empty());
}
