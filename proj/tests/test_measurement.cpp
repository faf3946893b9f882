#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gdiscord/measurement.hpp"
#include "gdiscord/symplectic.hpp"

using namespace gdiscord;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("local POVM covariance is a rotated squeezed vacuum") {
  const LocalMeasurement m(0.3, 0.2);
  const Mat2 r = rotation2(0.3);
  Mat2 want = r * Eigen::Vector2d(0.2, 5.0).asDiagonal() * r.transpose();
  CHECK((local_povm_cov(m).mat() - want).norm() < 1e-13);
  CHECK(local_povm_cov(m).det() == doctest::Approx(1.0).epsilon(1e-12));
  // (l, theta) and (1/l, theta + pi/2) describe the same covariance
  CHECK((squeezed_vacuum_cov(0.3 + kPi / 2, 5.0).mat() - want).norm() < 1e-12);
}

TEST_CASE("balanced two-arm seed assembles the expected matrix") {
  const JointMeasurement m(0.0, 0.0, 0.5, {0.0, 0.2}, {kPi / 2, 0.2});
  const Mat4 mu = joint_povm_cov(m);
  Mat4 want;
  want << 2.6, 0.0, 2.4, 0.0,   //
      0.0, 2.6, 0.0, -2.4,      //
      2.4, 0.0, 2.6, 0.0,       //
      0.0, -2.4, 0.0, 2.6;
  CHECK((mu - want).norm() < 1e-12);
}

TEST_CASE("joint POVM covariances are pure") {
  for (const auto& m :
       {JointMeasurement(0.4, 1.3, 0.7, {0.2, 0.35}, {1.1, 0.9}),
        JointMeasurement(0.0, 0.0, 0.5, {0.0, 1e-3}, {kPi / 2, 1e-3}),
        JointMeasurement(2.9, 0.8, 1.0, {0.5, 1.0}, {0.0, 0.05})}) {
    const auto [n1, n2] = symplectic_eigenvalues(TwoModeCov::from_matrix(joint_povm_cov(m)));
    CHECK(std::abs(n1 - 1.0) < 1e-8);
    CHECK(std::abs(n2 - 1.0) < 1e-8);
  }
}

TEST_CASE("heterodyne conditional covariance matches the direct Schur complement") {
  const TwoModeCov state = make_standard_cov(3.0, 2.5, 1.2, -0.8);
  const LocalMeasurement het(0.0, 1.0);

  const CovMat2 cond = conditional_cov_local(state, het, het);
  CHECK(cond(0, 0) == doctest::Approx(3.5885714285714286).epsilon(1e-13));
  CHECK(cond(1, 1) == doctest::Approx(3.8171428571428571).epsilon(1e-13));
  CHECK(cond.det() == doctest::Approx(13.698089795918367).epsilon(1e-13));

  const CovMat2 generic = conditional_cov_from_mu(state, Mat4::Identity());
  CHECK((generic.mat() - cond.mat()).norm() < 1e-12);

  const double h = conditional_half_log_det(state, het, het);
  CHECK(std::exp(2.0 * h) == doctest::Approx(13.698089795918367).epsilon(1e-12));
}

TEST_CASE("exact quadrature limit agrees with the floor evaluation") {
  const TwoModeCov state = make_standard_cov(3.0, 2.5, 1.2, -0.8);
  const CovMat2 cond = conditional_cov_local_homodyne(state, {0.0, 0.3}, 0.0);
  CHECK(cond(0, 0) == doctest::Approx(2.724).epsilon(1e-13));
  CHECK(cond(1, 1) == doctest::Approx(6.3333333333333333).epsilon(1e-13));
  CHECK(cond.det() == doctest::Approx(17.252).epsilon(1e-13));

  const double floor_h = conditional_half_log_det(state, {0.0, 0.3}, {0.0, 1e-9});
  CHECK(floor_h == doctest::Approx(0.5 * std::log(17.252)).epsilon(1e-7));
}

TEST_CASE("product measurement through a transparent splitter is bitwise the local one") {
  const TwoModeCov state = make_standard_cov(4.0, 3.0, 1.5, -1.1);
  for (const double la : {1.0, 0.2, 1e-9})
    for (const double lb : {1.0, 0.05, 1e-9}) {
      const LocalMeasurement ma(0.7, la), mb(2.1, lb);
      const double hl = conditional_half_log_det(state, ma, mb);
      const double hj = conditional_half_log_det(state, JointMeasurement(0.0, 0.0, 1.0, ma, mb));
      CHECK(hl == hj);
    }
}

TEST_CASE("stable evaluator matches the naive route away from the floor") {
  const TwoModeCov state = make_standard_cov(5.0, 4.0, 2.0, -1.5);
  for (const double la : {1.0, 0.3, 0.05})
    for (const double lb : {1.0, 0.4, 0.02}) {
      const LocalMeasurement ma(0.9, la), mb(0.2, lb);
      const double naive = conditional_cov_local(state, ma, mb).det();
      const double stable = std::exp(2.0 * conditional_half_log_det(state, ma, mb));
      CHECK(stable == doctest::Approx(naive).epsilon(1e-10));
    }
}

TEST_CASE("added state noise raises the conditional entropy") {
  const TwoModeCov state = make_standard_cov(3.0, 2.0, 1.0, -0.9);
  const LocalMeasurement ma(0.0, 1e-9), mb(kPi / 2, 1e-9);
  double prev = conditional_half_log_det(state, ma, mb);
  for (const double eps : {1e-3, 1e-1}) {
    const TwoModeCov noisy = TwoModeCov::from_matrix(state.mat() + eps * Mat4::Identity());
    const double h = conditional_half_log_det(noisy, ma, mb);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("entropy of a product covariance splits into the parts") {
  const CovMat2 a(2.0, 0.3, 1.5), b(4.0, -0.2, 1.2);
  const TwoModeCov prod(a, b, Mat2::Zero());
  CHECK(gaussian_entropy(prod) ==
        doctest::Approx(gaussian_entropy(a) + gaussian_entropy(b)).epsilon(1e-13));
}

TEST_CASE("measurement constructors reject out-of-range parameters") {
  CHECK_THROWS_AS(LocalMeasurement(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(LocalMeasurement(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(JointMeasurement(0.0, 0.0, 1.2, {0.0, 1.0}, {0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(squeezed_vacuum_cov(0.0, -1.0), std::domain_error);
}
