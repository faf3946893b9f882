#include "gdiscord/random_states.hpp"

#include <cmath>
#include <numbers>

namespace gdiscord {

namespace {
constexpr double kPi = std::numbers::pi;
}

TwoModeCov random_physical_state(std::mt19937_64& rng, double nu_max, double r_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double nu1 = 1.0 + (nu_max - 1.0) * unit(rng);
  const double nu2 = 1.0 + (nu_max - 1.0) * unit(rng);
  Mat4 d = Mat4::Zero();
  d.diagonal() << nu1, nu1, nu2, nu2;

  const Mat4 s = phase_rotation(2.0 * kPi * unit(rng), 2.0 * kPi * unit(rng)) *
                 squeezer(r_max * (2.0 * unit(rng) - 1.0), r_max * (2.0 * unit(rng) - 1.0)) *
                 beamsplitter(unit(rng)) *
                 phase_rotation(2.0 * kPi * unit(rng), 2.0 * kPi * unit(rng)) *
                 squeezer(r_max * (2.0 * unit(rng) - 1.0), r_max * (2.0 * unit(rng) - 1.0));
  return TwoModeCov::from_matrix(s * d * s.transpose());
}

TwoModeCov random_product_state(std::mt19937_64& rng, double nu_max, double r_max) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto mode = [&]() {
    const double nu = 1.0 + (nu_max - 1.0) * unit(rng);
    const double r = r_max * (2.0 * unit(rng) - 1.0);
    const double th = kPi * unit(rng);
    const Mat2 rot = rotation2(th);
    Mat2 m = Mat2::Zero();
    m.diagonal() << nu * std::exp(2.0 * r), nu * std::exp(-2.0 * r);
    return Mat2(rot * m * rot.transpose());
  };
  Mat4 cov = Mat4::Zero();
  cov.topLeftCorner<2, 2>() = mode();
  cov.bottomRightCorner<2, 2>() = mode();
  return TwoModeCov::from_matrix(cov);
}

JointMeasurement random_joint_measurement(std::mt19937_64& rng, double l_min) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double phi_a = kPi * unit(rng);
  const double phi_b = kPi * unit(rng);
  const double eta = unit(rng);
  const double theta_a = kPi * unit(rng);
  const double theta_b = kPi * unit(rng);
  const double l_a = l_min + (1.0 - l_min) * unit(rng);
  const double l_b = l_min + (1.0 - l_min) * unit(rng);
  return JointMeasurement(phi_a, phi_b, eta, {theta_a, l_a}, {theta_b, l_b});
}

TwoModeCov random_local_rotation(const TwoModeCov& state, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mat4 r = phase_rotation(2.0 * kPi * unit(rng), 2.0 * kPi * unit(rng));
  return TwoModeCov::from_matrix(r * state.mat() * r.transpose());
}

}  // namespace gdiscord
